#include <cmath>
#include <initializer_list>
#include <array>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <random>

#include "doctest.h"
#include "warpmcf/ambient.hpp"
#include "warpmcf/estimate_constants.hpp"

using namespace warpmcf;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("product ambient: vertical planes are flat") {
  const BaseManifold torus = BaseManifold::flat_torus(2 * M_PI, 2 * M_PI);
  const WarpFactor one = WarpFactor::constant_one();
  for (double a : {0.3, 1.7, 4.0})
    for (int i : {1, 2}) {
      CHECK(ambient_sectional(torus, one, {a, 2.0 * a}, PlaneKind::VerticalI0, i) == 0.0);
    }
  CHECK(ambient_sectional(torus, one, {1.0, 1.0}, PlaneKind::HorizontalIJ) == 0.0);
}

TEST_CASE("hyperbolic cosh model: every plane has curvature -1") {
  const BaseManifold hyp = BaseManifold::hyperbolic_polar(3.0);
  const WarpFactor warp = WarpFactor::cosh_r();
  for (double r : {0.2, 1.0, 2.5}) {
    const Vec2 x{r, 0.7};
    CHECK(ambient_sectional(hyp, warp, x, PlaneKind::VerticalI0, 1) ==
          doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(ambient_sectional(hyp, warp, x, PlaneKind::VerticalI0, 2) ==
          doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(ambient_sectional(hyp, warp, x, PlaneKind::HorizontalIJ) ==
          doctest::Approx(-1.0).epsilon(1e-13));
  }
}

TEST_CASE("pole-singular chart points are rejected") {
  const BaseManifold hyp = BaseManifold::hyperbolic_polar(3.0);
  CHECK_THROWS_AS(ambient_sectional(hyp, WarpFactor::cosh_r(), {0.0, 0.0}, PlaneKind::VerticalI0),
                  PoleExclusionError);
}

TEST_CASE("estimate constants on the product torus") {
  const BaseManifold torus = BaseManifold::flat_torus(2 * M_PI, 2 * M_PI);
  const WarpFactor one = WarpFactor::constant_one();
  const auto c = estimate_constants(torus, one, sample_chart(torus, 48), 1.0, 2.0);
  CHECK(c.eta == 0.0);
  CHECK(c.mu1 == 0.0);
  CHECK(c.mu2 == 0.0);
  CHECK(c.mu == 0.0);
  CHECK(c.nu == 0.0);
  CHECK(c.eps_nu == 0.0);
  CHECK(c.delta == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c.K == 0.0);
  CHECK(c.C == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("estimate constants in the hyperbolic cosh model") {
  const BaseManifold hyp = BaseManifold::hyperbolic_polar(3.0);
  const WarpFactor warp = WarpFactor::cosh_r();
  const auto c = estimate_constants(hyp, warp, sample_chart(hyp, 64), 1.5, 2.0);
  // Hess(cosh r) = cosh(r) ghat on the hyperbolic plane.
  CHECK(c.mu1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.mu2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.mu == -1.0);
  CHECK(c.nu == doctest::Approx(0.0).epsilon(1e-12));
  // eta is the grid-restricted sup of tanh(r): just under 1, attained at the
  // outermost sampled radius.
  const double r_out = 3.0 * (64 - 0.5) / 64.0;
  CHECK(c.eta == doctest::Approx(std::tanh(r_out)).epsilon(1e-12));
  CHECK(c.eta < 1.0);
  // Space form: nabla Riem vanishes.
  CHECK(c.grad_riem_sup < 1e-6);
  CHECK(c.ricci_sup == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("estimate constants on the bump torus, refined-grid pinching") {
  const BaseManifold torus = BaseManifold::flat_torus(2 * M_PI, 2 * M_PI);
  const WarpFactor warp = WarpFactor::torus_bump(1.5, 0.5);
  const auto c = estimate_constants(torus, warp, sample_chart(torus, 128), 1.0, 1.0);
  // Extremes of -0.5 sin(x)/(1.5 + 0.5 sin(x)): -1/4 and +1/2.
  CHECK(c.mu1 == doctest::Approx(-0.25).epsilon(1e-3));
  CHECK(c.mu1 <= -0.25 + 1e-3);
  CHECK(c.mu2 == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(c.nu == doctest::Approx(1.0).epsilon(5e-3));

  // Pinching invariant re-verified on a 4x refined sampling.
  for (const Vec2& x : sample_chart(torus, 512)) {
    const double phi = warp.phi(torus, x);
    Sym2 T = warp.hess(torus, x);
    double lo, hi;
    sym2_eigs({T.xx / phi, T.xy / phi, T.yy / phi}, lo, hi);
    CHECK(lo >= c.mu1 - 1e-9);
    CHECK(hi <= c.mu2 + 1e-9);
  }
}

TEST_CASE("estimate constants are monotone under region growth") {
  const WarpFactor warp = WarpFactor::cosh_r();
  const BaseManifold small = BaseManifold::hyperbolic_polar(2.0);
  const BaseManifold large = BaseManifold::hyperbolic_polar(3.0);
  const auto cs = estimate_constants(small, warp, sample_chart(small, 48), 1.0, 1.0);
  const auto cl = estimate_constants(large, warp, sample_chart(large, 48), 1.0, 1.0);
  CHECK(cl.eta >= cs.eta);
  CHECK(cl.mu2 >= cs.mu2 - 1e-12);
  CHECK(cl.mu1 <= cs.mu1 + 1e-12);
}

TEST_CASE("invalid warp factor is rejected") {
  CHECK_THROWS(WarpFactor::torus_bump(0.5, 0.6));  // phi would cross zero
}

TEST_CASE("distance to the slice") {
  const BaseManifold hyp = BaseManifold::hyperbolic_polar(3.0);
  const WarpFactor warp = WarpFactor::cosh_r();

  SUBCASE("points on the slice") {
    const auto d = distance_to_slice(hyp, warp, {1.2, 0.0}, 0.0);
    CHECK(d.length == 0.0);
  }
  SUBCASE("on the axis the vertical curve is a geodesic") {
    const auto d = distance_to_slice(hyp, warp, {1e-14, 0.0}, 1.0);
    CHECK(d.exact);
    CHECK(d.length == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("hyperboloid-model value off the axis") {
    const auto d = distance_to_slice(hyp, warp, {1.0, 0.3}, 0.5);
    CHECK(d.exact);
    CHECK(std::sinh(d.length) ==
          doctest::Approx(std::cosh(1.0) * std::sinh(0.5)).epsilon(1e-12));
  }
  SUBCASE("exact distance never exceeds the vertical length") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ur(0.0, 3.0), uu(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
      const Vec2 x{ur(rng), 0.0};
      const double u = uu(rng);
      const auto d = distance_to_slice(hyp, warp, x, u);
      CHECK(d.length <= std::cosh(x.a) * std::abs(u) + 1e-12);
    }
  }
  SUBCASE("generic pairs fall back to the vertical upper bound") {
    const BaseManifold torus = BaseManifold::flat_torus(2 * M_PI, 2 * M_PI);
    const WarpFactor bump = WarpFactor::torus_bump(1.5, 0.5);
    const auto d = distance_to_slice(torus, bump, {0.5, 0.5}, 0.7);
    CHECK_FALSE(d.exact);
    CHECK(d.length == doctest::Approx(bump.phi(torus, {0.5, 0.5}) * 0.7));
  }
}

namespace {

// Brute-force |nabla Riem| in chart coordinates: coordinate Christoffels by
// centered differences of the metric, curvature from them, then the
// covariant derivative with all four slot corrections, norm-contracted with
// the inverse metric. Shares nothing with ambient_grad_riem_norm.
double brute_grad_riem(const BaseManifold& base, const WarpFactor& warp, const Vec2& pt) {
  constexpr int D = 3;
  const double h = 1e-3;
  using M3 = std::array<std::array<double, 3>, 3>;
  auto metric = [&](const std::array<double, 3>& xi, M3& g) {
    const Vec2 x{xi[0], xi[1]};
    for (auto& r : g) r.fill(0.0);
    g[0][0] = 1.0;
    g[1][1] = base.polar() ? sqr(base.f(x.a)) : 1.0;
    g[2][2] = sqr(warp.phi(base, x));
  };
  auto christ = [&](const std::array<double, 3>& q, double G[3][3][3]) {
    double dg[3][3][3];
    for (int d = 0; d < D; ++d) {
      auto qp = q, qm = q;
      qp[d] += h;
      qm[d] -= h;
      M3 gp, gm;
      metric(qp, gp);
      metric(qm, gm);
      for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b) dg[d][a][b] = (gp[a][b] - gm[a][b]) / (2 * h);
    }
    M3 g;
    metric(q, g);
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b)
        for (int c = 0; c < D; ++c) {
          G[a][b][c] = 0.5 / g[a][a] * (dg[b][a][c] + dg[c][b][a] - dg[a][b][c]);
        }
  };
  auto riem = [&](const std::array<double, 3>& q, double R[3][3][3][3]) {
    double G0[3][3][3];
    christ(q, G0);
    double dG[3][3][3][3];
    for (int c = 0; c < D; ++c) {
      auto qp = q, qm = q;
      qp[c] += h;
      qm[c] -= h;
      double Gp[3][3][3], Gm[3][3][3];
      christ(qp, Gp);
      christ(qm, Gm);
      for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b)
          for (int d = 0; d < D; ++d) dG[c][a][b][d] = (Gp[a][b][d] - Gm[a][b][d]) / (2 * h);
    }
    M3 g;
    metric(q, g);
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b)
        for (int c = 0; c < D; ++c)
          for (int d = 0; d < D; ++d) {
            double up = dG[c][a][d][b] - dG[d][a][c][b];
            for (int e = 0; e < D; ++e)
              up += G0[a][c][e] * G0[e][d][b] - G0[a][d][e] * G0[e][c][b];
            R[a][b][c][d] = g[a][a] * up;
          }
  };

  const std::array<double, 3> p = {pt.a, pt.b, 0.0};
  double R0[3][3][3][3], G0[3][3][3];
  riem(p, R0);
  christ(p, G0);
  M3 g;
  metric(p, g);
  double nr2 = 0.0;
  for (int e = 0; e < D; ++e) {
    auto pp = p, pm = p;
    pp[e] += h;
    pm[e] -= h;
    double Rp[3][3][3][3], Rm[3][3][3][3];
    riem(pp, Rp);
    riem(pm, Rm);
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b)
        for (int c = 0; c < D; ++c)
          for (int d = 0; d < D; ++d) {
            double val = (Rp[a][b][c][d] - Rm[a][b][c][d]) / (2 * h);
            for (int f = 0; f < D; ++f) {
              val -= G0[f][e][a] * R0[f][b][c][d];
              val -= G0[f][e][b] * R0[a][f][c][d];
              val -= G0[f][e][c] * R0[a][b][f][d];
              val -= G0[f][e][d] * R0[a][b][c][f];
            }
            nr2 += val * val / (g[e][e] * g[a][a] * g[b][b] * g[c][c] * g[d][d]);
          }
  }
  return std::sqrt(nr2);
}

}  // namespace

TEST_CASE("nabla-Riemann norm matches a brute-force coordinate computation") {
  const BaseManifold torus = BaseManifold::flat_torus(2 * M_PI, 2 * M_PI);
  const WarpFactor bump = WarpFactor::torus_bump(1.5, 0.5);
  for (double x1 : {0.4, 1.3, 2.2}) {
    const Vec2 x{x1, 0.7};
    CHECK(ambient_grad_riem_norm(torus, bump, x) ==
          doctest::Approx(brute_grad_riem(torus, bump, x)).epsilon(1e-5));
  }

  // Polar chart with a non-space-form radial warp: the frame-connection
  // corrections are live. Spline-backed third derivatives limit agreement.
  const BaseManifold hyp = BaseManifold::hyperbolic_polar(3.0);
  std::vector<double> rs, vs;
  for (int i = 0; i <= 800; ++i) {
    rs.push_back(-0.3 + 3.9 * i / 800);
    vs.push_back(1.0 + 0.3 * rs.back() * rs.back() * std::exp(-rs.back()));
  }
  const WarpFactor tab = WarpFactor::tabulated_radial(CubicSpline(rs, vs));
  for (double r : {0.6, 1.2, 2.1}) {
    const Vec2 x{r, 0.9};
    CHECK(ambient_grad_riem_norm(hyp, tab, x) ==
          doctest::Approx(brute_grad_riem(hyp, tab, x)).epsilon(5e-4));
  }
}

TEST_CASE("tabulated radial profiles load from csv") {
  const std::string path = "/tmp/warpmcf_profile.csv";
  {
    std::ofstream out(path);
    out << std::setprecision(17);
    out << "# r, f(r): hyperbolic profile samples past the pole\n";
    for (int i = 0; i <= 400; ++i) {
      const double r = -0.2 + 3.6 * i / 400;
      out << r << "," << std::sinh(r) << "\n";
    }
  }
  const CubicSpline f = load_radial_csv(path);
  CHECK(f.eval(1.0) == doctest::Approx(std::sinh(1.0)).epsilon(1e-7));
  CHECK(f.deriv(1.0) == doctest::Approx(std::cosh(1.0)).epsilon(1e-5));
  CHECK(f.deriv2(1.0) == doctest::Approx(std::sinh(1.0)).epsilon(1e-3));

  // The loaded profile builds a working base: its curvature is ~ -1.
  const BaseManifold m = BaseManifold::rot_sym(f, 3.0);
  CHECK(m.gauss_curvature({1.5, 0.0}) == doctest::Approx(-1.0).epsilon(1e-3));
  CHECK(m.sectional_lower_bound() < -0.99);
  std::remove(path.c_str());
}

TEST_CASE("malformed radial csv is rejected with the path") {
  const std::string path = "/tmp/warpmcf_bad.csv";
  {
    std::ofstream out(path);
    out << "0.0,0.0\nnot-a-number,1.0\n";
  }
  CHECK_THROWS_WITH_AS(load_radial_csv(path), doctest::Contains(path.c_str()), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("rotationally symmetric profile must be smooth at the pole") {
  std::vector<double> r, f;
  for (int i = 0; i <= 64; ++i) {
    r.push_back(3.2 * i / 64);
    f.push_back(2.0 * r.back());  // f'(0) = 2 violates smoothness
  }
  CHECK_THROWS(BaseManifold::rot_sym(CubicSpline(r, f), 3.0));
}

TEST_SUITE_END();
