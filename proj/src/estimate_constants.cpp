#include "warpmcf/estimate_constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace warpmcf {

double EstimateConstants::gradient_rate() const {
  if (compact) return (n - 1) * nu;
  return 2.0 * eta * eta + (n - 1) * eps_nu;
}

double EstimateConstants::frakg_ceiling(double g0_max) const {
  return std::max({g0_max, (K + C) / (2.0 * delta), 1.0});
}

namespace {

struct Extremes {
  double eta = 0.0, mu1 = 0.0, mu2 = 0.0, ric = 0.0, gradr = 0.0;
  bool first = true;
};

void accumulate(const BaseManifold& base, const WarpFactor& warp, const Vec2& x, Extremes& e,
                bool with_grad_riem) {
  const double phi = warp.phi(base, x);
  if (!(phi > 0.0)) throw std::runtime_error("invalid warp factor: phi <= 0 at a sample");
  const Vec2 g = warp.grad(base, x);
  Sym2 T = warp.hess(base, x);
  T.xx /= phi;
  T.xy /= phi;
  T.yy /= phi;
  double lo, hi;
  if (base.dim() >= 2) {
    sym2_eigs(T, lo, hi);
  } else {
    lo = hi = T.xx;
  }
  const double gn = std::sqrt(g.a * g.a + g.b * g.b) / phi;
  if (e.first) {
    e.mu1 = lo;
    e.mu2 = hi;
    e.first = false;
  } else {
    e.mu1 = std::min(e.mu1, lo);
    e.mu2 = std::max(e.mu2, hi);
  }
  e.eta = std::max(e.eta, gn);
  e.ric = std::max(e.ric, ambient_ricci_opnorm(base, warp, x));
  if (with_grad_riem) e.gradr = std::max(e.gradr, ambient_grad_riem_norm(base, warp, x));
}

}  // namespace

EstimateConstants estimate_constants(const BaseManifold& base, const WarpFactor& warp,
                                     const std::vector<Vec2>& samples, double v0_sup, double T) {
  if (samples.empty()) throw std::runtime_error("estimate_constants needs a nonempty sampling");
  if (!(v0_sup >= 1.0)) throw std::runtime_error("v0_sup must be >= 1");
  if (!(T > 0.0)) throw std::runtime_error("horizon T must be positive");
  warp.validate(base);

  EstimateConstants c;
  c.n = base.dim();
  c.compact = base.compact();
  c.horizon = T;
  c.v0_sup = v0_sup;

  Extremes e;
  for (const Vec2& x : samples) accumulate(base, warp, x, e, true);
  c.eta = e.eta;
  c.mu1 = e.mu1;
  c.mu2 = e.mu2;
  c.ricci_sup = e.ric;
  c.grad_riem_sup = e.gradr;
  c.mu = base.sectional_lower_bound();

  // nu is defined through mu = (-n mu1 + mu2)/(n-1) - nu. For n = 1 the
  // curvature bracket in the v-evolution is <= 0, so the rate degenerates
  // to zero and we set nu = 0.
  if (c.n >= 2) {
    c.nu = (-c.n * c.mu1 + c.mu2) / (c.n - 1) - c.mu;
  } else {
    c.nu = 0.0;
  }
  c.eps_nu = std::max(c.nu, 0.0);

  // delta selects one of two cases here: compact, or complete non-compact
  // with v bounded on the initial graph (truncated-disc runs are always of
  // the bounded kind). The exponent uses the positive part of nu so that
  // delta * v^2 stays <= 1/2 along any trajectory obeying the gradient
  // bound, which also keeps delta <= 1/2.
  const double rate = c.compact ? (c.n - 1) * c.eps_nu : 2.0 * c.eta * c.eta + (c.n - 1) * c.eps_nu;
  c.delta = 1.0 / (2.0 * v0_sup * v0_sup * std::exp(2.0 * rate * T));

  c.K = 4.0 * c.eta * c.eta / c.delta + 4.0 * (1.0 - 2.0 * c.delta) * c.eps_nu +
        (2.0 + 8.0 * c.n) * c.ricci_sup;
  c.C = 4.0 / std::sqrt(c.delta) * c.grad_riem_sup;

  // The constants stand in for suprema over all of M; a truncated polar
  // chart only sees [0, R]. If the quotients are still growing steeply at
  // the outer edge, the grid-restricted values are not trustworthy as
  // global constants, so flag them instead of guessing.
  if (base.polar()) {
    const double R = base.truncation_radius();
    auto quotients = [&](double r, double& q_eta, double& q_lo, double& q_hi) {
      const Vec2 x{r, 0.0};
      const double phi = warp.phi(base, x);
      const Vec2 g = warp.grad(base, x);
      const Sym2 T = warp.hess(base, x);
      q_eta = std::sqrt(g.a * g.a + g.b * g.b) / phi;
      sym2_eigs({T.xx / phi, T.xy / phi, T.yy / phi}, q_lo, q_hi);
    };
    double e1, l1, h1, e2, l2, h2;
    quotients(0.95 * R, e1, l1, h1);
    quotients(R, e2, l2, h2);
    auto steep = [&](double near, double at, double scale) {
      return (at - near) > 0.05 * std::max(std::abs(scale), 1.0);
    };
    c.divergence_suspect = steep(e1, e2, c.eta) || steep(h1, h2, c.mu2) || steep(-l1, -l2, c.mu1);
  }
  return c;
}

std::vector<Vec2> sample_chart(const BaseManifold& base, int m) {
  if (m < 2) throw std::runtime_error("chart sampling needs m >= 2");
  std::vector<Vec2> pts;
  if (base.kind() == BaseKind::FlatCircle) {
    pts.reserve(m);
    for (int i = 0; i < m; ++i) pts.push_back({base.period(0) * i / m, 0.0});
    return pts;
  }
  pts.reserve(static_cast<std::size_t>(m) * m);
  if (base.compact()) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        pts.push_back({base.period(0) * i / m, base.period(1) * j / m});
  } else {
    const double R = base.truncation_radius();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        pts.push_back({R * (i + 0.5) / m, 2.0 * M_PI * j / m});
  }
  return pts;
}

}  // namespace warpmcf
