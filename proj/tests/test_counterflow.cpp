#include <cmath>
#include <initializer_list>
#include <memory>
#include <random>

#include "doctest.h"
#include "warpmcf/counterexample.hpp"
#include "warpmcf/flow.hpp"
#include "warpmcf/profile_curve.hpp"

using namespace warpmcf;

TEST_SUITE_BEGIN("counterflow");

TEST_CASE("geodesic chart maps compose to the identity") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ur(0.01, 3.0), uu(-2.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    const double r = ur(rng), u = uu(rng);
    double rho, l, r2, u2;
    to_geodesic_chart(r, u, rho, l);
    from_geodesic_chart(rho, l, r2, u2);
    CHECK(std::abs(r2 - r) < 1e-10);
    CHECK(std::abs(u2 - u) < 1e-10);
  }
}

TEST_CASE("the slice segment is totally geodesic and stationary") {
  const ProfileCurve slice = make_slice_segment(3.0, 200);
  const auto geom = generated_mean_curvature(slice);
  for (std::size_t i = 1; i + 1 < slice.nodes.size(); ++i)
    CHECK(std::abs(geom[i].H) < 1e-10);
  const ProfileCurve after = step_profile(slice, 1e-3);
  for (std::size_t i = 0; i < slice.nodes.size(); ++i) {
    CHECK(after.nodes[i].r == doctest::Approx(slice.nodes[i].r).epsilon(1e-12));
    CHECK(std::abs(after.nodes[i].u) < 1e-15);
  }
}

TEST_CASE("geodesic spheres have H = n coth(rho)") {
  for (double rho : {1.0, 1.5, 2.0}) {
    const ProfileCurve sph = make_geodesic_sphere(rho, 400);
    const auto geom = generated_mean_curvature(sph);
    const double expect = 2.0 * std::cosh(rho) / std::sinh(rho);
    for (std::size_t i = 5; i + 5 < sph.nodes.size(); ++i)
      CHECK(geom[i].H == doctest::Approx(expect).epsilon(5e-3));
  }
}

TEST_CASE("equidistant curves have H = n tanh(l) toward the slice") {
  const double l = 0.8;
  const ProfileCurve eq = make_equidistant_curve(l, 2.5, 400);
  const auto geom = generated_mean_curvature(eq);
  // The ccw normal of the increasing-rho ordering points away from the
  // slice on the upper half, so H is negative with magnitude n tanh(l).
  for (std::size_t i = 5; i + 5 < eq.nodes.size(); ++i)
    CHECK(std::abs(geom[i].H) == doctest::Approx(2.0 * std::tanh(l)).epsilon(5e-3));
}

TEST_CASE("shrinking sphere follows the d(rho)/dt = -2 coth(rho) law") {
  ProfileCurve sph = make_geodesic_sphere(1.2, 300);
  const double t_end = 0.05;
  while (sph.t < t_end) {
    const auto geom = generated_mean_curvature(sph);
    const double dt = std::min(profile_dt(sph, geom), t_end - sph.t + 1e-15);
    sph = step_profile(sph, dt);
  }
  // cosh(rho(t)) = cosh(rho0) e^{-2t}; read rho off the equator point u ~ 0.
  double rho_eq = 0.0;
  double best = 1e9;
  for (const ProfileNode& n : sph.nodes)
    if (std::abs(n.u) < best) {
      best = std::abs(n.u);
      rho_eq = n.r;
    }
  const double expect = std::acosh(std::cosh(1.2) * std::exp(-2.0 * t_end));
  CHECK(rho_eq == doctest::Approx(expect).epsilon(2e-3));
}

TEST_CASE("equidistant surface drifts toward the slice at d(l)/dt = -2 tanh(l)") {
  ProfileCurve eq = make_equidistant_curve(0.6, 2.0, 300);
  const double t_end = 0.03;
  while (eq.t < t_end) {
    const auto geom = generated_mean_curvature(eq);
    const double dt = std::min(profile_dt(eq, geom), t_end - eq.t + 1e-15);
    eq = step_profile(eq, dt);
  }
  // Interior nodes near the axis follow the exact equidistant law; the
  // frozen outer end only pollutes a boundary layer.
  double l_mid, rho_mid;
  to_geodesic_chart(eq.nodes[30].r, eq.nodes[30].u, rho_mid, l_mid);
  // sinh(l(t)) = sinh(l0) e^{-2t} solves the reduced ODE.
  const double expect = std::asinh(std::sinh(0.6) * std::exp(-2.0 * t_end));
  CHECK(l_mid == doctest::Approx(expect).epsilon(5e-3));
}

TEST_CASE("graph measures distinguish the two foliations") {
  SUBCASE("the slice is transversal to both with v = 1") {
    const ProfileCurve slice = make_slice_segment(2.5, 200);
    const GraphMeasures m = graph_measures(slice);
    for (std::size_t i = 1; i + 1 < slice.nodes.size(); ++i) {
      CHECK(m.v_eq[i] == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(m.v_geo[i] == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("a vertical segment is tangent to the equidistant foliation") {
    // Ordered downward so the ccw normal points away from the axis.
    std::vector<double> r(64), u(64);
    for (int i = 0; i < 64; ++i) {
      r[i] = 1.5;
      u[i] = 0.02 * (64 - i);
    }
    ProfileCurve vert = make_graph_curve(r, u);
    const GraphMeasures m = graph_measures(vert);
    CHECK(std::isinf(m.sup_v_eq));
    CHECK(std::isfinite(m.v_geo[32]));
  }
  SUBCASE("an equidistant curve is orthogonal to the geodesic foliation") {
    const ProfileCurve eq = make_equidistant_curve(0.7, 2.0, 200);
    const GraphMeasures m = graph_measures(eq);
    for (std::size_t i = 5; i + 5 < eq.nodes.size(); ++i) {
      CHECK(m.v_geo[i] == doctest::Approx(1.0).epsilon(1e-6));
      CHECK(m.v_eq[i] > 1.0);
      CHECK(std::isfinite(m.v_eq[i]));
    }
  }
}

TEST_CASE("generated curvature matches the area first variation") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ua(0.05, 0.25), uph(0.0, 2 * M_PI);
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    // Random smooth graph-like curves away from the axis.
    const double a1 = ua(rng), a2 = 0.5 * ua(rng), ph1 = uph(rng), ph2 = uph(rng);
    const int N = 600;
    std::vector<double> r(N), u(N);
    for (int i = 0; i < N; ++i) {
      r[i] = 0.4 + 2.2 * i / (N - 1);
      u[i] = 0.5 + a1 * std::sin(2 * M_PI * i / (N - 1) + ph1) +
             a2 * std::sin(4 * M_PI * i / (N - 1) + ph2);
    }
    ProfileCurve c = make_graph_curve(r, u);
    const auto geom = generated_mean_curvature(c);

    std::uniform_int_distribution<int> pick(10, N - 11);
    const int i = pick(rng);
    // Node weight: orbit volume times the two half-segments in q.
    auto seglen = [&](int a, int b) {
      const double rm = 0.5 * (c.nodes[a].r + c.nodes[b].r);
      return std::sqrt(sqr(c.nodes[b].r - c.nodes[a].r) +
                       sqr(std::cosh(rm) * (c.nodes[b].u - c.nodes[a].u)));
    };
    const double W = std::sinh(c.nodes[i].r) * 0.5 * (seglen(i - 1, i) + seglen(i, i + 1));

    const double eps = 1e-6;
    ProfileCurve plus = c, minus = c;
    const double ch = std::cosh(c.nodes[i].r);
    plus.nodes[i].r += eps * geom[i].nu_r;
    plus.nodes[i].u += eps * geom[i].nu_u / ch;
    minus.nodes[i].r -= eps * geom[i].nu_r;
    minus.nodes[i].u -= eps * geom[i].nu_u / ch;
    const double fd = (generated_area(plus) - generated_area(minus)) / (2.0 * eps);

    // delta Area = -H <X, nu> W for X = eps nu.
    const double pred = -geom[i].H * W;
    if (std::abs(pred) > 1e-4) {
      CHECK(fd == doctest::Approx(pred).epsilon(1e-3));
      ++checked;
    }
  }
  CHECK(checked > 30);
}

TEST_CASE("steep scenario: equidistant graph persists, geodesic graph fails") {
  CounterexampleConfig cfg;
  cfg.scenario = "steep-equidistant-graph";
  cfg.nodes = 384;
  cfg.T = 1.0;
  const CounterexampleReport rep = run_counterexample(cfg);
  CHECK(rep.equidistant_persistent);
  CHECK_FALSE(rep.geodesic_persistent);
  CHECK(rep.geodesic_failure_time >= 0.0);
  CHECK(rep.geodesic_failure_time < 1.0);
  double sup_eq = 0.0;
  for (const auto& s : rep.series) sup_eq = std::max(sup_eq, s.sup_v_eq);
  CHECK(sup_eq < 10.0);
}

TEST_CASE("initial slice scenario: both notions persist") {
  CounterexampleConfig cfg;
  cfg.scenario = "tilted-disc";
  cfg.slope = 0.0;  // degenerate tilt: exactly the slice
  cfg.nodes = 128;
  cfg.T = 0.2;
  const CounterexampleReport rep = run_counterexample(cfg);
  CHECK(rep.equidistant_persistent);
  CHECK(rep.geodesic_persistent);
  for (const auto& s : rep.series) {
    CHECK(s.sup_v_eq == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(s.sup_v_geo == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("equivariant reduction agrees with the graph flow on shared scenarios") {
  // The same radial surface evolved two ways: as a height field on the
  // truncated hyperbolic disc and as a profile curve. The sup of the
  // gradient function must match within discretization tolerance.
  const double R = 2.5, T = 0.2;

  auto grid = std::make_shared<GridGeometry>(BaseManifold::hyperbolic_polar(R),
                                             WarpFactor::cosh_r(), 192, 32);
  std::vector<double> u0(grid->nodes());
  for (int j = 0; j < grid->n1(); ++j)
    for (int k = 0; k < grid->n2(); ++k)
      u0[grid->index(j, k)] = 0.5 * std::exp(-sqr(grid->point(j, k).a));
  RunOptions opts;
  opts.T = T;
  opts.sample_times = {T};
  const Trajectory traj = run_flow(GraphState(grid, u0), opts);
  REQUIRE_FALSE(traj.blew_up);
  const double sup_v_grid = traj.back().fields.sup_v;

  const int N = 600;
  std::vector<double> rr(N), uu(N);
  for (int i = 0; i < N; ++i) {
    rr[i] = R * i / (N - 1);
    uu[i] = 0.5 * std::exp(-rr[i] * rr[i]);
  }
  ProfileCurve curve = make_graph_curve(rr, uu);
  while (curve.t < T) {
    const auto geom = generated_mean_curvature(curve);
    const double dt =
        std::min(profile_dt(curve, geom, 0.4, StepMode::Vertical), T - curve.t + 1e-15);
    curve = step_profile(curve, dt, StepMode::Vertical);
  }
  const GraphMeasures m = graph_measures(curve);

  CHECK(m.sup_v_eq == doctest::Approx(sup_v_grid).epsilon(0.02));
}

TEST_CASE("geodesic sphere control extinguishes on the ODE clock") {
  CounterexampleConfig cfg;
  cfg.scenario = "geodesic-sphere";
  cfg.sphere_radius = 1.5;
  cfg.nodes = 384;
  cfg.T = 1.0;
  const CounterexampleReport rep = run_counterexample(cfg);
  CHECK(rep.pinched);
  CHECK_FALSE(rep.equidistant_persistent);
  CHECK_FALSE(rep.geodesic_persistent);
  const double predicted = rep.extinction_ode_prediction;
  CHECK(predicted == doctest::Approx(0.5 * std::log(std::cosh(1.5))).epsilon(1e-12));
  CHECK(rep.pinch_time == doctest::Approx(predicted).epsilon(0.02));
}

TEST_SUITE_END();
