#include <cmath>
#include <initializer_list>

#include "doctest.h"
#include "warpmcf/flow.hpp"

using namespace warpmcf;

TEST_SUITE_BEGIN("graphflow");

namespace {

GeometryPtr torus_geo(int n, const WarpFactor& w = WarpFactor::constant_one()) {
  return std::make_shared<GridGeometry>(BaseManifold::flat_torus(2 * M_PI, 2 * M_PI), w, n, n);
}

GeometryPtr circle_geo(int n) {
  return std::make_shared<GridGeometry>(BaseManifold::flat_circle(2 * M_PI),
                                        WarpFactor::constant_one(), n, 1);
}

GeometryPtr hyp_geo(int n1, int n2, double R = 3.0) {
  return std::make_shared<GridGeometry>(BaseManifold::hyperbolic_polar(R), WarpFactor::cosh_r(),
                                        n1, n2);
}

}  // namespace

TEST_CASE("constant graphs are stationary, bitwise") {
  for (const auto& g : {torus_geo(32, WarpFactor::torus_bump(1.5, 0.5)), hyp_geo(32, 32)}) {
    GraphState s(g, std::vector<double>(g->nodes(), 0.4));
    const GraphState next = step_flow(s, 1e-3, Scheme::Euler);
    for (int i = 0; i < g->nodes(); ++i) CHECK(next.u[i] == s.u[i]);
  }
}

TEST_CASE("heat-rate decay of a small sinusoid on the circle") {
  const auto g = circle_geo(512);
  const double eps = 1e-3;
  std::vector<double> u(g->nodes());
  for (int i = 0; i < g->n1(); ++i) u[i] = eps * std::sin(2 * M_PI * i / g->n1());

  RunOptions opts;
  opts.T = 1.0;
  opts.dt_policy.cfl_fraction = 0.5;
  opts.sample_times = {1.0};
  const Trajectory traj = run_flow(GraphState(g, u), opts);
  REQUIRE_FALSE(traj.blew_up);
  const double amp = GraphState(g, traj.back().u).sup_abs_u();
  CHECK(amp == doctest::Approx(eps * std::exp(-1.0)).epsilon(0.01));
}

TEST_CASE("euler consistency: two half steps vs one full step is O(dt^2)") {
  const auto g = torus_geo(32);
  std::vector<double> u(g->nodes());
  for (int j = 0; j < 32; ++j)
    for (int k = 0; k < 32; ++k) {
      const Vec2 x = g->point(j, k);
      u[g->index(j, k)] = 0.3 * std::sin(x.a) * std::cos(x.b);
    }
  const GraphState s(g, u);

  auto defect = [&](double dt) {
    const GraphState two = step_flow(step_flow(s, dt, Scheme::Euler), dt, Scheme::Euler);
    const GraphState one = step_flow(s, 2 * dt, Scheme::Euler);
    double worst = 0.0;
    for (int i = 0; i < g->nodes(); ++i) worst = std::max(worst, std::abs(two.u[i] - one.u[i]));
    return worst;
  };
  const double d1 = defect(4e-3), d2 = defect(2e-3);
  CHECK(d1 / d2 > 3.5);  // quadratic in dt
  CHECK(d1 / d2 < 4.5);
}

TEST_CASE("blow-up detection reports the first offending node") {
  const auto g = torus_geo(32);
  std::vector<double> u(g->nodes());
  for (int j = 0; j < 32; ++j)
    for (int k = 0; k < 32; ++k)
      u[g->index(j, k)] = 0.5 * std::sin(4 * g->point(j, k).a) * std::sin(4 * g->point(j, k).b);

  // A fixed step far above the diffusive stability limit must blow up and be
  // caught, never silently produce NaNs.
  RunOptions opts;
  opts.T = 20.0;
  opts.dt_policy.cfl = false;
  opts.dt_policy.fixed_dt = 0.5;
  const Trajectory traj = run_flow(GraphState(g, u), opts);
  CHECK(traj.blew_up);
  CHECK(traj.blowup.node >= 0);
  CHECK(traj.blowup.time > 0.0);
}

TEST_CASE("torus product decay reaches the totally geodesic slice") {
  const auto g = torus_geo(64);
  std::vector<double> u(g->nodes());
  for (int j = 0; j < 64; ++j)
    for (int k = 0; k < 64; ++k) {
      const Vec2 x = g->point(j, k);
      u[g->index(j, k)] = 0.5 * std::sin(x.a) * std::sin(x.b);
    }
  RunOptions opts;
  opts.T = 5.0;
  opts.sample_times = uniform_sample_times(5.0, 10);
  const Trajectory traj = run_flow(GraphState(g, u), opts);
  REQUIRE_FALSE(traj.blew_up);

  double prev = 1e300;
  for (const FlowSample& s : traj.samples) {
    const double sup = GraphState(g, s.u).sup_abs_u();
    CHECK(sup <= prev + 1e-14);
    prev = sup;
  }
  CHECK(GraphState(g, traj.back().u).sup_abs_u() < 1e-3);
}

TEST_CASE("hyperbolic disc run keeps the graph property") {
  const auto g = hyp_geo(48, 48);
  std::vector<double> u(g->nodes());
  for (int j = 0; j < g->n1(); ++j)
    for (int k = 0; k < g->n2(); ++k)
      u[g->index(j, k)] = 0.8 * std::exp(-sqr(g->point(j, k).a));
  RunOptions opts;
  opts.T = 0.3;
  opts.sample_times = uniform_sample_times(0.3, 6);
  const Trajectory traj = run_flow(GraphState(g, u), opts);
  REQUIRE_FALSE(traj.blew_up);
  for (const FlowSample& s : traj.samples) {
    CHECK(std::isfinite(s.fields.sup_v));
    CHECK(s.fields.sup_v >= 1.0);
  }
  // The height should already be dropping.
  CHECK(GraphState(g, traj.back().u).sup_abs_u() <
        GraphState(g, traj.front().u).sup_abs_u());
}

TEST_CASE("zero initial data stays exactly zero") {
  const auto g = hyp_geo(32, 32);
  RunOptions opts;
  opts.T = 0.05;
  opts.sample_times = {0.05};
  const Trajectory traj = run_flow(GraphState(g, std::vector<double>(g->nodes(), 0.0)), opts);
  for (double x : traj.back().u) CHECK(x == 0.0);
}

TEST_CASE("order of accuracy on the linearized torus problem") {
  // u0 = eps sin(x1) evolves essentially by the heat equation; the exact
  // solution eps e^{-t} sin(x1) is accurate to O(eps^3), far below the
  // discretization error probed here.
  const double eps = 1e-3, T = 0.25;
  auto final_error = [&](int n, Scheme scheme, bool cfl, double dt) {
    const auto g = torus_geo(n);
    std::vector<double> u(g->nodes());
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) u[g->index(j, k)] = eps * std::sin(g->point(j, k).a);
    RunOptions opts;
    opts.scheme = scheme;
    opts.T = T;
    if (!cfl) {
      opts.dt_policy.cfl = false;
      opts.dt_policy.fixed_dt = dt;
    }
    opts.sample_times = {T};
    const Trajectory traj = run_flow(GraphState(g, u), opts);
    double worst = 0.0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        worst = std::max(worst, std::abs(traj.back().u[g->index(j, k)] -
                                         eps * std::exp(-T) * std::sin(g->point(j, k).a)));
    return worst;
  };

  // Spatial order: cfl stepping ties dt ~ h^2, so halving h divides the
  // total error by ~4 for both schemes.
  CHECK(final_error(24, Scheme::Euler, true, 0) / final_error(48, Scheme::Euler, true, 0) > 3.0);
  CHECK(final_error(24, Scheme::Rk2, true, 0) / final_error(48, Scheme::Rk2, true, 0) > 3.0);

  // Temporal order of Euler at fixed h: the dt-part halves with dt. Use the
  // defect against a tiny-dt reference to isolate it.
  const double ref = final_error(32, Scheme::Euler, false, 1e-5);
  const double e1 = final_error(32, Scheme::Euler, false, 5e-3);
  const double e2 = final_error(32, Scheme::Euler, false, 2.5e-3);
  CHECK((e1 - ref) / (e2 - ref) > 1.6);
  CHECK((e1 - ref) / (e2 - ref) < 2.6);
}

TEST_CASE("product warp reduces bitwise to the classical graph flow") {
  // With phi = 1 the warp terms must contribute exact zeros, so one Euler
  // step equals a hand-rolled classical nonparametric MCF step bitwise.
  const int n = 32;
  const auto g = torus_geo(n);
  std::vector<double> u(g->nodes());
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const Vec2 x = g->point(j, k);
      u[g->index(j, k)] = 0.4 * std::sin(x.a) * std::cos(2.0 * x.b) + 0.2 * std::cos(x.a);
    }
  const double dt = 1e-3;
  const GraphState next = step_flow(GraphState(g, u), dt, Scheme::Euler);

  const double h = g->h1();
  auto at = [&](int j, int k) { return u[((j + n) % n) * n + ((k + n) % n)]; };
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const double u1 = (at(j + 1, k) - at(j - 1, k)) / (2 * h);
      const double u2 = (at(j, k + 1) - at(j, k - 1)) / (2 * h);
      const double h11 = (at(j + 1, k) - 2 * at(j, k) + at(j - 1, k)) / (h * h);
      const double h22 = (at(j, k + 1) - 2 * at(j, k) + at(j, k - 1)) / (h * h);
      const double h12 = (at(j + 1, k + 1) - at(j - 1, k + 1) - at(j + 1, k - 1) +
                          at(j - 1, k - 1)) /
                         (4 * h * h);
      // Mirrors the production arithmetic exactly with the warp terms zeroed.
      const double v2 = 1.0 + (u1 * u1 + u2 * u2);
      const double w = 1.0 / v2;
      const double hess = u1 * u1 * h11 + 2.0 * u1 * u2 * h12 + u2 * u2 * h22;
      const double classical = at(j, k) + dt * ((h11 + h22) - w * hess + 0.0);
      CHECK(next.u[g->index(j, k)] == classical);
    }
}

TEST_CASE("near-limit detection stops the run") {
  const auto g = torus_geo(32);
  std::vector<double> u(g->nodes());
  for (int j = 0; j < 32; ++j)
    for (int k = 0; k < 32; ++k)
      u[g->index(j, k)] = 0.2 * std::sin(g->point(j, k).a) * std::sin(g->point(j, k).b);
  RunOptions opts;
  opts.T = 50.0;
  opts.sample_times = uniform_sample_times(50.0, 100);
  opts.stop_sup_h = 1e-6;
  const Trajectory traj = run_flow(GraphState(g, u), opts);
  CHECK(traj.stopped_near_limit);
  CHECK(traj.final_t < 50.0);
}

TEST_SUITE_END();
