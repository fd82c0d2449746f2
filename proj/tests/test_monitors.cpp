#include <cmath>
#include <initializer_list>

#include "doctest.h"
#include "warpmcf/monitors.hpp"
#include "warpmcf/spline.hpp"

using namespace warpmcf;

TEST_SUITE_BEGIN("monitors");

namespace {

GeometryPtr torus_geo(int n, const WarpFactor& w = WarpFactor::constant_one()) {
  return std::make_shared<GridGeometry>(BaseManifold::flat_torus(2 * M_PI, 2 * M_PI), w, n, n);
}

GeometryPtr circle_geo(int n) {
  return std::make_shared<GridGeometry>(BaseManifold::flat_circle(2 * M_PI),
                                        WarpFactor::constant_one(), n, 1);
}

Trajectory torus_run(const GeometryPtr& g, double amp, double T, int samples) {
  std::vector<double> u(g->nodes());
  for (int j = 0; j < g->n1(); ++j)
    for (int k = 0; k < g->n2(); ++k) {
      const Vec2 x = g->point(j, k);
      u[g->index(j, k)] = amp * std::sin(x.a) * std::sin(x.b);
    }
  RunOptions opts;
  opts.T = T;
  opts.sample_times = uniform_sample_times(T, samples);
  return run_flow(GraphState(g, u), opts);
}

EstimateConstants consts_for(const GeometryPtr& g, const Trajectory& traj, double T) {
  return estimate_constants(g->base(), g->warp(), sample_chart(g->base(), 64),
                            traj.front().fields.sup_v, T);
}

}  // namespace

TEST_CASE("gradient bound on the product torus: constant bound, sup v non-increasing") {
  const auto g = torus_geo(48);
  const Trajectory traj = torus_run(g, 0.5, 1.0, 10);
  const auto consts = consts_for(g, traj, 1.0);
  CHECK(consts.nu == 0.0);  // product over a flat base
  const BoundReport rep = gradient_bound_check(traj, consts);
  CHECK(rep.pass);
  // nu = 0 makes the bound the constant v0_max.
  for (const BoundSample& s : rep.series) CHECK(s.bound == rep.series.front().bound);
  double prev = 1e300;
  for (const BoundSample& s : rep.series) {
    CHECK(s.measured <= prev + 1e-12);
    prev = s.measured;
  }
}

TEST_CASE("gradient bound on slices is trivially satisfied") {
  const auto g = torus_geo(32);
  RunOptions opts;
  opts.T = 0.1;
  opts.sample_times = uniform_sample_times(0.1, 4);
  const Trajectory traj = run_flow(GraphState(g, std::vector<double>(g->nodes(), 2.0)), opts);
  const auto consts = consts_for(g, traj, 0.1);
  const BoundReport rep = gradient_bound_check(traj, consts);
  CHECK(rep.pass);
  for (const BoundSample& s : rep.series) {
    CHECK(s.measured == 1.0);
    CHECK(s.margin >= 0.0);
  }
}

TEST_CASE("a deliberately mis-scaled rate is flagged, never clipped") {
  const auto g = torus_geo(48);
  const Trajectory traj = torus_run(g, 0.5, 2.0, 20);
  auto consts = consts_for(g, traj, 2.0);
  consts.nu -= 1.0;  // negative-control fixture
  consts.eps_nu = std::max(consts.nu, 0.0);
  const BoundReport rep = gradient_bound_check(traj, consts);
  CHECK_FALSE(rep.pass);
  CHECK(rep.worst_margin < 0.0);  // recorded, not clipped
}

TEST_CASE("frak-g ceiling on the product torus") {
  const auto g = torus_geo(48);
  const Trajectory traj = torus_run(g, 0.5, 1.0, 10);
  const auto consts = consts_for(g, traj, 1.0);
  // Flat product: K = C = 0, so the ceiling is max(g0_max, 0, 1).
  CHECK(consts.K == 0.0);
  CHECK(consts.C == doctest::Approx(0.0).epsilon(1e-9));
  const BoundReport rep = frakg_bound_check(traj, consts);
  CHECK(rep.pass);
  const double g0 = rep.series.front().measured;
  CHECK(rep.series.front().bound == doctest::Approx(std::max(g0, 1.0)));
  // Running max is non-decreasing by construction and must stay under the lid.
  for (const BoundSample& s : rep.series) CHECK(s.measured <= s.bound + rep.tol_disc);
}

TEST_CASE("frak-g on slices is identically zero") {
  const auto g = torus_geo(32, WarpFactor::torus_bump(1.5, 0.5));
  RunOptions opts;
  opts.T = 0.1;
  opts.sample_times = uniform_sample_times(0.1, 4);
  const Trajectory traj = run_flow(GraphState(g, std::vector<double>(g->nodes(), 0.2)), opts);
  const auto consts = consts_for(g, traj, 0.1);
  const BoundReport rep = frakg_bound_check(traj, consts);
  CHECK(rep.pass);
  for (const BoundSample& s : rep.series) CHECK(s.measured == 0.0);
}

TEST_CASE("regularization weight stays bounded for smooth and cone data") {
  SUBCASE("smooth start: t|A|^2/(1+t) -> 0 as t -> 0+") {
    const auto g = torus_geo(48);
    const Trajectory traj = torus_run(g, 0.3, 0.2, 40);
    const BoundReport rep = regularization_check(traj, 0);
    CHECK(rep.pass);
    REQUIRE(rep.series.size() > 4);
    CHECK(rep.series.front().measured < 0.1 * rep.series.back().bound + 1e-12);
  }
  SUBCASE("lipschitz cone on the circle: weighted curvature bounded") {
    const auto g = circle_geo(2048);
    std::vector<double> u(g->nodes());
    for (int i = 0; i < g->n1(); ++i) {
      const double x = 2 * M_PI * i / g->n1();
      u[i] = 0.5 * std::abs(x - M_PI);
    }
    RunOptions opts;
    opts.T = 0.1;
    opts.dt_policy.cfl_fraction = 0.8;
    opts.sample_times = log_sample_times(1e-4, 0.1, 40);
    const Trajectory traj = run_flow(GraphState(g, u), opts);
    REQUIRE_FALSE(traj.blew_up);

    const BoundReport m0 = regularization_check(traj, 0);
    CHECK(m0.pass);
    // |A|^2 alone diverges like 1/t toward t = 0; the weight caps it.
    double alpha0 = 0.0;
    for (const BoundSample& s : m0.series) alpha0 = std::max(alpha0, s.measured);
    CHECK(alpha0 > 0.0);
    CHECK(alpha0 < 1.0);

    const BoundReport m1 = regularization_check(traj, 1);
    CHECK(m1.pass);
  }
  SUBCASE("slices: all weights zero") {
    const auto g = torus_geo(32);
    RunOptions opts;
    opts.T = 0.05;
    opts.sample_times = uniform_sample_times(0.05, 4);
    const Trajectory traj = run_flow(GraphState(g, std::vector<double>(g->nodes(), 1.0)), opts);
    const BoundReport rep = regularization_check(traj, 0);
    CHECK(rep.pass);
    for (const BoundSample& s : rep.series) CHECK(s.measured == 0.0);
  }
}

TEST_CASE("decay monitor in the hyperbolic model") {
  const auto g = std::make_shared<GridGeometry>(BaseManifold::hyperbolic_polar(3.0),
                                                WarpFactor::cosh_r(), 64, 64);
  std::vector<double> u(g->nodes());
  for (int j = 0; j < g->n1(); ++j)
    for (int k = 0; k < g->n2(); ++k)
      u[g->index(j, k)] = 0.8 * std::exp(-sqr(g->point(j, k).a));
  RunOptions opts;
  opts.T = 1.0;
  opts.sample_times = uniform_sample_times(1.0, 10);
  const Trajectory traj = run_flow(GraphState(g, u), opts);
  REQUIRE_FALSE(traj.blew_up);
  const auto consts = consts_for(g, traj, 1.0);

  const BoundReport rep = decay_check(traj, consts, -1.0);
  CHECK(rep.pass);
  CHECK_FALSE(rep.one_sided);  // exact distances in the model
  // The bound evaluates to s_k(l0) e^{-2t}; check the quoted value at t = 1.
  const double sk0 = rep.series.front().bound;
  CHECK(rep.series.back().bound == doctest::Approx(sk0 * std::exp(-2.0)).epsilon(1e-9));
  for (const BoundSample& s : rep.series) CHECK(s.margin >= -rep.tol_disc);
}

TEST_CASE("decay monitor refuses an unverified curvature ceiling") {
  const auto g = torus_geo(32);  // flat ambient: sectional 0 > k
  const Trajectory traj = torus_run(g, 0.2, 0.05, 2);
  const auto consts = consts_for(g, traj, 0.05);
  CHECK_THROWS_WITH_AS(decay_check(traj, consts, -1.0),
                       doctest::Contains("precondition failed"), std::runtime_error);
}

TEST_CASE("decay monitor is one-sided with proxy distances") {
  // A tabulated warp numerically equal to cosh(r) still takes the generic
  // (upper-bound) distance branch, so the check degrades to diagnostic mode.
  // The table extends past the pole so the natural-spline end sits away
  // from the phi'(0) = 0 smoothness check.
  std::vector<double> rs, vals;
  for (int i = 0; i <= 260; ++i) {
    rs.push_back(-0.2 + 2.6 * i / 260);
    vals.push_back(std::cosh(rs.back()));
  }
  const auto g = std::make_shared<GridGeometry>(
      BaseManifold::hyperbolic_polar(2.0), WarpFactor::tabulated_radial(CubicSpline(rs, vals)),
      48, 48);
  std::vector<double> u(g->nodes());
  for (int j = 0; j < g->n1(); ++j)
    for (int k = 0; k < g->n2(); ++k) u[g->index(j, k)] = 0.3 * std::exp(-sqr(g->point(j, k).a));
  RunOptions opts;
  opts.T = 0.2;
  opts.sample_times = uniform_sample_times(0.2, 4);
  const Trajectory traj = run_flow(GraphState(g, u), opts);
  const auto consts = consts_for(g, traj, 0.2);
  const BoundReport rep = decay_check(traj, consts, -0.9);
  CHECK(rep.one_sided);   // vertical-length proxy only
  CHECK(rep.pass);        // one-sided reports never flag genuine violations
}

TEST_CASE("graph property check reports completed and aborted runs") {
  SUBCASE("completed run passes with the sup-v curve") {
    const auto g = torus_geo(32);
    const Trajectory traj = torus_run(g, 0.4, 0.2, 5);
    const auto consts = consts_for(g, traj, 0.2);
    const BoundReport rep = graph_property_check(traj, consts);
    CHECK(rep.pass);
    CHECK(rep.series.size() == traj.samples.size());
  }
  SUBCASE("aborted run carries the first failure node and time") {
    const auto g = torus_geo(32);
    std::vector<double> u(g->nodes());
    for (int j = 0; j < 32; ++j)
      for (int k = 0; k < 32; ++k)
        u[g->index(j, k)] = 0.5 * std::sin(4 * g->point(j, k).a) * std::sin(4 * g->point(j, k).b);
    RunOptions opts;
    opts.T = 20.0;
    opts.dt_policy.cfl = false;
    opts.dt_policy.fixed_dt = 0.5;
    const Trajectory traj = run_flow(GraphState(g, u), opts);
    REQUIRE(traj.blew_up);
    const auto consts = consts_for(g, traj, 20.0);
    const BoundReport rep = graph_property_check(traj, consts);
    CHECK_FALSE(rep.pass);
    CHECK(rep.worst_node >= 0);
    CHECK(rep.worst_time > 0.0);
  }
}

TEST_CASE("violation classification by refinement") {
  CHECK(classify_violation(1e-3, 0.0) == ViolationClass::None);
  CHECK(classify_violation(1e-3, 4e-4) == ViolationClass::Discretization);
  CHECK(classify_violation(1e-3, 9e-4) == ViolationClass::Genuine);
}

TEST_SUITE_END();
