#include "warpmcf/counterexample.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace warpmcf {

namespace {

ProfileCurve initial_curve(const CounterexampleConfig& cfg) {
  if (cfg.scenario == "geodesic-sphere")
    return make_geodesic_sphere(cfg.sphere_radius, cfg.nodes, cfg.multiplicity);

  std::vector<double> r(cfg.nodes), u(cfg.nodes);
  for (int i = 0; i < cfg.nodes; ++i) {
    r[i] = cfg.r_max * i / (cfg.nodes - 1);
    if (cfg.scenario == "steep-equidistant-graph") {
      // Steep ramp in equidistant height: l(r) = u_max tanh(steepness r),
      // u = asinh(sinh l / cosh r). The far field is then a descending
      // equidistant region (a plain u-ramp's far field is a union of
      // u = const slices, which are totally geodesic and never move, so it
      // cannot exercise the contrast).
      const double l = cfg.u_max * std::tanh(cfg.steepness * r[i]);
      u[i] = std::asinh(std::sinh(l) / std::cosh(r[i]));
    } else if (cfg.scenario == "tilted-disc") {
      u[i] = cfg.slope * r[i];
    } else {
      throw std::runtime_error("unknown counterexample scenario: " + cfg.scenario);
    }
  }
  ProfileCurve c = make_graph_curve(r, u, cfg.multiplicity);
  // Dirichlet-style truncation: the outer marker is pinned while the
  // descending bulk shears the profile past the geodesic foliation.
  c.outer = EndCondition::Frozen;
  if (cfg.perturbation > 0.0) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> jitter(-cfg.perturbation, cfg.perturbation);
    for (std::size_t i = 1; i + 1 < c.nodes.size(); ++i)
      c.nodes[i].u += jitter(rng) * c.target_spacing;
  }
  return c;
}

}  // namespace

CounterexampleReport run_counterexample(const CounterexampleConfig& cfg) {
  if (cfg.multiplicity < 2) throw std::runtime_error("rotation multiplicity must be >= 2");
  if (!(cfg.T > 0.0)) throw std::runtime_error("horizon must be positive");

  CounterexampleReport rep;
  rep.scenario = cfg.scenario;
  if (cfg.scenario == "geodesic-sphere")
    rep.extinction_ode_prediction =
        std::log(std::cosh(cfg.sphere_radius)) / cfg.multiplicity;

  ProfileCurve curve = initial_curve(cfg);
  const double sample_dt = cfg.T / cfg.sample_count;
  double next_sample = 0.0;

  auto record = [&](const ProfileCurve& c) {
    const GraphMeasures m = graph_measures(c);
    CounterexampleSample s;
    s.t = c.t;
    s.sup_v_eq = m.sup_v_eq;
    s.sup_v_geo = m.sup_v_geo;
    s.min_sigma_geo = m.min_sigma_geo;
    rep.series.push_back(s);
    if (m.sup_v_eq > cfg.fail_threshold) rep.equidistant_persistent = false;
    if ((m.sup_v_geo > cfg.fail_threshold || m.min_sigma_geo <= 0.0) &&
        rep.geodesic_failure_time < 0.0) {
      rep.geodesic_persistent = false;
      rep.geodesic_failure_time = c.t;
    }
    if (m.min_sigma_geo <= 0.0 && rep.sign_change_time < 0.0) rep.sign_change_time = c.t;
  };

  try {
    while (curve.t < cfg.T) {
      if (curve.t >= next_sample) {
        record(curve);
        next_sample += sample_dt;
      }
      // Extinction watch for closed-up shrinkers: stop before degeneracy.
      if (curve.inner == EndCondition::Axis && curve.outer == EndCondition::Axis &&
          curve.q_length() < 0.05) {
        rep.pinched = true;
        rep.pinch_time = curve.t;
        rep.equidistant_persistent = false;
        rep.geodesic_persistent = false;
        rep.note = "extinction: curve length collapsed";
        break;
      }
      const auto geom = generated_mean_curvature(curve);
      // Graph scenarios ride the vertical curves (same evolving set, regular
      // markers near the conical tip); the sphere control moves normally.
      const StepMode mode =
          cfg.scenario == "geodesic-sphere" ? StepMode::Normal : StepMode::Vertical;
      const double dt = std::min(profile_dt(curve, geom, cfg.cfl, mode), cfg.T - curve.t + 1e-15);
      curve = step_profile(curve, dt, mode);
    }
    if (!rep.pinched) record(curve);
  } catch (const PinchError& e) {
    rep.pinched = true;
    rep.pinch_time = curve.t;
    rep.equidistant_persistent = false;
    rep.geodesic_persistent = false;
    rep.note = e.what();
  } catch (const CurveAbort& e) {
    // Vertical stepping aborts exactly when transversality to the vertical
    // curves is lost, i.e. the equidistant graph property failed.
    rep.equidistant_persistent = false;
    rep.note = e.what();
  }

  // The sphere's remaining life at the stopping length is below the
  // discretization error, so the recorded time is the extinction estimate.
  return rep;
}

}  // namespace warpmcf
