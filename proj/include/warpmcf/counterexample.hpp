#pragma once

#include <string>
#include <vector>

#include "warpmcf/profile_curve.hpp"

namespace warpmcf {

/// Scenario driver contrasting the two graph notions in H^{n+1}: the flow
/// preserves transversality to the equidistant curves (r = const) but not to
/// the geodesic foliation. The steep scenario reconstructs that contrast at
/// desk scale ("in the spirit of" the classical disc-at-infinity example;
/// no published parameters exist for it).
struct CounterexampleConfig {
  std::string scenario = "steep-equidistant-graph";  // | geodesic-sphere | tilted-disc
  int multiplicity = 2;
  int nodes = 768;
  double T = 1.0;
  double cfl = 0.4;
  double u_max = 3.0;        // steep scenario: ramp height in slice distance,
                             // l(r) = u_max tanh(steepness r)
  double steepness = 2.0;
  double r_max = 3.0;        // truncation of the profile in r
  double slope = 0.5;        // tilted-disc: u0(r) = slope * r
  double sphere_radius = 1.5;
  double fail_threshold = 1e3;
  int sample_count = 200;
  unsigned long long seed = 1;
  double perturbation = 0.0;  // optional seeded node jitter (fraction of spacing)
};

struct CounterexampleSample {
  double t = 0.0;
  double sup_v_eq = 0.0;
  double sup_v_geo = 0.0;
  double min_sigma_geo = 1.0;
};

struct CounterexampleReport {
  std::string scenario;
  std::vector<CounterexampleSample> series;
  bool equidistant_persistent = true;
  bool geodesic_persistent = true;
  double geodesic_failure_time = -1.0;   // first crossing/sign change
  double sign_change_time = -1.0;
  bool pinched = false;                  // extinction-type event
  double pinch_time = -1.0;
  double extinction_ode_prediction = -1.0;  // spheres: (1/n) log cosh(rho0)
  std::string note;
};

CounterexampleReport run_counterexample(const CounterexampleConfig& cfg);

}  // namespace warpmcf
