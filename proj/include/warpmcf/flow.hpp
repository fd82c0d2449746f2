#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "warpmcf/graph_fields.hpp"
#include "warpmcf/graph_state.hpp"

namespace warpmcf {

/// Raised when the evolving graph stops being one: a non-finite height or
/// v beyond the failure threshold. Carries the first offending node.
struct BlowupError : std::runtime_error {
  BlowupError(int node_, double time_, const std::string& what)
      : std::runtime_error(what), node(node_), time(time_) {}
  int node;
  double time;
};

constexpr double kGraphFailureV = 1e6;

enum class Scheme { Euler, Rk2 };

struct DtPolicy {
  bool cfl = true;
  double cfl_fraction = 0.4;  // in (0, 0.9]
  double fixed_dt = 0.0;
};

/// Step size under the policy. The CFL step is c h_min^2 / (2n): the top
/// symbol of the height equation is dominated by the chart Laplacian. On
/// polar grids the angular direction is handled implicitly, so only the
/// radial spacing restricts dt.
double flow_dt(const GridGeometry& geo, const DtPolicy& policy);

/// One step of du/dt = Lap u - (phi^2/v^2) Hess u(grad u, grad u)
///                     + (1/phi) <grad u, grad phi> (v^2+1)/v^2.
/// Periodic charts: explicit Euler or midpoint RK2. Polar charts: the
/// angular second-difference is taken implicitly with its coefficient
/// frozen (per-ring cyclic tridiagonal solves); RK2 is not offered there.
GraphState step_flow(const GraphState& s, double dt, Scheme scheme);

struct FlowSample {
  double t = 0.0;
  long step = 0;
  std::vector<double> u;
  GraphFields fields;
};

struct BlowupInfo {
  int node = -1;
  double time = 0.0;
  std::string what;
};

struct Trajectory {
  GeometryPtr geo;
  std::vector<FlowSample> samples;
  double dt = 0.0;
  double final_t = 0.0;
  long total_steps = 0;
  bool blew_up = false;
  BlowupInfo blowup;
  bool stopped_near_limit = false;  // sup|H| fell under the stop tolerance

  const FlowSample& front() const { return samples.front(); }
  const FlowSample& back() const { return samples.back(); }
};

struct RunOptions {
  Scheme scheme = Scheme::Euler;
  DtPolicy dt_policy;
  double T = 1.0;
  std::vector<double> sample_times;  // sorted; t=0 is always recorded
  double stop_sup_h = 0.0;           // 0 disables near-limit detection
};

/// Iterate step_flow to the horizon, recording u and the derived fields at
/// the sample times. Halts early on blow-up (recorded, not rethrown) or when
/// sup|H| drops under the stop tolerance.
Trajectory run_flow(const GraphState& initial, const RunOptions& opts);

std::vector<double> uniform_sample_times(double T, int count);
std::vector<double> log_sample_times(double t_min, double T, int count);

}  // namespace warpmcf
