#pragma once

#include <string>
#include <vector>

#include "warpmcf/grid.hpp"

namespace warpmcf {

/// Graph height u on the grid at time t. States are immutable snapshots:
/// stepping produces a new state.
struct GraphState {
  GeometryPtr geo;
  std::vector<double> u;
  double t = 0.0;
  long step = 0;

  GraphState() = default;
  GraphState(GeometryPtr g, std::vector<double> values, double time = 0.0, long step_no = 0);

  double sup_abs_u() const;
};

/// Initial-data catalog keyed by the config `init.kind`.
struct InitialData {
  std::string kind = "constant";  // constant|sinusoid|gaussian-bump|lipschitz-cone|tanh-ramp
  double amplitude = 0.0;
  double k1 = 1.0, k2 = 1.0;      // sinusoid wavenumbers
  double width = 1.0;             // gaussian width
  double center1 = 0.0, center2 = 0.0;
  double steepness = 1.0;         // tanh ramp
};

GraphState make_initial_state(const GeometryPtr& geo, const InitialData& init);

}  // namespace warpmcf
