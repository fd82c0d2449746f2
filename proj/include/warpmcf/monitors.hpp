#pragma once

#include <optional>
#include <string>
#include <vector>

#include "warpmcf/estimate_constants.hpp"
#include "warpmcf/flow.hpp"

namespace warpmcf {

/// One sampled comparison of a proved inequality against the run.
struct BoundSample {
  double t = 0.0;
  double measured = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // bound - measured, recorded even when negative
};

struct BoundReport {
  std::string id;
  std::vector<BoundSample> series;
  EstimateConstants constants;   // the exact object every bound was built from
  double tol_disc = 0.0;         // discretization allowance used by `pass`
  bool pass = true;              // margin >= -tol_disc at every sample
  bool one_sided = false;        // diagnostic only (never flags violations)
  double worst_margin = 0.0;
  double worst_time = 0.0;
  int worst_node = -1;
  std::string note;

  void finish(double tol);
};

/// tol_disc = coeff * (h^2 + dt); the coefficient is calibrated by grid
/// refinement (violations must shrink at >= first order to be classified as
/// discretization artifacts).
double discretization_tol(const Trajectory& traj, double coeff);

/// sup_x v(t) against v0_max e^{rate t}; rate = (n-1)nu on compact bases and
/// 2 eta^2 + (n-1) eps_nu on truncated-disc runs.
BoundReport gradient_bound_check(const Trajectory& traj, const EstimateConstants& consts,
                                 double tol_coeff = 8.0);

/// Running max of psi(v)|A|^2 against max{g0_max, (K+C)/(2 delta), 1}.
/// delta v^2 >= 1 anywhere is reported as a gradient-bound breach.
BoundReport frakg_bound_check(const Trajectory& traj, const EstimateConstants& consts,
                              double tol_coeff = 8.0);

/// Lipschitz regularization, order m in {0, 1}: the weighted curvature
/// sup_x t^{m+1} |nabla^m A|^2 / (1+t)^{m+1} must stay bounded as t -> 0+.
/// The reported "bound" column is the running max (the empirical alpha_m);
/// pass = finiteness. m = 1 uses an arclength derivative of the curvature.
/// and is only available on 1-d flat charts.
BoundReport regularization_check(const Trajectory& traj, int m = 0);

/// s_k(l(t)) <= s_k(l_0) e^{k n t} for ambient sectional <= k < 0. Strict
/// mode requires the exact distance branch; otherwise the vertical-length
/// proxy makes the check one-sided diagnostic only.
BoundReport decay_check(const Trajectory& traj, const EstimateConstants& consts, double k,
                        double tol_coeff = 8.0);

/// v finite at all nodes and sample times; carries the blow-up node/time
/// when the run aborted.
BoundReport graph_property_check(const Trajectory& traj, const EstimateConstants& consts);

/// Refinement classification: a violation that shrinks at >= first order
/// when (h, dt) halve is "discretization", a persistent one is "genuine".
enum class ViolationClass { None, Discretization, Genuine };
ViolationClass classify_violation(double worst_violation_coarse, double worst_violation_fine);

}  // namespace warpmcf
