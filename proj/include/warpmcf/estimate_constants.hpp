#pragma once

#include <vector>

#include "warpmcf/ambient.hpp"
#include "warpmcf/base_manifold.hpp"
#include "warpmcf/warp_factor.hpp"

namespace warpmcf {

/// Constants driving every bound monitor. All sups/infs are taken over the
/// supplied chart sample points (a desk-scale surrogate for the manifold-wide
/// suprema), so the values are grid-restricted by construction.
struct EstimateConstants {
  int n = 2;                 // base dimension
  bool compact = true;
  double eta = 0.0;          // sup |grad phi| / phi
  double mu1 = 0.0;          // pinching of Hess phi / phi from below
  double mu2 = 0.0;          // ... and above
  double mu = 0.0;           // sectional lower bound of the base
  double nu = 0.0;           // (-n mu1 + mu2)/(n-1) - mu   (0 when n = 1)
  double eps_nu = 0.0;       // positive part of nu
  double horizon = 0.0;      // run horizon T entering delta
  double v0_sup = 1.0;       // sup of the gradient function on the initial graph
  double delta = 0.5;        // 0 < delta <= 1/2
  double ricci_sup = 0.0;    // sup |ambient Ricci| (operator norm)
  double grad_riem_sup = 0.0;// sup |nabla Riem| of the ambient
  double K = 0.0;            // 4 eta^2/delta + 4(1-2delta) eps_nu + (2+8n) ricci_sup
  double C = 0.0;            // 4/sqrt(delta) grad_riem_sup
  bool divergence_suspect = false;  // sup still moving under sample refinement

  double psi(double v) const { return v * v / (1.0 - delta * v * v); }
  /// Gradient-bound exponent rate: (n-1)nu for compact bases, otherwise
  /// 2 eta^2 + (n-1) eps_nu.
  double gradient_rate() const;
  /// Ceiling of the curvature monitor: max{g0_max, (K+C)/(2 delta), 1}.
  double frakg_ceiling(double g0_max) const;
};

/// Compute the constants from chart samples. v0_sup must come from the
/// initial graph (>= 1); T > 0 is the run horizon the delta formula uses.
EstimateConstants estimate_constants(const BaseManifold& base, const WarpFactor& warp,
                                     const std::vector<Vec2>& samples, double v0_sup, double T);

/// Convenience sampling of a chart: flat charts get an m x m periodic
/// lattice, polar charts an m x m (r, theta) lattice excluding the pole.
std::vector<Vec2> sample_chart(const BaseManifold& base, int m);

}  // namespace warpmcf
