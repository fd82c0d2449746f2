#pragma once

#include <functional>
#include <vector>

#include "warpmcf/ambient.hpp"
#include "warpmcf/flow.hpp"
#include "warpmcf/graph_state.hpp"

namespace warpmcf {

/// Independent finite-difference verification layer. These checks share no
/// stencil helpers with the production formulas: the curvature check builds
/// the ambient metric in chart coordinates from scratch, and the induced
/// operators below discretize the graph metric in chart components instead
/// of the orthonormal frame.

struct RiemannCheckResult {
  double max_rel_error = 0.0;     // worst component error against closed forms
  double max_symmetry_error = 0.0;  // self-test: antisymmetries + first Bianchi
  int worst_point = -1;
};

/// Assemble gbar in chart coordinates, differentiate twice (centered, with
/// Richardson extrapolation over h and h/2), and compare every frame
/// component against the closed-form curvature blocks.
RiemannCheckResult fd_riemann_check(const BaseManifold& base, const WarpFactor& warp,
                                    const std::vector<Vec2>& points, double h_fd = 1e-3);

/// Relative error between the finite-difference derivative of discrete graph
/// area under a vertical perturbation eps*chi and the first-variation value
/// -sum H chi phi dmu_hat. chi must vanish near Dirichlet boundaries.
double first_variation_check(const GraphState& state, const std::vector<double>& chi,
                             double eps = 1e-5);

/// Sign probe: pushing along +N where H > 0 must decrease area. Returns the
/// finite-difference area derivative for a positive bump chi.
double area_derivative(const GraphState& state, const std::vector<double>& chi,
                       double eps = 1e-5);

/// Max-norm residual of the v-evolution identity evaluated from three
/// consecutive trajectory samples centered at index mid. Rings touching the
/// pole or the frozen boundary are excluded on polar charts (wide stencils).
double v_evolution_residual(const Trajectory& traj, std::size_t mid);

/// Max-node error of the induced-Laplacian identity
///   Lap u = -(2/phi^2) <e0_top, grad phi> + H/(phi v),
/// left side discretized through the chart-coordinate induced metric.
double laplacian_identity_check(const GraphState& state);

/// Max-node error of |grad u|^2 = (1/phi^2)(1 - 1/v^2) (algebraic identity,
/// so the result should sit at rounding level).
double gradient_identity_check(const GraphState& state);

}  // namespace warpmcf
