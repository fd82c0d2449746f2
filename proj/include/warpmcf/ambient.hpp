#pragma once

#include <array>

#include "warpmcf/base_manifold.hpp"
#include "warpmcf/warp_factor.hpp"

namespace warpmcf {

/// Ambient space Mbar = M x_phi R with metric ghat + phi(x)^2 du^2 and
/// adapted orthonormal frame ebar_0 = (1/phi) d/du, ebar_i = e_i.
///
/// Closed-form curvature in that frame:
///   R_{0i0k} = -(Hess phi / phi)(e_i, e_k)
///   R_{0ijk} = 0
///   R_{ijkl} = Rhat_{ijkl}
/// All other components follow by the symmetries of the curvature tensor.

enum class PlaneKind { VerticalI0, HorizontalIJ };

/// Sectional curvature of the (ebar_i, ebar_0) plane (i from 1..n) or of the
/// horizontal (ebar_i, ebar_j) plane. Polar charts reject the pole.
double ambient_sectional(const BaseManifold& base, const WarpFactor& warp, const Vec2& x,
                         PlaneKind plane, int i = 1);

/// Worst (largest) sectional curvature over both plane kinds at x.
double ambient_sectional_max(const BaseManifold& base, const WarpFactor& warp, const Vec2& x);

/// Frame components of the full ambient curvature tensor at x, as a dense
/// (n+1)^4 array indexed [a][b][c][d] with 0 the vertical direction.
using Riem4 = std::array<std::array<std::array<std::array<double, 3>, 3>, 3>, 3>;
Riem4 ambient_riemann(const BaseManifold& base, const WarpFactor& warp, const Vec2& x);

/// Operator norm (largest |eigenvalue|) of the ambient Ricci tensor at x.
double ambient_ricci_opnorm(const BaseManifold& base, const WarpFactor& warp, const Vec2& x);

/// Frobenius norm of the covariant derivative of the ambient curvature at x.
/// Horizontal frame derivatives of the closed-form components are taken by
/// centered differences (the component fields are smooth scalars on M).
double ambient_grad_riem_norm(const BaseManifold& base, const WarpFactor& warp, const Vec2& x,
                              double h_fd = 1e-4);

struct SliceDistance {
  double length = 0.0;
  bool exact = false;  // true only in the hyperbolic cosh-r model
};

/// Distance from the graph point (x, u) to the totally geodesic slice u=0.
/// Exact in the hyperbolic model (sinh l = phi(x) |sinh u|); otherwise the
/// vertical-curve length phi(x)|u|, an upper bound.
SliceDistance distance_to_slice(const BaseManifold& base, const WarpFactor& warp, const Vec2& x,
                                double u);

}  // namespace warpmcf
