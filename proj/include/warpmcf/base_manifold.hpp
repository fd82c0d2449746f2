#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "warpmcf/small_math.hpp"
#include "warpmcf/spline.hpp"

namespace warpmcf {

enum class BaseKind {
  FlatCircle,      // n=1, coordinate x in [0,L), periodic
  FlatTorus,       // n=2, (x1,x2) in [0,L1)x[0,L2), periodic
  EuclideanPolar,  // n=2, geodesic polar (r,theta), f(r)=r
  HyperbolicPolar, // n=2, geodesic polar, f(r)=sinh r
  RotSym           // n=2, geodesic polar, user profile f(r) (tabulated)
};

/// Base manifold (M, ghat) in a fixed chart with orthonormal frame
///   e1 = d/dr, e2 = (1/f) d/dtheta  on polar charts,
///   e_i = d/dx_i                    on flat periodic charts.
/// Polar charts are truncated at r = truncation_radius and exclude the pole.
class BaseManifold {
 public:
  static BaseManifold flat_circle(double L);
  static BaseManifold flat_torus(double L1, double L2);
  static BaseManifold euclidean_polar(double truncation_radius);
  static BaseManifold hyperbolic_polar(double truncation_radius);
  static BaseManifold rot_sym(CubicSpline profile, double truncation_radius);

  BaseKind kind() const { return kind_; }
  int dim() const { return n_; }
  bool compact() const { return compact_; }
  bool polar() const { return !compact_; }
  double period(int axis) const { return axis == 0 ? L1_ : L2_; }
  double truncation_radius() const { return radius_; }

  /// Rotational profile f(r); throws on non-polar charts.
  double f(double r) const;
  double f_prime(double r) const;

  /// Gauss curvature at chart point (polar: -f''/f, flat: 0). n=1 has no
  /// sectional curvature; returns 0.
  double gauss_curvature(const Vec2& x) const;

  /// Sectional-curvature lower bound mu over the truncated chart region.
  /// RotSym profiles sample -f''/f on a fine radial grid.
  double sectional_lower_bound() const;

  /// ghat-distance from the pole; polar charts only.
  double dist_to_pole(const Vec2& x) const;

  std::string kind_name() const;
  const CubicSpline* profile() const { return profile_.get(); }

 private:
  BaseManifold() = default;

  BaseKind kind_ = BaseKind::FlatTorus;
  int n_ = 2;
  bool compact_ = true;
  double L1_ = 0.0, L2_ = 0.0;  // periods (flat kinds)
  double radius_ = 0.0;         // truncation radius (polar kinds)
  std::shared_ptr<const CubicSpline> profile_;  // RotSym f(r)
};

/// Thrown when a polar-chart evaluation lands on the excluded pole.
struct PoleExclusionError : std::runtime_error {
  explicit PoleExclusionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace warpmcf
