#pragma once

#include <memory>
#include <string>

#include "warpmcf/base_manifold.hpp"
#include "warpmcf/small_math.hpp"

namespace warpmcf {

enum class WarpKind {
  ConstantOne,     // phi = 1 (Riemannian product)
  CoshR,           // phi = cosh(dist to pole); polar charts only
  TorusBump,       // phi = a + b sin(x_axis); flat periodic charts
  TabulatedRadial  // phi(r) from a cubic spline; polar charts only
};

/// Positive warp factor phi on the base, with analytic gradient and Hessian
/// in the orthonormal frame of the chart. For radial warps on a polar chart
///   grad phi = phi'(r) e1,
///   Hess phi = diag(phi''(r), (f'/f) phi'(r)).
class WarpFactor {
 public:
  static WarpFactor constant_one();
  static WarpFactor cosh_r();
  static WarpFactor torus_bump(double a, double b, int axis = 0);
  static WarpFactor tabulated_radial(CubicSpline values);

  WarpKind kind() const { return kind_; }
  std::string kind_name() const;
  double bump_a() const { return a_; }
  double bump_b() const { return b_; }
  int bump_axis() const { return axis_; }

  /// Throws std::runtime_error if the warp is incompatible with the chart
  /// (e.g. cosh-r on a torus) or not strictly positive over it.
  void validate(const BaseManifold& base) const;

  double phi(const BaseManifold& base, const Vec2& x) const;
  /// Gradient in frame components (e1, e2).
  Vec2 grad(const BaseManifold& base, const Vec2& x) const;
  /// Hessian in frame components.
  Sym2 hess(const BaseManifold& base, const Vec2& x) const;

  bool radial() const { return kind_ != WarpKind::TorusBump; }
  const CubicSpline* table() const { return table_.get(); }

 private:
  WarpFactor() = default;

  WarpKind kind_ = WarpKind::ConstantOne;
  double a_ = 1.0, b_ = 0.0;
  int axis_ = 0;
  std::shared_ptr<const CubicSpline> table_;
};

}  // namespace warpmcf
