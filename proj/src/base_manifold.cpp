#include "warpmcf/base_manifold.hpp"

#include <algorithm>
#include <cmath>

namespace warpmcf {

namespace {
constexpr double kPoleTol = 1e-12;
}

BaseManifold BaseManifold::flat_circle(double L) {
  if (!(L > 0.0)) throw std::runtime_error("circle circumference must be positive");
  BaseManifold m;
  m.kind_ = BaseKind::FlatCircle;
  m.n_ = 1;
  m.compact_ = true;
  m.L1_ = L;
  return m;
}

BaseManifold BaseManifold::flat_torus(double L1, double L2) {
  if (!(L1 > 0.0) || !(L2 > 0.0)) throw std::runtime_error("torus periods must be positive");
  BaseManifold m;
  m.kind_ = BaseKind::FlatTorus;
  m.n_ = 2;
  m.compact_ = true;
  m.L1_ = L1;
  m.L2_ = L2;
  return m;
}

BaseManifold BaseManifold::euclidean_polar(double truncation_radius) {
  if (!(truncation_radius > 0.0)) throw std::runtime_error("truncation radius must be positive");
  BaseManifold m;
  m.kind_ = BaseKind::EuclideanPolar;
  m.n_ = 2;
  m.compact_ = false;
  m.radius_ = truncation_radius;
  return m;
}

BaseManifold BaseManifold::hyperbolic_polar(double truncation_radius) {
  if (!(truncation_radius > 0.0)) throw std::runtime_error("truncation radius must be positive");
  BaseManifold m;
  m.kind_ = BaseKind::HyperbolicPolar;
  m.n_ = 2;
  m.compact_ = false;
  m.radius_ = truncation_radius;
  return m;
}

BaseManifold BaseManifold::rot_sym(CubicSpline profile, double truncation_radius) {
  if (!(truncation_radius > 0.0)) throw std::runtime_error("truncation radius must be positive");
  if (profile.x_min() > 0.0 || profile.x_max() < truncation_radius)
    throw std::runtime_error("rotsym profile must cover [0, truncation radius]");
  // Smoothness at the pole: f(0)=0, f'(0)=1.
  if (std::abs(profile.eval(0.0)) > 1e-6 || std::abs(profile.deriv(0.0) - 1.0) > 1e-4)
    throw std::runtime_error("rotsym profile must satisfy f(0)=0, f'(0)=1");
  BaseManifold m;
  m.kind_ = BaseKind::RotSym;
  m.n_ = 2;
  m.compact_ = false;
  m.radius_ = truncation_radius;
  m.profile_ = std::make_shared<CubicSpline>(std::move(profile));
  return m;
}

double BaseManifold::f(double r) const {
  switch (kind_) {
    case BaseKind::EuclideanPolar: return r;
    case BaseKind::HyperbolicPolar: return std::sinh(r);
    case BaseKind::RotSym: return profile_->eval(r);
    default: throw std::runtime_error("profile f(r) undefined on flat periodic charts");
  }
}

double BaseManifold::f_prime(double r) const {
  switch (kind_) {
    case BaseKind::EuclideanPolar: return 1.0;
    case BaseKind::HyperbolicPolar: return std::cosh(r);
    case BaseKind::RotSym: return profile_->deriv(r);
    default: throw std::runtime_error("profile f(r) undefined on flat periodic charts");
  }
}

double BaseManifold::gauss_curvature(const Vec2& x) const {
  switch (kind_) {
    case BaseKind::FlatCircle:
    case BaseKind::FlatTorus:
    case BaseKind::EuclideanPolar: return 0.0;
    case BaseKind::HyperbolicPolar: return -1.0;
    case BaseKind::RotSym: {
      if (x.a < kPoleTol) throw PoleExclusionError("curvature evaluation at pole");
      return -profile_->deriv2(x.a) / profile_->eval(x.a);
    }
  }
  return 0.0;
}

double BaseManifold::sectional_lower_bound() const {
  switch (kind_) {
    case BaseKind::FlatCircle:
    case BaseKind::FlatTorus:
    case BaseKind::EuclideanPolar: return 0.0;
    case BaseKind::HyperbolicPolar: return -1.0;
    case BaseKind::RotSym: {
      double mu = 0.0;
      const int samples = 4096;
      for (int i = 1; i <= samples; ++i) {
        const double r = radius_ * i / samples;
        mu = std::min(mu, -profile_->deriv2(r) / profile_->eval(r));
      }
      return mu;
    }
  }
  return 0.0;
}

double BaseManifold::dist_to_pole(const Vec2& x) const {
  if (compact_) throw std::runtime_error("compact base has no pole");
  return x.a;
}

std::string BaseManifold::kind_name() const {
  switch (kind_) {
    case BaseKind::FlatCircle: return "flat-circle";
    case BaseKind::FlatTorus: return "flat-torus";
    case BaseKind::EuclideanPolar: return "euclidean-polar";
    case BaseKind::HyperbolicPolar: return "hyperbolic-polar";
    case BaseKind::RotSym: return "rotsym-radial";
  }
  return "?";
}

}  // namespace warpmcf
