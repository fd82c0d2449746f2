#include "warpmcf/warp_factor.hpp"

#include <cmath>

namespace warpmcf {

WarpFactor WarpFactor::constant_one() { return WarpFactor{}; }

WarpFactor WarpFactor::cosh_r() {
  WarpFactor w;
  w.kind_ = WarpKind::CoshR;
  return w;
}

WarpFactor WarpFactor::torus_bump(double a, double b, int axis) {
  if (!(a - std::abs(b) > 0.0)) throw std::runtime_error("torus-bump needs a > |b| for phi > 0");
  if (axis != 0 && axis != 1) throw std::runtime_error("torus-bump axis must be 0 or 1");
  WarpFactor w;
  w.kind_ = WarpKind::TorusBump;
  w.a_ = a;
  w.b_ = b;
  w.axis_ = axis;
  return w;
}

WarpFactor WarpFactor::tabulated_radial(CubicSpline values) {
  WarpFactor w;
  w.kind_ = WarpKind::TabulatedRadial;
  w.table_ = std::make_shared<CubicSpline>(std::move(values));
  return w;
}

std::string WarpFactor::kind_name() const {
  switch (kind_) {
    case WarpKind::ConstantOne: return "constant-one";
    case WarpKind::CoshR: return "cosh-r";
    case WarpKind::TorusBump: return "torus-bump";
    case WarpKind::TabulatedRadial: return "tabulated-radial";
  }
  return "?";
}

void WarpFactor::validate(const BaseManifold& base) const {
  switch (kind_) {
    case WarpKind::ConstantOne: return;
    case WarpKind::CoshR:
    case WarpKind::TabulatedRadial: {
      if (!base.polar()) throw std::runtime_error(kind_name() + " warp requires a polar chart");
      if (kind_ == WarpKind::TabulatedRadial) {
        if (table_->x_min() > 0.0 || table_->x_max() < base.truncation_radius())
          throw std::runtime_error("tabulated warp must cover [0, truncation radius]");
        if (std::abs(table_->deriv(0.0)) > 1e-4)
          throw std::runtime_error("tabulated warp needs phi'(0)=0 for smoothness at the pole");
        const int samples = 2048;
        for (int i = 0; i <= samples; ++i) {
          const double r = base.truncation_radius() * i / samples;
          if (!(table_->eval(r) > 0.0))
            throw std::runtime_error("warp factor must be positive: phi(" + std::to_string(r) +
                                     ") <= 0");
        }
      }
      return;
    }
    case WarpKind::TorusBump: {
      if (base.polar()) throw std::runtime_error("torus-bump warp requires a flat periodic chart");
      // phi must close up over the period: sin(x) needs L = 2*pi*k.
      const double L = base.period(axis_);
      const double k = L / (2.0 * M_PI);
      if (std::abs(k - std::round(k)) > 1e-9)
        throw std::runtime_error("torus-bump warp needs period " + std::to_string(L) +
                                 " to be a multiple of 2*pi");
      if (axis_ == 1 && base.dim() < 2)
        throw std::runtime_error("torus-bump axis 1 needs a 2-d base");
      return;
    }
  }
}

double WarpFactor::phi(const BaseManifold& base, const Vec2& x) const {
  switch (kind_) {
    case WarpKind::ConstantOne: return 1.0;
    case WarpKind::CoshR: return std::cosh(base.dist_to_pole(x));
    case WarpKind::TorusBump: return a_ + b_ * std::sin(axis_ == 0 ? x.a : x.b);
    case WarpKind::TabulatedRadial: return table_->eval(base.dist_to_pole(x));
  }
  return 1.0;
}

Vec2 WarpFactor::grad(const BaseManifold& base, const Vec2& x) const {
  switch (kind_) {
    case WarpKind::ConstantOne: return {0.0, 0.0};
    case WarpKind::CoshR: return {std::sinh(base.dist_to_pole(x)), 0.0};
    case WarpKind::TorusBump: {
      const double d = b_ * std::cos(axis_ == 0 ? x.a : x.b);
      return axis_ == 0 ? Vec2{d, 0.0} : Vec2{0.0, d};
    }
    case WarpKind::TabulatedRadial: return {table_->deriv(base.dist_to_pole(x)), 0.0};
  }
  return {0.0, 0.0};
}

Sym2 WarpFactor::hess(const BaseManifold& base, const Vec2& x) const {
  switch (kind_) {
    case WarpKind::ConstantOne: return {0.0, 0.0, 0.0};
    case WarpKind::CoshR: {
      const double r = base.dist_to_pole(x);
      // Hess = diag(phi'', (f'/f) phi')
      const double c = std::cosh(r), s = std::sinh(r);
      return {c, 0.0, base.f_prime(r) / base.f(r) * s};
    }
    case WarpKind::TorusBump: {
      const double d2 = -b_ * std::sin(axis_ == 0 ? x.a : x.b);
      Sym2 h;
      (axis_ == 0 ? h.xx : h.yy) = d2;
      return h;
    }
    case WarpKind::TabulatedRadial: {
      const double r = base.dist_to_pole(x);
      return {table_->deriv2(r), 0.0, base.f_prime(r) / base.f(r) * table_->deriv(r)};
    }
  }
  return {};
}

}  // namespace warpmcf
