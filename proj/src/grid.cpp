#include "warpmcf/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace warpmcf {

GridGeometry::GridGeometry(BaseManifold base, WarpFactor warp, int n1, int n2)
    : base_(std::move(base)), warp_(std::move(warp)), n1_(n1), n2_(n2) {
  warp_.validate(base_);
  if (base_.dim() == 1) {
    if (n2 != 1) throw std::runtime_error("1-d base takes n2 = 1");
    if (n1 < 16) throw std::runtime_error("resolution must be >= 16 per axis");
    h1_ = base_.period(0) / n1_;
    h2_ = 0.0;
  } else if (base_.compact()) {
    if (n1 < 16 || n2 < 16) throw std::runtime_error("resolution must be >= 16 per axis");
    h1_ = base_.period(0) / n1_;
    h2_ = base_.period(1) / n2_;
  } else {
    if (n1 < 16 || n2 < 16) throw std::runtime_error("resolution must be >= 16 per axis");
    if (n2 % 2 != 0) throw std::runtime_error("polar grids need an even angular resolution");
    h1_ = base_.truncation_radius() / n1_;
    h2_ = 2.0 * M_PI / n2_;
  }

  const int N = nodes();
  phi_.resize(N);
  gphi1_.resize(N);
  gphi2_.resize(N);
  hphi11_.resize(N);
  hphi12_.resize(N);
  hphi22_.resize(N);
  for (int j = 0; j < n1_; ++j)
    for (int k = 0; k < n2_; ++k) {
      const Vec2 x = point(j, k);
      const int id = index(j, k);
      phi_[id] = warp_.phi(base_, x);
      if (!(phi_[id] > 0.0)) throw std::runtime_error("warp factor must be positive on the grid");
      const Vec2 g = warp_.grad(base_, x);
      const Sym2 h = warp_.hess(base_, x);
      gphi1_[id] = g.a;
      gphi2_[id] = g.b;
      hphi11_[id] = h.xx;
      hphi12_[id] = h.xy;
      hphi22_[id] = h.yy;
    }

  if (polar()) {
    f_.resize(n1_);
    inv_f_.resize(n1_);
    fp_over_f_.resize(n1_);
    gauss_.resize(n1_);
    for (int j = 0; j < n1_; ++j) {
      const double r = (j + 0.5) * h1_;
      f_[j] = base_.f(r);
      inv_f_[j] = 1.0 / f_[j];
      fp_over_f_[j] = base_.f_prime(r) / f_[j];
      gauss_[j] = base_.gauss_curvature({r, 0.0});
    }
  }
}

Vec2 GridGeometry::point(int j, int k) const {
  if (polar()) return {(j + 0.5) * h1_, k * h2_};
  return {j * h1_, base_.dim() == 1 ? 0.0 : k * h2_};
}

}  // namespace warpmcf
