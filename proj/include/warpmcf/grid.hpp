#pragma once

#include <memory>
#include <vector>

#include "warpmcf/base_manifold.hpp"
#include "warpmcf/warp_factor.hpp"

namespace warpmcf {

enum class BoundaryPolicy { Periodic, DirichletFrozen };

/// Uniform structured grid over the chart plus per-node geometry tables.
///
/// Flat periodic charts: node (j,k) at (j*h1, k*h2), every node interior.
/// Polar charts: rings r_j = (j+1/2) h1 (staggered so no node sits on the
/// pole), angles theta_k = k*h2; the outermost ring holds frozen Dirichlet
/// values and is not evolved. Reads across the pole map to (r_0, theta+pi).
class GridGeometry {
 public:
  GridGeometry(BaseManifold base, WarpFactor warp, int n1, int n2);

  const BaseManifold& base() const { return base_; }
  const WarpFactor& warp() const { return warp_; }

  int dim() const { return base_.dim(); }
  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int nodes() const { return n1_ * n2_; }
  double h1() const { return h1_; }
  double h2() const { return h2_; }
  bool polar() const { return base_.polar(); }
  BoundaryPolicy boundary() const {
    return polar() ? BoundaryPolicy::DirichletFrozen : BoundaryPolicy::Periodic;
  }

  int index(int j, int k) const { return j * n2_ + k; }
  Vec2 point(int j, int k) const;
  /// Last evolving ring (polar); on periodic charts every ring evolves.
  int interior_end() const { return polar() ? n1_ - 1 : n1_; }
  bool interior(int j) const { return j < interior_end(); }

  // Per-node warp tables (frame components).
  const std::vector<double>& phi() const { return phi_; }
  const std::vector<double>& gphi1() const { return gphi1_; }
  const std::vector<double>& gphi2() const { return gphi2_; }
  const std::vector<double>& hphi11() const { return hphi11_; }
  const std::vector<double>& hphi12() const { return hphi12_; }
  const std::vector<double>& hphi22() const { return hphi22_; }

  // Per-ring chart tables (polar only; empty otherwise).
  const std::vector<double>& f() const { return f_; }
  const std::vector<double>& inv_f() const { return inv_f_; }
  const std::vector<double>& fp_over_f() const { return fp_over_f_; }
  const std::vector<double>& gauss() const { return gauss_; }
  double gauss_at(int j) const { return polar() ? gauss_[j] : 0.0; }

 private:
  BaseManifold base_;
  WarpFactor warp_;
  int n1_ = 0, n2_ = 1;
  double h1_ = 0.0, h2_ = 0.0;
  std::vector<double> phi_, gphi1_, gphi2_, hphi11_, hphi12_, hphi22_;
  std::vector<double> f_, inv_f_, fp_over_f_, gauss_;
};

using GeometryPtr = std::shared_ptr<const GridGeometry>;

}  // namespace warpmcf
