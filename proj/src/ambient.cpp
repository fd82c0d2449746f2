#include "warpmcf/ambient.hpp"

#include <cmath>

namespace warpmcf {

namespace {

constexpr double kPoleMin = 1e-9;

void check_point(const BaseManifold& base, const Vec2& x) {
  if (base.polar() && x.a < kPoleMin)
    throw PoleExclusionError("chart point at the pole is excluded from evaluation");
}

/// Rhat in frame components. For n=2 with Gauss curvature K the only
/// independent component is Rhat_{1212} = K.
double base_riem(const BaseManifold& base, const Vec2& x, int i, int j, int k, int l) {
  if (base.dim() < 2) return 0.0;
  const double K = base.gauss_curvature(x);
  // K (delta_ik delta_jl - delta_il delta_jk)
  const double dik = (i == k), djl = (j == l), dil = (i == l), djk = (j == k);
  return K * (dik * djl - dil * djk);
}

}  // namespace

double ambient_sectional(const BaseManifold& base, const WarpFactor& warp, const Vec2& x,
                         PlaneKind plane, int i) {
  check_point(base, x);
  if (plane == PlaneKind::VerticalI0) {
    if (i < 1 || i > base.dim()) throw std::runtime_error("frame index out of range");
    const Sym2 T = warp.hess(base, x);
    const double phi = warp.phi(base, x);
    const double tii = (i == 1) ? T.xx : T.yy;
    return -tii / phi;
  }
  if (base.dim() < 2) throw std::runtime_error("horizontal plane needs a 2-d base");
  return base.gauss_curvature(x);
}

double ambient_sectional_max(const BaseManifold& base, const WarpFactor& warp, const Vec2& x) {
  double worst = ambient_sectional(base, warp, x, PlaneKind::VerticalI0, 1);
  if (base.dim() >= 2) {
    worst = std::max(worst, ambient_sectional(base, warp, x, PlaneKind::VerticalI0, 2));
    worst = std::max(worst, ambient_sectional(base, warp, x, PlaneKind::HorizontalIJ));
    // Vertical planes spanned by ebar_0 and an arbitrary unit horizontal
    // vector sweep the eigenvalues of -Hess(phi)/phi.
    double lo, hi;
    Sym2 T = warp.hess(base, x);
    const double phi = warp.phi(base, x);
    T.xx /= phi;
    T.xy /= phi;
    T.yy /= phi;
    sym2_eigs(T, lo, hi);
    worst = std::max(worst, -lo);
  }
  return worst;
}

Riem4 ambient_riemann(const BaseManifold& base, const WarpFactor& warp, const Vec2& x) {
  check_point(base, x);
  const int d = base.dim() + 1;
  const double phi = warp.phi(base, x);
  Sym2 T = warp.hess(base, x);  // Hess phi / phi
  T.xx /= phi;
  T.xy /= phi;
  T.yy /= phi;
  auto tcomp = [&](int i, int k) {
    if (i == 1 && k == 1) return T.xx;
    if (i == 2 && k == 2) return T.yy;
    return T.xy;
  };

  Riem4 R{};
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          double val = 0.0;
          const int zeros = (a == 0) + (b == 0) + (c == 0) + (e == 0);
          if (zeros == 0) {
            val = base_riem(base, x, a, b, c, e);
          } else if (zeros == 2) {
            // Reduce to R_{0i0k} = -T_ik using the pair/antisymmetries.
            if (a == 0 && c == 0 && b != 0 && e != 0) val = -tcomp(b, e);
            else if (a == 0 && e == 0 && b != 0 && c != 0) val = tcomp(b, c);
            else if (b == 0 && c == 0 && a != 0 && e != 0) val = tcomp(a, e);
            else if (b == 0 && e == 0 && a != 0 && c != 0) val = -tcomp(a, c);
            // (a==0 && b==0) or (c==0 && e==0) vanish by antisymmetry.
          }
          // One or three/four zeros: the R_{0ijk}-type blocks, all zero.
          R[a][b][c][e] = val;
        }
  return R;
}

double ambient_ricci_opnorm(const BaseManifold& base, const WarpFactor& warp, const Vec2& x) {
  check_point(base, x);
  const int n = base.dim();
  const double phi = warp.phi(base, x);
  const Sym2 Tphi = warp.hess(base, x);

  std::array<std::array<double, 3>, 3> ric{};
  // Ric(e0,e0) = -Lap phi / phi (trace over the n base directions).
  double lap = Tphi.xx + (n >= 2 ? Tphi.yy : 0.0);
  ric[0][0] = -lap / phi;
  // Ric(ei,ej) = Rhat_ic(ei,ej) - (Hess phi/phi)(ei,ej); on 2-d bases
  // Rhat_ic = K ghat, on 1-d bases it vanishes.
  const double K = (n >= 2) ? base.gauss_curvature(x) : 0.0;
  ric[1][1] = (n >= 2 ? K : 0.0) - Tphi.xx / phi;
  if (n >= 2) {
    ric[2][2] = K - Tphi.yy / phi;
    ric[1][2] = ric[2][1] = -Tphi.xy / phi;
  }
  return sym3_opnorm(ric);
}

double ambient_grad_riem_norm(const BaseManifold& base, const WarpFactor& warp, const Vec2& x,
                              double h_fd) {
  check_point(base, x);
  const int n = base.dim();
  const int d = n + 1;
  const Riem4 R0 = ambient_riemann(base, warp, x);

  // Frame Christoffels Ghat^k_{ji} = <nabla_{e_j} e_i, e_k> of the base chart.
  // Polar: nabla_{e2} e1 = (f'/f) e2, nabla_{e2} e2 = -(f'/f) e1; flat: 0.
  double fpf = 0.0;
  if (base.polar()) fpf = base.f_prime(x.a) / base.f(x.a);
  auto gamma = [&](int j, int i, int k) -> double {
    if (!base.polar()) return 0.0;
    if (j == 2 && i == 1 && k == 2) return fpf;
    if (j == 2 && i == 2 && k == 1) return -fpf;
    return 0.0;
  };

  const double phi = warp.phi(base, x);
  const Vec2 gphi = warp.grad(base, x);
  const std::array<double, 3> lphi = {0.0, gphi.a / phi, gphi.b / phi};  // phi_i / phi

  // Centered differences of the closed-form component fields along the chart
  // axes, scaled to frame directions (e2 = (1/f) d/dtheta on polar charts).
  std::array<Riem4, 2> Rp, Rm;
  std::array<double, 2> scale = {1.0, 1.0};
  if (base.polar()) scale[1] = 1.0 / base.f(x.a);
  for (int axis = 0; axis < n; ++axis) {
    Vec2 xp = x, xm = x;
    (axis == 0 ? xp.a : xp.b) += h_fd;
    (axis == 0 ? xm.a : xm.b) -= h_fd;
    Rp[axis] = ambient_riemann(base, warp, xp);
    Rm[axis] = ambient_riemann(base, warp, xm);
  }

  double sum2 = 0.0;
  for (int e = 0; e < d; ++e)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int f = 0; f < d; ++f) {
            double val = 0.0;
            if (e == 0) {
              // (nabla_{e0} R): slots with index 0 pick up +sum_m (phi_m/phi) R_m...,
              // horizontal slots pick up -(phi_i/phi) R_0...
              const int idx[4] = {a, b, c, f};
              for (int s = 0; s < 4; ++s) {
                int j[4] = {a, b, c, f};
                if (idx[s] == 0) {
                  for (int m = 1; m < d; ++m) {
                    j[s] = m;
                    val += lphi[m] * R0[j[0]][j[1]][j[2]][j[3]];
                  }
                } else {
                  const double w = lphi[idx[s]];
                  j[s] = 0;
                  val -= w * R0[j[0]][j[1]][j[2]][j[3]];
                }
              }
            } else {
              const int axis = e - 1;
              val = (Rp[axis][a][b][c][f] - Rm[axis][a][b][c][f]) / (2.0 * h_fd) * scale[axis];
              const int idx[4] = {a, b, c, f};
              for (int s = 0; s < 4; ++s) {
                if (idx[s] == 0) continue;  // nabla_{e_j} ebar_0 = 0
                for (int m = 1; m < d; ++m) {
                  const double g = gamma(e, idx[s], m);
                  if (g == 0.0) continue;
                  int j[4] = {a, b, c, f};
                  j[s] = m;
                  val -= g * R0[j[0]][j[1]][j[2]][j[3]];
                }
              }
            }
            sum2 += val * val;
          }
  return std::sqrt(sum2);
}

SliceDistance distance_to_slice(const BaseManifold& base, const WarpFactor& warp, const Vec2& x,
                                double u) {
  if (u == 0.0) return {0.0, true};
  const double phi = warp.phi(base, x);
  if (base.kind() == BaseKind::HyperbolicPolar && warp.kind() == WarpKind::CoshR) {
    // Hyperboloid model: sinh l = |p_1| = cosh(r) |sinh u|.
    return {std::asinh(phi * std::abs(std::sinh(u))), true};
  }
  return {phi * std::abs(u), false};
}

}  // namespace warpmcf
