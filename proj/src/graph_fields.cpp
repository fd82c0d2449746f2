#include "warpmcf/graph_fields.hpp"

#include <cmath>

namespace warpmcf {

namespace {

/// Periodic / across-pole stencil reads. For polar grids a read at ring -1
/// lands on ring 0 at theta + pi (the staggered pole closure); ring n1 is
/// never requested because the outer ring is frozen and not evolved.
struct Stencil {
  const double* u;
  int n1, n2;
  bool polar;

  double operator()(int j, int k) const {
    if (polar) {
      if (j < 0) {
        j = -1 - j;
        k += n2 / 2;
      }
    } else {
      if (j < 0) j += n1;
      else if (j >= n1) j -= n1;
    }
    if (k < 0) k += n2;
    else if (k >= n2) k -= n2;
    return u[j * n2 + k];
  }
};

}  // namespace

Sym2 GraphFields::induced_metric(const GraphState& s, int idx) const {
  const double p2 = sqr(s.geo->phi()[idx]);
  return {1.0 + p2 * u1[idx] * u1[idx], p2 * u1[idx] * u2[idx], 1.0 + p2 * u2[idx] * u2[idx]};
}

Sym2 GraphFields::inverse_metric(const GraphState& s, int idx) const {
  const double p2 = sqr(s.geo->phi()[idx]);
  const double v2 = v[idx] * v[idx];
  return {1.0 - p2 * u1[idx] * u1[idx] / v2, -p2 * u1[idx] * u2[idx] / v2,
          1.0 - p2 * u2[idx] * u2[idx] / v2};
}

GraphFields compute_graph_fields(const GraphState& s) {
  const GridGeometry& g = *s.geo;
  const int n1 = g.n1(), n2 = g.n2(), N = g.nodes();
  const int dim = g.dim();
  const bool polar = g.polar();

  GraphFields F;
  F.n1 = n1;
  F.n2 = n2;
  F.interior_end = g.interior_end();
  F.u1.assign(N, 0.0);
  F.u2.assign(N, 0.0);
  F.v.assign(N, 1.0);
  F.H.assign(N, 0.0);
  F.A11.assign(N, 0.0);
  F.A12.assign(N, 0.0);
  F.A22.assign(N, 0.0);
  F.normA2.assign(N, 0.0);

  Stencil U{s.u.data(), n1, n2, polar};
  const double h1 = g.h1(), h2 = g.h2();
  const auto& phi = g.phi();
  const auto& gp1 = g.gphi1();
  const auto& gp2 = g.gphi2();

  for (int j = 0; j < F.interior_end; ++j) {
    const double inv_f = polar ? g.inv_f()[j] : 1.0;
    const double fpf = polar ? g.fp_over_f()[j] : 0.0;
    for (int k = 0; k < n2; ++k) {
      const int id = j * n2 + k;
      const double uc = s.u[id];
      const double up = U(j + 1, k), um = U(j - 1, k);
      const double u1 = (up - um) / (2.0 * h1);
      const double h11 = (up - 2.0 * uc + um) / (h1 * h1);

      double u2 = 0.0, h22 = 0.0, h12 = 0.0;
      if (dim == 2) {
        const double ur = U(j, k + 1), ul = U(j, k - 1);
        const double du2raw = (ur - ul) / (2.0 * h2);
        const double d22raw = (ur - 2.0 * uc + ul) / (h2 * h2);
        const double cross =
            (U(j + 1, k + 1) - U(j - 1, k + 1) - U(j + 1, k - 1) + U(j - 1, k - 1)) /
            (4.0 * h1 * h2);
        if (polar) {
          u2 = du2raw * inv_f;
          h22 = d22raw * inv_f * inv_f + fpf * u1;
          h12 = inv_f * (cross - fpf * du2raw);
        } else {
          u2 = du2raw;
          h22 = d22raw;
          h12 = cross;
        }
      }

      const double p = phi[id];
      const double p2 = p * p;
      const double grad2 = u1 * u1 + u2 * u2;
      const double v2 = 1.0 + p2 * grad2;
      const double v = std::sqrt(v2);
      const double dot = u1 * gp1[id] + u2 * gp2[id];  // <grad u, grad phi>

      // A e_i . e_j = (phi_i u_j + phi Hess_ij + phi^2 u_i u_j dot + u_i phi_j)/v
      const double a11 = (2.0 * gp1[id] * u1 + p * h11 + p2 * u1 * u1 * dot) / v;
      const double a12 =
          (gp1[id] * u2 + u1 * gp2[id] + p * h12 + p2 * u1 * u2 * dot) / v;
      const double a22 = (2.0 * gp2[id] * u2 + p * h22 + p2 * u2 * u2 * dot) / v;

      // H = (phi/v)(Lap u - (phi^2/v^2) Hess(grad u, grad u))
      //     + (1/v) dot (v^2+1)/v^2
      const double hessuu = u1 * u1 * h11 + 2.0 * u1 * u2 * h12 + u2 * u2 * h22;
      const double H =
          (p / v) * ((h11 + h22) - (p2 / v2) * hessuu) + dot * (v2 + 1.0) / (v * v2);

      // |A|^2 = tr((G^-1 A)^2) with G^-1 = I - phi^2 (grad u)(grad u)^T / v^2.
      const double q = p2 / v2;
      const double b11 = (1.0 - q * u1 * u1) * a11 - q * u1 * u2 * a12;
      const double b12 = (1.0 - q * u1 * u1) * a12 - q * u1 * u2 * a22;
      const double b21 = (1.0 - q * u2 * u2) * a12 - q * u1 * u2 * a11;
      const double b22 = (1.0 - q * u2 * u2) * a22 - q * u1 * u2 * a12;
      const double normA2 = b11 * b11 + b12 * b21 + b21 * b12 + b22 * b22;

      F.u1[id] = u1;
      F.u2[id] = u2;
      F.v[id] = v;
      F.H[id] = H;
      F.A11[id] = a11;
      F.A12[id] = a12;
      F.A22[id] = a22;
      F.normA2[id] = normA2;
      if (v > F.sup_v) {
        F.sup_v = v;
        F.argmax_v = id;
      }
      F.sup_abs_H = std::max(F.sup_abs_H, std::abs(H));
      F.sup_normA2 = std::max(F.sup_normA2, normA2);
    }
  }
  return F;
}

void compute_gradient_v(const GraphState& s, std::vector<double>& u1, std::vector<double>& u2,
                        std::vector<double>& v) {
  GraphFields F = compute_graph_fields(s);
  u1 = std::move(F.u1);
  u2 = std::move(F.u2);
  v = std::move(F.v);
}

std::vector<double> mean_curvature(const GraphState& s) { return compute_graph_fields(s).H; }

void second_fundamental_form(const GraphState& s, std::vector<double>& A11,
                             std::vector<double>& A12, std::vector<double>& A22,
                             std::vector<double>& normA2) {
  GraphFields F = compute_graph_fields(s);
  A11 = std::move(F.A11);
  A12 = std::move(F.A12);
  A22 = std::move(F.A22);
  normA2 = std::move(F.normA2);
}

}  // namespace warpmcf
