#pragma once

#include <vector>

#include "warpmcf/graph_state.hpp"

namespace warpmcf {

/// Pointwise geometric quantities of the graph in the orthonormal frame:
/// gradient of u, v = sqrt(1 + phi^2 |grad u|^2), mean curvature H, second
/// fundamental form A_ij and |A|^2. The frame Hessian of u carries the chart
/// connection corrections on polar grids. On Dirichlet grids the frozen
/// outer ring holds no fields (entries stay zero) and is skipped by the sups.
struct GraphFields {
  int n1 = 0, n2 = 1;
  int interior_end = 0;  // rings [0, interior_end) carry fields
  std::vector<double> u1, u2;       // frame gradient
  std::vector<double> v;
  std::vector<double> H;
  std::vector<double> A11, A12, A22;
  std::vector<double> normA2;

  double sup_v = 1.0;
  double sup_abs_H = 0.0;
  double sup_normA2 = 0.0;
  int argmax_v = 0;

  /// Induced metric g_ij = delta_ij + phi^2 u_i u_j at a node (frame comps).
  Sym2 induced_metric(const GraphState& s, int idx) const;
  Sym2 inverse_metric(const GraphState& s, int idx) const;
};

GraphFields compute_graph_fields(const GraphState& s);

/// The individual operations (thin views over the full field pass).
void compute_gradient_v(const GraphState& s, std::vector<double>& u1, std::vector<double>& u2,
                        std::vector<double>& v);
std::vector<double> mean_curvature(const GraphState& s);
void second_fundamental_form(const GraphState& s, std::vector<double>& A11,
                             std::vector<double>& A12, std::vector<double>& A22,
                             std::vector<double>& normA2);

}  // namespace warpmcf
