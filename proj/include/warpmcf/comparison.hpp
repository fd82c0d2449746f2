#pragma once

#include <cmath>

namespace warpmcf {

/// Comparison functions s_lambda, c_lambda: the solution of s'' + lambda s = 0
/// with s(0)=0, s'(0)=1, and c = s'. They satisfy c^2 + lambda s^2 = 1.
struct ComparisonPair {
  double s;
  double c;
};

/// Evaluate (s_lambda(t), c_lambda(t)) for any sign of lambda.
/// lambda < 0: s = sinh(sqrt(-lambda) t)/sqrt(-lambda), c = cosh(...)
/// lambda = 0: s = t, c = 1
/// lambda > 0: s = sin(sqrt(lambda) t)/sqrt(lambda),  c = cos(...)
///
/// Near lambda = 0 the naive formulas lose accuracy (0/0-ish scaling), so
/// small |lambda| t^2 falls back to the series of both branches, which agree.
inline ComparisonPair comparison_fn(double lambda, double t) {
  const double q = lambda * t * t;
  if (std::abs(q) < 1e-8) {
    // s = t (1 - q/6 + q^2/120), c = 1 - q/2 + q^2/24
    const double s = t * (1.0 - q / 6.0 + q * q / 120.0);
    const double c = 1.0 - q / 2.0 + q * q / 24.0;
    return {s, c};
  }
  if (lambda < 0.0) {
    const double w = std::sqrt(-lambda);
    return {std::sinh(w * t) / w, std::cosh(w * t)};
  }
  const double w = std::sqrt(lambda);
  return {std::sin(w * t) / w, std::cos(w * t)};
}

inline double s_lambda(double lambda, double t) { return comparison_fn(lambda, t).s; }
inline double c_lambda(double lambda, double t) { return comparison_fn(lambda, t).c; }

}  // namespace warpmcf
