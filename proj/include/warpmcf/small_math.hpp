#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace warpmcf {

// Plain value types for chart points and frame components. Dimension is at
// most 2 for the base and 3 for the ambient; unused entries stay zero.
struct Vec2 {
  double a = 0.0;
  double b = 0.0;
};

/// Symmetric 2x2 matrix in orthonormal-frame components.
struct Sym2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  double quad(double v1, double v2) const {  // v^T M v
    return xx * v1 * v1 + 2.0 * xy * v1 * v2 + yy * v2 * v2;
  }
  double trace() const { return xx + yy; }
};

/// Eigenvalue extremes of a Sym2 (closed form).
inline void sym2_eigs(const Sym2& m, double& lo, double& hi) {
  const double mean = 0.5 * (m.xx + m.yy);
  const double d = 0.5 * (m.xx - m.yy);
  const double rad = std::sqrt(d * d + m.xy * m.xy);
  lo = mean - rad;
  hi = mean + rad;
}

/// Largest |eigenvalue| of a symmetric 3x3 (Jacobi sweep; sizes here are tiny
/// and only constants are computed from it).
inline double sym3_opnorm(std::array<std::array<double, 3>, 3> m) {
  for (int sweep = 0; sweep < 32; ++sweep) {
    double off = std::abs(m[0][1]) + std::abs(m[0][2]) + std::abs(m[1][2]);
    if (off < 1e-15) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (std::abs(m[p][q]) < 1e-18) continue;
        const double theta = 0.5 * std::atan2(2.0 * m[p][q], m[q][q] - m[p][p]);
        const double c = std::cos(theta), s = std::sin(theta);
        std::array<std::array<double, 3>, 3> r = m;
        for (int k = 0; k < 3; ++k) {
          r[p][k] = c * m[p][k] - s * m[q][k];
          r[q][k] = s * m[p][k] + c * m[q][k];
        }
        m = r;
        for (int k = 0; k < 3; ++k) {
          r[k][p] = c * m[k][p] - s * m[k][q];
          r[k][q] = s * m[k][p] + c * m[k][q];
        }
        m = r;
      }
    }
  }
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(m[i][i]));
  return worst;
}

inline double sqr(double x) { return x * x; }

/// FNV-1a over raw bytes; used for snapshot payload checksums.
inline unsigned long long fnv1a(const void* data, std::size_t n) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  unsigned long long h = 1469598103934665603ull;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace warpmcf
