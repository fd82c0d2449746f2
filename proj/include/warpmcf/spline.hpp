#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace warpmcf {

/// Natural cubic spline through strictly increasing abscissae. Used for the
/// tabulated radial catalog entries (two-column CSV, cubic-interpolated).
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double eval(double t) const;
  double deriv(double t) const;
  double deriv2(double t) const;

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  bool empty() const { return x_.empty(); }
  const std::vector<double>& knots_x() const { return x_; }
  const std::vector<double>& knots_y() const { return y_; }

 private:
  int segment(double t) const;
  std::vector<double> x_, y_, m_;  // m_ = second derivatives at knots
};

/// Read a two-column CSV (abscissa, value). '#' comment lines and blank lines
/// are skipped. Throws std::runtime_error with the path on malformed input.
CubicSpline load_radial_csv(const std::string& path);

}  // namespace warpmcf
