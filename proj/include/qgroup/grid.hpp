#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <vector>

namespace qgroup {

/// Uniform axis with nodes center + (j - points/2) * spacing, j = 0..points-1.
struct GridAxis {
  double center = 0;
  double half_width = 1;
  int points = 16;

  double spacing() const { return 2 * half_width / points; }
  double node(int j) const { return center + (j - points / 2) * spacing(); }
};

class GridFunction {
 public:
  explicit GridFunction(std::vector<GridAxis> axes);
  static GridFunction sample(std::vector<GridAxis> axes,
                             const std::function<std::complex<double>(const Eigen::VectorXd&)>& f);

  int dims() const { return static_cast<int>(axes_.size()); }
  const std::vector<GridAxis>& axes() const { return axes_; }
  std::size_t size() const { return values_.size(); }
  std::vector<std::complex<double>>& values() { return values_; }
  const std::vector<std::complex<double>>& values() const { return values_; }
  Eigen::VectorXd point(std::size_t linear) const;
  double cell_volume() const;

  /// Samples of int f(u) e[sign u.v] du on the reciprocal grid (centered at 0,
  /// spacing 1 / (points * spacing)); every axis needs a power-of-two count >= 4.
  GridFunction fourier(int sign) const;

  double l1_norm() const;
  double max_abs() const;

 private:
  std::vector<GridAxis> axes_;
  std::vector<std::size_t> strides_;
  std::vector<std::complex<double>> values_;
};

}  // namespace qgroup
