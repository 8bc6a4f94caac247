#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>

namespace qgroup {

struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Weight exp(-t^2) on the real line.
QuadratureRule gauss_hermite(int order);
/// Weight 1 on [-1, 1].
QuadratureRule gauss_legendre(int order);
/// Gauss-Legendre mapped to [a, b].
QuadratureRule gauss_legendre(int order, double a, double b);

/// Tensor Gauss-Hermite over R^d after the change of variables u = center + C t:
/// int f(u) du ~ |det C| sum_t w(t) exp(|t|^2) f(center + C t).
/// With C chosen so that exp(-|t|^2) tracks |f| the sum converges quickly.
std::complex<double> integrate_hermite(const Eigen::VectorXd& center, const Eigen::MatrixXd& C, int order,
                                       const std::function<std::complex<double>(const Eigen::VectorXd&)>& f);

struct QuadratureEstimate {
  std::complex<double> value;
  double error_estimate = 0;  // |value(order) - value(order / 2)|
};

QuadratureEstimate integrate_hermite_checked(const Eigen::VectorXd& center, const Eigen::MatrixXd& C, int order,
                                             const std::function<std::complex<double>(const Eigen::VectorXd&)>& f);

}  // namespace qgroup
