#include "qgroup/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace qgroup {

namespace {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights mu0 * v_0^2.
QuadratureRule golub_welsch(int order, const std::function<double(int)>& offdiag, double mu0) {
  if (order < 1) throw std::invalid_argument("quadrature order must be positive");
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) T(k, k - 1) = T(k - 1, k) = offdiag(k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  QuadratureRule rule{es.eigenvalues(), Eigen::VectorXd(order)};
  for (int i = 0; i < order; ++i) rule.weights(i) = mu0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
  return rule;
}

}  // namespace

QuadratureRule gauss_hermite(int order) {
  return golub_welsch(order, [](int k) { return std::sqrt(k / 2.0); }, std::sqrt(M_PI));
}

QuadratureRule gauss_legendre(int order) {
  return golub_welsch(order, [](int k) { return k / std::sqrt(4.0 * k * k - 1.0); }, 2.0);
}

QuadratureRule gauss_legendre(int order, double a, double b) {
  auto rule = gauss_legendre(order);
  const double half = (b - a) / 2, mid = (a + b) / 2;
  rule.nodes = (rule.nodes.array() * half + mid).matrix();
  rule.weights *= half;
  return rule;
}

std::complex<double> integrate_hermite(const Eigen::VectorXd& center, const Eigen::MatrixXd& C, int order,
                                       const std::function<std::complex<double>(const Eigen::VectorXd&)>& f) {
  const int d = static_cast<int>(center.size());
  const auto rule = gauss_hermite(order);
  Eigen::VectorXd w(order);
  for (int i = 0; i < order; ++i) w(i) = rule.weights(i) * std::exp(rule.nodes(i) * rule.nodes(i));

  std::vector<int> idx(d, 0);
  Eigen::VectorXd t(d);
  std::complex<double> sum = 0;
  for (;;) {
    double weight = 1;
    for (int k = 0; k < d; ++k) {
      t(k) = rule.nodes(idx[k]);
      weight *= w(idx[k]);
    }
    sum += weight * f(center + C * t);
    int k = 0;
    while (k < d && ++idx[k] == order) idx[k++] = 0;
    if (k == d) break;
  }
  return sum * std::abs(C.determinant());
}

QuadratureEstimate integrate_hermite_checked(const Eigen::VectorXd& center, const Eigen::MatrixXd& C, int order,
                                             const std::function<std::complex<double>(const Eigen::VectorXd&)>& f) {
  const auto full = integrate_hermite(center, C, order, f);
  const auto half = integrate_hermite(center, C, std::max(1, order / 2), f);
  return {full, std::abs(full - half)};
}

}  // namespace qgroup
