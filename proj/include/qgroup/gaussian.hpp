#pragma once

#include <Eigen/Dense>

#include <complex>
#include <random>
#include <vector>

#include "json.hpp"

namespace qgroup {

using cd = std::complex<double>;

/// g(w) = exp(log_amplitude - pi w^T A w + 2 pi b^T w) on R^d, A complex symmetric.
/// log_amplitude with real part -inf is the zero function.
/// Integrals need Re A positive definite on the integrated block; other operations
/// accept degenerate A.
class Gaussian {
 public:
  Gaussian() = default;
  Gaussian(Eigen::MatrixXcd A, Eigen::VectorXcd b, cd log_amplitude);
  static Gaussian standard(int d);
  static Gaussian zero(int d);
  /// Re A = B B^T / d + (0.6 .. 1.2) I, Im A and b small; scale multiplies A.
  static Gaussian random(int d, std::mt19937_64& rng, double scale = 1.0);

  int dim() const { return static_cast<int>(b_.size()); }
  const Eigen::MatrixXcd& A() const { return A_; }
  const Eigen::VectorXcd& b() const { return b_; }
  cd log_amplitude() const { return logc_; }
  bool is_zero() const;

  cd log_value(const Eigen::VectorXd& w) const;
  cd operator()(const Eigen::VectorXd& w) const;
  /// allocation-free evaluation for quadrature loops
  cd eval(const double* w) const;
  /// complex gradient dg/dw
  Eigen::VectorXcd gradient(const Eigen::VectorXd& w) const;

  Gaussian conj() const;
  Gaussian operator*(const Gaussian& o) const;
  Gaussian scaled(cd factor) const;
  /// w_old = M w_new + s
  Gaussian substitute(const Eigen::MatrixXd& M, const Eigen::VectorXd& s) const;
  /// new coordinate k is old coordinate order[k]
  Gaussian permuted(const std::vector<int>& order) const;
  /// multiplies by e[w^T Q w + t.w + c], e[s] = exp(2 pi i s)
  Gaussian with_phase(const Eigen::MatrixXd& Q, const Eigen::VectorXd& t, double c = 0) const;
  /// integrates the listed coordinates out; remaining ones keep their order.
  /// Throws std::domain_error when Re A on that block is not positive definite.
  Gaussian integrate_out(const std::vector<int>& idx) const;
  /// int g(w) e[sign * u.v] du over u = w[idx]; v takes the place of u.
  Gaussian fourier(const std::vector<int>& idx, int sign) const;
  /// fixes w[idx] = values
  Gaussian restrict(const std::vector<int>& idx, const Eigen::VectorXd& values) const;
  cd integral() const;

  /// |g| is a real Gaussian centered at `center`; w = center + C t maps
  /// exp(-|t|^2) onto its shape. Throws when Re A is not positive definite.
  struct Envelope {
    Eigen::VectorXd center;
    Eigen::MatrixXd C;
  };
  Envelope envelope() const;

  nlohmann::json to_json() const;

 private:
  void symmetrize();
  Eigen::MatrixXcd A_;
  Eigen::VectorXcd b_;
  cd logc_ = 0;
};

/// log det with the branch continuous from real positive definite matrices
/// (sum of principal logs of the eigenvalues, all in the right half-plane).
cd log_det_right_half_plane(const Eigen::MatrixXcd& A);

}  // namespace qgroup
