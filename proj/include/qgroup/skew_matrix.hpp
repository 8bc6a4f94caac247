#pragma once

#include <Eigen/Dense>

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgroup/polynomial.hpp"

namespace qgroup {

/// n x n matrix with entries in an arbitrary scalar ring, row-major.
/// Used for the structure matrix J with Rational, double or Polynomial entries.
template <class Scalar>
class Skew {
 public:
  Skew() = default;
  explicit Skew(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, Scalar(0)) {}

  int n() const { return n_; }
  const Scalar& operator()(int i, int k) const { return a_[idx(i, k)]; }
  Scalar& operator()(int i, int k) { return a_[idx(i, k)]; }

  /// (J v)_i = sum_k J_ik v_k
  template <class V>
  std::vector<V> apply(const std::vector<V>& v) const {
    std::vector<V> out(static_cast<std::size_t>(n_), V(0));
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k)
        if (!is_zero((*this)(i, k))) out[i] += V((*this)(i, k)) * v[k];
    return out;
  }
  /// (J^T v)_k = sum_i J_ik v_i
  template <class V>
  std::vector<V> apply_transpose(const std::vector<V>& v) const {
    std::vector<V> out(static_cast<std::size_t>(n_), V(0));
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k)
        if (!is_zero((*this)(i, k))) out[k] += V((*this)(i, k)) * v[i];
    return out;
  }

 private:
  static bool is_zero(const Scalar& s) {
    if constexpr (std::is_same_v<Scalar, Polynomial>) return s.is_zero();
    else return s == Scalar(0);
  }
  std::size_t idx(int i, int k) const { return static_cast<std::size_t>(i) * n_ + k; }
  int n_ = 0;
  std::vector<Scalar> a_;
};

/// The validated rational structure matrix J (J_ki = -J_ik, n >= 2).
class SkewMatrix {
 public:
  /// Throws std::invalid_argument when `entries` is not square skew-symmetric
  /// or n < 2 (n = 1 only with allow_degenerate, which forces J = 0).
  SkewMatrix(const std::vector<std::vector<Rational>>& entries, bool allow_degenerate = false);
  static SkewMatrix zero(int n);
  /// The 2x2 standard symplectic matrix ((0,1),(-1,0)).
  static SkewMatrix standard();
  static SkewMatrix random(int n, std::mt19937_64& rng, int num_bound = 4, int den_bound = 3);

  int n() const { return j_.n(); }
  const Rational& operator()(int i, int k) const { return j_(i, k); }
  bool is_zero() const;

  const Skew<Rational>& exact() const { return j_; }
  Skew<Polynomial> as_polynomial() const;
  Skew<double> as_double() const;
  Eigen::MatrixXd to_eigen() const;

  std::vector<std::vector<std::string>> to_strings() const;

 private:
  SkewMatrix() = default;
  Skew<Rational> j_;
};

/// J with independent indeterminates J_ik (i<k) and J_ki = -J_ik.
Skew<Polynomial> symbolic_skew(int n);

/// Loads {"n": int, "J": [[num-or-"a/b"]]}. Throws std::invalid_argument with a
/// descriptive message on malformed or non-skew input.
SkewMatrix load_skew_matrix(const std::string& path);
SkewMatrix parse_skew_matrix_json(const std::string& text);

}  // namespace qgroup
