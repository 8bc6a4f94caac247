#pragma once

#include <map>
#include <string>
#include <vector>

#include "qgroup/group.hpp"
#include "qgroup/polynomial.hpp"
#include "qgroup/skew_matrix.hpp"

namespace qgroup {

// Basis ordering for both algebras (2n+1 vectors):
//   g: p_1..p_n, q_1..q_n, r        h: x_1..x_n, y_1..y_n, z
// The dual pairing matches index to index (p<->x, q<->y, r<->z).
enum class AlgebraTag { g, h };

inline int first_index(int /*n*/, int i) { return i; }
inline int second_index(int n, int i) { return n + i; }
inline int central_index(int n) { return 2 * n; }
std::string basis_name(AlgebraTag tag, int n, int index);

template <AlgebraTag Tag>
struct LieElement {
  int n = 0;
  std::vector<Rational> c;  // 2n+1 coefficients

  LieElement() = default;
  explicit LieElement(int n_) : n(n_), c(static_cast<std::size_t>(2 * n_ + 1), Rational(0)) {}
  static LieElement basis(int n, int index) {
    LieElement e(n);
    e.c.at(index) = 1;
    return e;
  }
  static LieElement random(int n, std::mt19937_64& rng) {
    LieElement e(n);
    for (auto& v : e.c) v = random_rational(rng);
    return e;
  }
  int dim() const { return 2 * n + 1; }
  bool is_zero() const {
    for (const auto& v : c)
      if (v != 0) return false;
    return true;
  }
  LieElement& operator+=(const LieElement& o) {
    check(o);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
  }
  LieElement& operator-=(const LieElement& o) {
    check(o);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
  }
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(const Rational& s, LieElement a) {
    for (auto& v : a.c) v *= s;
    return a;
  }
  friend bool operator==(const LieElement& a, const LieElement& b) { return a.n == b.n && a.c == b.c; }
  void check(const LieElement& o) const {
    if (o.n != n) throw std::invalid_argument("Lie element dimension mismatch");
  }
  std::string to_string() const;
};

using LieElementG = LieElement<AlgebraTag::g>;
using LieElementH = LieElement<AlgebraTag::h>;

/// Structure constants [e_a, e_b] = sum_c C(a,b)_c e_c, stored sparsely.
class StructureConstants {
 public:
  using Sparse = std::vector<std::pair<int, Rational>>;
  static StructureConstants for_g(const SkewMatrix& J);
  static StructureConstants for_h(int n);

  AlgebraTag tag() const { return tag_; }
  int n() const { return n_; }
  int dim() const { return 2 * n_ + 1; }
  const Sparse& bracket(int a, int b) const { return table_[static_cast<std::size_t>(a) * dim() + b]; }

 private:
  StructureConstants(AlgebraTag tag, int n) : tag_(tag), n_(n), table_(static_cast<std::size_t>(dim()) * dim()) {}
  Sparse& slot(int a, int b) { return table_[static_cast<std::size_t>(a) * dim() + b]; }
  AlgebraTag tag_;
  int n_;
  std::vector<Sparse> table_;
};

template <AlgebraTag Tag>
LieElement<Tag> bracket(const StructureConstants& sc, const LieElement<Tag>& X, const LieElement<Tag>& Y) {
  X.check(Y);
  if (X.n != sc.n()) throw std::invalid_argument("bracket: dimension mismatch with structure constants");
  LieElement<Tag> out(X.n);
  for (int a = 0; a < X.dim(); ++a) {
    if (X.c[a] == 0) continue;
    for (int b = 0; b < X.dim(); ++b) {
      if (Y.c[b] == 0) continue;
      const Rational xy = X.c[a] * Y.c[b];
      for (const auto& [k, v] : sc.bracket(a, b)) out.c[k] += xy * v;
    }
  }
  return out;
}

/// [p_i, r] = sum_k J_ik q_k, all other basis brackets zero.
LieElementG bracket_g(const LieElementG& X, const LieElementG& Y, const SkewMatrix& J);
/// [x_i, y_j] = delta_ij z.
LieElementH bracket_h(const LieElementH& X, const LieElementH& Y);

template <AlgebraTag Tag>
LieElement<Tag> jacobi_residual(const StructureConstants& sc, const LieElement<Tag>& X, const LieElement<Tag>& Y,
                                const LieElement<Tag>& Z) {
  return bracket(sc, bracket(sc, X, Y), Z) + bracket(sc, bracket(sc, Y, Z), X) + bracket(sc, bracket(sc, Z, X), Y);
}

// ---------------------------------------------------------------------------
// Sparse tensors over the basis of g or h.

template <class Scalar = Rational>
class Tensor {
 public:
  using Index = std::vector<int>;

  Tensor(AlgebraTag tag, int n, int order) : tag_(tag), n_(n), order_(order) {
    if (order < 1) throw std::invalid_argument("tensor order must be >= 1");
  }

  AlgebraTag tag() const { return tag_; }
  int n() const { return n_; }
  int order() const { return order_; }
  const std::map<Index, Scalar>& coefficients() const { return coeffs_; }

  Scalar coefficient(const Index& idx) const {
    auto it = coeffs_.find(idx);
    return it == coeffs_.end() ? Scalar(0) : it->second;
  }
  void add(const Index& idx, const Scalar& v) {
    if (static_cast<int>(idx.size()) != order_) throw std::invalid_argument("tensor index has wrong length");
    for (int i : idx)
      if (i < 0 || i > 2 * n_) throw std::invalid_argument("tensor index out of range");
    if (scalar_is_zero(v)) return;
    auto [it, inserted] = coeffs_.try_emplace(idx, v);
    if (!inserted) {
      it->second += v;
      if (scalar_is_zero(it->second)) coeffs_.erase(it);
    }
  }
  /// adds s * (a(x)b - b(x)a)
  void add_wedge(int a, int b, const Scalar& s) {
    add({a, b}, s);
    add({b, a}, -s);
  }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_antisymmetric() const {
    if (order_ != 2) return false;
    for (const auto& [idx, v] : coeffs_)
      if (!scalar_is_zero(v + coefficient({idx[1], idx[0]}))) return false;
    return true;
  }
  /// transposes an order-2 tensor (a(x)b -> b(x)a)
  Tensor flipped() const {
    Tensor out(tag_, n_, order_);
    for (const auto& [idx, v] : coeffs_) out.add({idx[1], idx[0]}, v);
    return out;
  }

  Tensor& operator+=(const Tensor& o) {
    check(o);
    for (const auto& [idx, v] : o.coeffs_) add(idx, v);
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    check(o);
    for (const auto& [idx, v] : o.coeffs_) add(idx, -v);
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(const Scalar& s, const Tensor& t) {
    Tensor out(t.tag_, t.n_, t.order_);
    for (const auto& [idx, v] : t.coeffs_) out.add(idx, s * v);
    return out;
  }
  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.tag_ == b.tag_ && a.n_ == b.n_ && a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }

  /// Order-2 antisymmetric tensors printed as sum of c * a^b with a<b.
  std::string to_string() const;

 private:
  static bool scalar_is_zero(const Scalar& s) {
    if constexpr (std::is_same_v<Scalar, Polynomial>) return s.is_zero();
    else return s == Scalar(0);
  }
  void check(const Tensor& o) const {
    if (o.tag_ != tag_ || o.n_ != n_ || o.order_ != order_) throw std::invalid_argument("tensor shape mismatch");
  }
  AlgebraTag tag_;
  int n_;
  int order_;
  std::map<Index, Scalar> coeffs_;
};

using TensorElement = Tensor<Rational>;

/// r = sum_{i,k} J_ik x_k (x) x_i over h.
TensorElement classical_r_matrix(const SkewMatrix& J);
/// [r12,r13] + [r12,r23] + [r13,r23] using the bracket of h.
TensorElement cybe_residual(const TensorElement& r);

/// ad_X(t) = sum of [X, .] applied to each tensor slot.
TensorElement ad_tensor(const StructureConstants& sc, const std::vector<Rational>& X, const TensorElement& t);

/// delta(X) = ad_X(r).
TensorElement cobracket_delta(const LieElementH& X, const SkewMatrix& J);
/// delta(x_k) = 0, delta(y_k) = sum_i J_ik x_i ^ z, delta(z) = 0, extended linearly.
TensorElement cobracket_delta_closed_form(const LieElementH& X, const SkewMatrix& J);

/// <[mu,nu], X> = <mu (x) nu, delta(X)> for each basis X of h.
LieElementG dual_bracket_from_delta(const LieElementG& mu, const LieElementG& nu, const SkewMatrix& J);

/// theta(r) = sum_i p_i ^ q_i, theta(p_i) = theta(q_i) = 0.
TensorElement cobracket_theta(const LieElementG& mu);
/// <theta(mu), X (x) Y> computed from <mu, [X,Y]_h>.
TensorElement cobracket_theta_by_duality(const LieElementG& mu);

/// <t, a (x) b> for t over g and a, b in h (index-to-index pairing).
Rational pair(const TensorElement& t, const LieElementH& a, const LieElementH& b);

// ---------------------------------------------------------------------------
// Group 1-cocycle F and the adjoint action.

/// F(p,q,r) = r sum p_i ^ q_i - (r^2/2) sum J_ik q_k ^ q_i
template <class S>
Tensor<S> cocycle_F(const GroupElementG<S>& g, const Skew<S>& J) {
  const int n = g.n();
  Tensor<S> out(AlgebraTag::g, n, 2);
  for (int i = 0; i < n; ++i) out.add_wedge(first_index(n, i), second_index(n, i), g.r);
  const S c = -(g.r * g.r * scalar_cast<S>(Rational(1, 2)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (i != k) out.add_wedge(second_index(n, k), second_index(n, i), c * J(i, k));
  return out;
}

/// Matrix of Ad_g on g: column b holds Ad_g(e_b). Computed as the exact
/// derivative at the identity of h -> g h g^{-1}.
std::vector<std::vector<Rational>> adjoint_matrix(const GroupElementG<Rational>& g, const SkewMatrix& J);
LieElementG adjoint_G(const GroupElementG<Rational>& g, const LieElementG& X, const SkewMatrix& J);
/// Central finite difference of the conjugation map (double precision oracle).
std::vector<double> adjoint_finite_difference(const GroupElementG<double>& g, const std::vector<double>& X,
                                              const Skew<double>& J, double step);

/// (A (x) A) t for an order-2 tensor over g.
TensorElement apply_matrix2(const std::vector<std::vector<Rational>>& A, const TensorElement& t);

/// F(gh) - F(g) - (Ad_g (x) Ad_g) F(h)
TensorElement F_cocycle_residual(const GroupElementG<Rational>& g, const GroupElementG<Rational>& h,
                                 const SkewMatrix& J);

struct DFResidualRow {
  int direction;
  TensorElement derivative;
  TensorElement theta;
  bool match() const { return derivative == theta; }
};
/// Exact derivative of the polynomial F at e along each basis direction vs theta.
std::vector<DFResidualRow> dF_identity_vs_theta(const SkewMatrix& J);

// ---------------------------------------------------------------------------
// Poisson bracket kernel.

template <class S>
struct Covector {
  std::vector<S> x, y;
  S z = S(0);
};

/// {f,g}(p,q,r) = r(beta(x,y') - beta(x',y)) + (r^2/2) sum J_ik (y_k y'_i - y_i y'_k)
template <class S>
S poisson_bracket_cov(const S& r, const Covector<S>& df, const Covector<S>& dg, const Skew<S>& J) {
  const S half = scalar_cast<S>(Rational(1, 2));
  return r * (dot(df.x, dg.y) - dot(dg.x, df.y)) + r * r * half * (j_form(J, df.y, dg.y) - j_form(J, dg.y, df.y));
}

/// omega((x,y),(x',y'); r) = the bracket with z-components ignored.
template <class S>
S lie_cocycle_omega(const PlanePoint<S>& a, const PlanePoint<S>& b, const S& r, const Skew<S>& J) {
  return poisson_bracket_cov<S>(r, Covector<S>{a.first, a.second, S(0)}, Covector<S>{b.first, b.second, S(0)}, J);
}

/// Coordinates of G as named symbols p1..pn, q1..qn, r.
std::vector<Var> group_coordinate_symbols(int n);
/// Exact Poisson bracket of two polynomial functions on G.
Polynomial poisson_bracket_polynomials(const Polynomial& f, const Polynomial& g, const Skew<Polynomial>& J);
Polynomial random_polynomial(int n, unsigned degree, std::mt19937_64& rng);

}  // namespace qgroup
