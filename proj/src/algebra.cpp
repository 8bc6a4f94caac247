#include "qgroup/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace qgroup {

std::string basis_name(AlgebraTag tag, int n, int index) {
  const bool g = tag == AlgebraTag::g;
  if (index < n) return std::string(g ? "p" : "x") + std::to_string(index + 1);
  if (index < 2 * n) return std::string(g ? "q" : "y") + std::to_string(index - n + 1);
  return g ? "r" : "z";
}

template <AlgebraTag Tag>
std::string LieElement<Tag>::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int a = 0; a < dim(); ++a) {
    if (c[a] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (c[a] != 1) os << c[a].get_str() << "*";
    os << basis_name(Tag, n, a);
  }
  return first ? "0" : os.str();
}
template struct LieElement<AlgebraTag::g>;
template struct LieElement<AlgebraTag::h>;

namespace {

std::string scalar_text(const Rational& v) { return v.get_str(); }
std::string scalar_text(const Polynomial& v) { return "(" + v.to_string() + ")"; }

}  // namespace

template <class Scalar>
std::string Tensor<Scalar>::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  const bool wedge = is_antisymmetric();
  for (const auto& [idx, v] : coeffs_) {
    if (wedge && idx[0] > idx[1]) continue;
    if (!first) os << " + ";
    first = false;
    os << scalar_text(v) << "*";
    for (std::size_t s = 0; s < idx.size(); ++s) {
      if (s) os << (wedge ? "^" : "(x)");
      os << basis_name(tag_, n_, idx[s]);
    }
  }
  return os.str();
}
template class Tensor<Rational>;
template class Tensor<Polynomial>;

StructureConstants StructureConstants::for_g(const SkewMatrix& J) {
  const int n = J.n();
  StructureConstants sc(AlgebraTag::g, n);
  const int r = central_index(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (J(i, k) == 0) continue;
      sc.slot(first_index(n, i), r).emplace_back(second_index(n, k), J(i, k));
      sc.slot(r, first_index(n, i)).emplace_back(second_index(n, k), Rational(-J(i, k)));
    }
  return sc;
}

StructureConstants StructureConstants::for_h(int n) {
  StructureConstants sc(AlgebraTag::h, n);
  const int z = central_index(n);
  for (int i = 0; i < n; ++i) {
    sc.slot(first_index(n, i), second_index(n, i)).emplace_back(z, Rational(1));
    sc.slot(second_index(n, i), first_index(n, i)).emplace_back(z, Rational(-1));
  }
  return sc;
}

LieElementG bracket_g(const LieElementG& X, const LieElementG& Y, const SkewMatrix& J) {
  X.check(Y);
  const int n = X.n;
  if (n != J.n()) throw std::invalid_argument("bracket_g: dimension mismatch with J");
  LieElementG out(n);
  const int r = central_index(n);
  for (int i = 0; i < n; ++i) {
    const Rational w = X.c[first_index(n, i)] * Y.c[r] - Y.c[first_index(n, i)] * X.c[r];
    if (w == 0) continue;
    for (int k = 0; k < n; ++k) out.c[second_index(n, k)] += w * J(i, k);
  }
  return out;
}

LieElementH bracket_h(const LieElementH& X, const LieElementH& Y) {
  X.check(Y);
  const int n = X.n;
  LieElementH out(n);
  for (int i = 0; i < n; ++i)
    out.c[central_index(n)] += X.c[first_index(n, i)] * Y.c[second_index(n, i)] -
                               X.c[second_index(n, i)] * Y.c[first_index(n, i)];
  return out;
}

TensorElement classical_r_matrix(const SkewMatrix& J) {
  const int n = J.n();
  TensorElement r(AlgebraTag::h, n, 2);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) r.add({first_index(n, k), first_index(n, i)}, J(i, k));
  return r;
}

TensorElement cybe_residual(const TensorElement& r) {
  if (r.tag() != AlgebraTag::h || r.order() != 2) throw std::invalid_argument("cybe_residual expects an order-2 tensor over h");
  const auto sc = StructureConstants::for_h(r.n());
  TensorElement out(AlgebraTag::h, r.n(), 3);
  for (const auto& [ab, rab] : r.coefficients())
    for (const auto& [cd, rcd] : r.coefficients()) {
      const int a = ab[0], b = ab[1], c = cd[0], d = cd[1];
      const Rational w = rab * rcd;
      for (const auto& [k, v] : sc.bracket(a, c)) out.add({k, b, d}, w * v);  // [r12,r13]
      for (const auto& [k, v] : sc.bracket(b, c)) out.add({a, k, d}, w * v);  // [r12,r23]
      for (const auto& [k, v] : sc.bracket(b, d)) out.add({a, c, k}, w * v);  // [r13,r23]
    }
  return out;
}

TensorElement ad_tensor(const StructureConstants& sc, const std::vector<Rational>& X, const TensorElement& t) {
  TensorElement out(t.tag(), t.n(), t.order());
  for (const auto& [idx, v] : t.coefficients())
    for (int s = 0; s < t.order(); ++s)
      for (int a = 0; a < sc.dim(); ++a) {
        if (X[a] == 0) continue;
        for (const auto& [k, c] : sc.bracket(a, idx[s])) {
          auto j = idx;
          j[s] = k;
          out.add(j, X[a] * c * v);
        }
      }
  return out;
}

TensorElement cobracket_delta(const LieElementH& X, const SkewMatrix& J) {
  if (X.n != J.n()) throw std::invalid_argument("cobracket_delta: dimension mismatch");
  return ad_tensor(StructureConstants::for_h(X.n), X.c, classical_r_matrix(J));
}

TensorElement cobracket_delta_closed_form(const LieElementH& X, const SkewMatrix& J) {
  const int n = X.n;
  TensorElement out(AlgebraTag::h, n, 2);
  for (int k = 0; k < n; ++k) {
    const Rational& yk = X.c[second_index(n, k)];
    if (yk == 0) continue;
    for (int i = 0; i < n; ++i) out.add_wedge(first_index(n, i), central_index(n), yk * J(i, k));
  }
  return out;
}

LieElementG dual_bracket_from_delta(const LieElementG& mu, const LieElementG& nu, const SkewMatrix& J) {
  mu.check(nu);
  const int n = mu.n;
  LieElementG out(n);
  for (int a = 0; a < mu.dim(); ++a) {
    const auto d = cobracket_delta(LieElementH::basis(n, a), J);
    for (const auto& [idx, v] : d.coefficients()) out.c[a] += mu.c[idx[0]] * nu.c[idx[1]] * v;
  }
  return out;
}

TensorElement cobracket_theta(const LieElementG& mu) {
  const int n = mu.n;
  TensorElement out(AlgebraTag::g, n, 2);
  const Rational& r = mu.c[central_index(n)];
  for (int i = 0; i < n; ++i) out.add_wedge(first_index(n, i), second_index(n, i), r);
  return out;
}

TensorElement cobracket_theta_by_duality(const LieElementG& mu) {
  const int n = mu.n;
  const auto sc = StructureConstants::for_h(n);
  TensorElement out(AlgebraTag::g, n, 2);
  for (int a = 0; a < mu.dim(); ++a)
    for (int b = 0; b < mu.dim(); ++b)
      for (const auto& [k, v] : sc.bracket(a, b)) out.add({a, b}, mu.c[k] * v);
  return out;
}

Rational pair(const TensorElement& t, const LieElementH& a, const LieElementH& b) {
  Rational s = 0;
  for (const auto& [idx, v] : t.coefficients()) s += v * a.c[idx[0]] * b.c[idx[1]];
  return s;
}

namespace {

GroupElementG<Polynomial> to_poly(const GroupElementG<Rational>& g) {
  GroupElementG<Polynomial> out;
  for (const auto& v : g.p) out.p.emplace_back(v);
  for (const auto& v : g.q) out.q.emplace_back(v);
  out.r = Polynomial(g.r);
  return out;
}

}  // namespace

std::vector<std::vector<Rational>> adjoint_matrix(const GroupElementG<Rational>& g, const SkewMatrix& J) {
  const int n = J.n();
  const int dim = 2 * n + 1;
  std::vector<Polynomial> hc;
  for (int a = 0; a < dim; ++a) hc.push_back(Polynomial::variable(static_cast<Var>(a)));
  const auto Jp = J.as_polynomial();
  const auto gp = to_poly(g);
  const auto conj = multiply_g(multiply_g(gp, GroupElementG<Polynomial>::from_coords(hc), Jp), inverse_g(gp, Jp), Jp);
  const auto coords = conj.coords();
  std::unordered_map<Var, Polynomial> at_e;
  for (int a = 0; a < dim; ++a) at_e.emplace(static_cast<Var>(a), Polynomial());
  std::vector<std::vector<Rational>> A(dim, std::vector<Rational>(dim));
  for (int row = 0; row < dim; ++row)
    for (int col = 0; col < dim; ++col)
      A[row][col] = coords[row].derivative(static_cast<Var>(col)).substitute(at_e).constant_term();
  return A;
}

LieElementG adjoint_G(const GroupElementG<Rational>& g, const LieElementG& X, const SkewMatrix& J) {
  const auto A = adjoint_matrix(g, J);
  LieElementG out(X.n);
  for (int a = 0; a < X.dim(); ++a)
    for (int b = 0; b < X.dim(); ++b) out.c[a] += A[a][b] * X.c[b];
  return out;
}

std::vector<double> adjoint_finite_difference(const GroupElementG<double>& g, const std::vector<double>& X,
                                              const Skew<double>& J, double step) {
  const auto conj = [&](double s) {
    std::vector<double> h(X.size());
    for (std::size_t a = 0; a < X.size(); ++a) h[a] = s * X[a];
    return multiply_g(multiply_g(g, GroupElementG<double>::from_coords(h), J), inverse_g(g, J), J).coords();
  };
  const auto plus = conj(step);
  const auto minus = conj(-step);
  std::vector<double> out(X.size());
  for (std::size_t a = 0; a < X.size(); ++a) out[a] = (plus[a] - minus[a]) / (2.0 * step);
  return out;
}

TensorElement apply_matrix2(const std::vector<std::vector<Rational>>& A, const TensorElement& t) {
  TensorElement out(t.tag(), t.n(), 2);
  const int dim = static_cast<int>(A.size());
  for (const auto& [idx, v] : t.coefficients())
    for (int c = 0; c < dim; ++c) {
      if (A[c][idx[0]] == 0) continue;
      for (int d = 0; d < dim; ++d)
        if (A[d][idx[1]] != 0) out.add({c, d}, A[c][idx[0]] * A[d][idx[1]] * v);
    }
  return out;
}

TensorElement F_cocycle_residual(const GroupElementG<Rational>& g, const GroupElementG<Rational>& h,
                                 const SkewMatrix& J) {
  const auto& Je = J.exact();
  return cocycle_F(multiply_g(g, h, Je), Je) - cocycle_F(g, Je) - apply_matrix2(adjoint_matrix(g, J), cocycle_F(h, Je));
}

std::vector<DFResidualRow> dF_identity_vs_theta(const SkewMatrix& J) {
  const int n = J.n();
  const int dim = 2 * n + 1;
  std::vector<Polynomial> c;
  for (int a = 0; a < dim; ++a) c.push_back(Polynomial::variable(static_cast<Var>(a)));
  const auto F = cocycle_F(GroupElementG<Polynomial>::from_coords(c), J.as_polynomial());
  std::unordered_map<Var, Polynomial> at_e;
  for (int a = 0; a < dim; ++a) at_e.emplace(static_cast<Var>(a), Polynomial());
  std::vector<DFResidualRow> rows;
  for (int d = 0; d < dim; ++d) {
    TensorElement dF(AlgebraTag::g, n, 2);
    for (const auto& [idx, v] : F.coefficients())
      dF.add(idx, v.derivative(static_cast<Var>(d)).substitute(at_e).constant_term());
    rows.push_back({d, dF, cobracket_theta(LieElementG::basis(n, d))});
  }
  return rows;
}

std::vector<Var> group_coordinate_symbols(int n) {
  std::vector<Var> v;
  for (int i = 0; i < n; ++i) v.push_back(symbol("p" + std::to_string(i + 1)));
  for (int i = 0; i < n; ++i) v.push_back(symbol("q" + std::to_string(i + 1)));
  v.push_back(symbol("r"));
  return v;
}

Polynomial poisson_bracket_polynomials(const Polynomial& f, const Polynomial& g, const Skew<Polynomial>& J) {
  const int n = J.n();
  const auto vars = group_coordinate_symbols(n);
  const auto differential = [&](const Polynomial& h) {
    Covector<Polynomial> d;
    for (int i = 0; i < n; ++i) d.x.push_back(h.derivative(vars[first_index(n, i)]));
    for (int i = 0; i < n; ++i) d.y.push_back(h.derivative(vars[second_index(n, i)]));
    d.z = h.derivative(vars[central_index(n)]);
    return d;
  };
  return poisson_bracket_cov<Polynomial>(Polynomial::variable(vars[central_index(n)]), differential(f), differential(g), J);
}

Polynomial random_polynomial(int n, unsigned degree, std::mt19937_64& rng) {
  const auto vars = group_coordinate_symbols(n);
  // all monomials up to `degree`, built by repeated multiplication
  std::vector<Polynomial> monomials{Polynomial(1)};
  std::vector<Polynomial> layer{Polynomial(1)};
  for (unsigned d = 0; d < degree; ++d) {
    std::vector<Polynomial> next;
    for (const auto& m : layer)
      for (Var v : vars) {
        auto t = m * Polynomial::variable(v);
        if (std::find(next.begin(), next.end(), t) == next.end()) next.push_back(t);
      }
    monomials.insert(monomials.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  Polynomial out;
  for (const auto& m : monomials) out += Polynomial(random_rational(rng, 3, 2)) * m;
  return out;
}

}  // namespace qgroup
