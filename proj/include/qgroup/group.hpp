#pragma once

#include <array>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "qgroup/polynomial.hpp"
#include "qgroup/skew_matrix.hpp"

namespace qgroup {

/// Converts an exact rational into the working scalar type.
template <class S>
S scalar_cast(const Rational& q) {
  if constexpr (std::is_same_v<S, Rational>) return q;
  else if constexpr (std::is_same_v<S, Polynomial>) return Polynomial(q);
  else return S(q.get_d());
}

template <class S>
S dot(const std::vector<S>& a, const std::vector<S>& b) {
  S s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// ---------------------------------------------------------------------------
// The group G = R^{2n+1} with (p,q,r)(p',q',r') = (p+p', q+q'+r' J^T p, r+r').

template <class S>
struct GroupElementG {
  std::vector<S> p, q;
  S r = S(0);

  static GroupElementG identity(int n) {
    return {std::vector<S>(n, S(0)), std::vector<S>(n, S(0)), S(0)};
  }
  int n() const { return static_cast<int>(p.size()); }
  /// coordinates in the order p_1..p_n, q_1..q_n, r
  std::vector<S> coords() const {
    std::vector<S> c = p;
    c.insert(c.end(), q.begin(), q.end());
    c.push_back(r);
    return c;
  }
  static GroupElementG from_coords(const std::vector<S>& c) {
    const int n = static_cast<int>(c.size() - 1) / 2;
    return {std::vector<S>(c.begin(), c.begin() + n), std::vector<S>(c.begin() + n, c.begin() + 2 * n), c.back()};
  }
  friend bool operator==(const GroupElementG& a, const GroupElementG& b) {
    return a.p == b.p && a.q == b.q && a.r == b.r;
  }
};

template <class S>
GroupElementG<S> multiply_g(const GroupElementG<S>& a, const GroupElementG<S>& b, const Skew<S>& J) {
  if (a.n() != b.n() || a.n() != J.n()) throw std::invalid_argument("multiply_g: dimension mismatch");
  GroupElementG<S> out = a;
  const auto shift = J.apply_transpose(a.p);
  for (int k = 0; k < a.n(); ++k) {
    out.p[k] += b.p[k];
    out.q[k] += b.q[k] + b.r * shift[k];
  }
  out.r += b.r;
  return out;
}

template <class S>
GroupElementG<S> inverse_g(const GroupElementG<S>& a, const Skew<S>& J) {
  GroupElementG<S> out = a;
  const auto shift = J.apply_transpose(a.p);
  for (int k = 0; k < a.n(); ++k) {
    out.p[k] = -a.p[k];
    out.q[k] = -a.q[k] + a.r * shift[k];
  }
  out.r = -a.r;
  return out;
}

// ---------------------------------------------------------------------------
// Heisenberg group H: (x,y,z)(x',y',z') = (x+x', y+y', z+z'+ x.y').

template <class S>
struct GroupElementH {
  std::vector<S> x, y;
  S z = S(0);
  static GroupElementH identity(int n) {
    return {std::vector<S>(n, S(0)), std::vector<S>(n, S(0)), S(0)};
  }
  int n() const { return static_cast<int>(x.size()); }
  friend bool operator==(const GroupElementH& a, const GroupElementH& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

template <class S>
GroupElementH<S> multiply_h(const GroupElementH<S>& a, const GroupElementH<S>& b) {
  if (a.n() != b.n()) throw std::invalid_argument("multiply_h: dimension mismatch");
  GroupElementH<S> out = a;
  for (int k = 0; k < a.n(); ++k) {
    out.x[k] += b.x[k];
    out.y[k] += b.y[k];
  }
  out.z += b.z + dot(a.x, b.y);
  return out;
}

template <class S>
GroupElementH<S> inverse_h(const GroupElementH<S>& a) {
  GroupElementH<S> out = a;
  for (int k = 0; k < a.n(); ++k) {
    out.x[k] = -a.x[k];
    out.y[k] = -a.y[k];
  }
  out.z = -a.z + dot(a.x, a.y);
  return out;
}

// ---------------------------------------------------------------------------
// Matched pair G = G1 G2 with G1 = {(0,0,r)}, G2 = {(p,q,0)}.

template <class S>
std::pair<GroupElementG<S>, GroupElementG<S>> decompose_matched(const GroupElementG<S>& a) {
  auto g1 = GroupElementG<S>::identity(a.n());
  g1.r = a.r;
  GroupElementG<S> g2{a.p, a.q, S(0)};
  return {g1, g2};
}

/// Element (p,q) of G2 or (x,y) of H/Z.
template <class S>
struct PlanePoint {
  std::vector<S> first, second;  // p|x and q|y
  friend bool operator==(const PlanePoint& a, const PlanePoint& b) {
    return a.first == b.first && a.second == b.second;
  }
  PlanePoint operator+(const PlanePoint& o) const {
    PlanePoint out = *this;
    for (std::size_t i = 0; i < first.size(); ++i) {
      out.first[i] += o.first[i];
      out.second[i] += o.second[i];
    }
    return out;
  }
  static PlanePoint zero(int n) { return {std::vector<S>(n, S(0)), std::vector<S>(n, S(0))}; }
};

/// alpha_r(p,q) = (p, q - r J^T p)  (action of G1 on G2)
template <class S>
PlanePoint<S> action_alpha_pq(const S& r, const PlanePoint<S>& pq, const Skew<S>& J) {
  PlanePoint<S> out = pq;
  const auto shift = J.apply_transpose(pq.first);
  for (std::size_t k = 0; k < shift.size(); ++k) out.second[k] -= r * shift[k];
  return out;
}

/// alpha_r(x,y) = (x + r J y, y)  (action of G1 on H/Z)
template <class S>
PlanePoint<S> action_alpha_xy(const S& r, const PlanePoint<S>& xy, const Skew<S>& J) {
  PlanePoint<S> out = xy;
  const auto shift = J.apply(xy.second);
  for (std::size_t i = 0; i < shift.size(); ++i) out.first[i] += r * shift[i];
  return out;
}

/// gamma is the trivial action of G2 (or H/Z) on G1.
template <class S>
S action_gamma(const PlanePoint<S>& /*pq*/, const S& r) {
  return r;
}

// ---------------------------------------------------------------------------
// Phases. A PhasePolynomial P stands for the unimodular function e[P] = exp(2 pi i P).

struct PhasePolynomial {
  Polynomial exponent;

  std::complex<double> evaluate(const std::function<double(Var)>& value) const {
    const double t = exponent.evaluate<double>(value);
    return std::polar(1.0, 2.0 * std::numbers::pi * t);
  }
};

/// e[P1] = e[P2] as functions iff P1 - P2 is an integer constant
/// (non-constant integer-valued differences are not recognised).
inline bool same_phase(const PhasePolynomial& a, const PhasePolynomial& b) {
  const Polynomial d = a.exponent - b.exponent;
  return d.is_constant() && d.constant_term().get_den() == 1;
}

/// sum_{i,k} J_ik a_k b_i  (= b . J a)
template <class S>
S j_form(const Skew<S>& J, const std::vector<S>& a, const std::vector<S>& b) {
  return dot(b, J.apply(a));
}

/// Exponent of sigma^r_hbar(a, b) = ebar[hbar r beta(x_a, y_b)] ebar[(hbar r^2/2) sum J_ik y_a,k y_b,i].
template <class S>
S sigma_exponent(const Skew<S>& J, const S& hbar, const S& r, const PlanePoint<S>& a, const PlanePoint<S>& b) {
  const S half = scalar_cast<S>(Rational(1, 2));
  return -(hbar * r * dot(a.first, b.second)) - hbar * r * r * half * j_form(J, a.second, b.second);
}

struct CocycleParams {
  double r = 0.0;
  double hbar = 1.0;
};

std::complex<double> sigma_phase(const CocycleParams& params, const PlanePoint<double>& a, const PlanePoint<double>& b,
                                 const Skew<double>& J);

/// sigma(hh',h'') sigma(h,h') - sigma(h,h'h'') sigma(h',h'') evaluated numerically.
std::complex<double> sigma_cocycle_residual(const CocycleParams& params, const PlanePoint<double>& h,
                                            const PlanePoint<double>& h1, const PlanePoint<double>& h2,
                                            const Skew<double>& J);

/// Symbolic points for exact identities: coordinates named <tag>x1.., <tag>y1..
PlanePoint<Polynomial> symbolic_plane_point(int n, const std::string& tag);

/// Exponent difference of the cocycle identity with symbolic r, hbar and points;
/// the identity holds iff this polynomial is zero.
Polynomial sigma_cocycle_exponent_residual(const Skew<Polynomial>& J);
/// Normalization sigma(h,0) = 1 = sigma(0,h): returns both exponents.
std::pair<Polynomial, Polynomial> sigma_normalization_exponents(const Skew<Polynomial>& J);

/// Exponent of the matching cocycle V(r;(x,y),(x',y')) = ebar[(r^2/2) sum J_ik y'_k y_i] ebar[r beta(x',y)].
template <class S>
S matching_v_exponent(const Skew<S>& J, const S& r, const PlanePoint<S>& h, const PlanePoint<S>& h1) {
  const S half = scalar_cast<S>(Rational(1, 2));
  return -(r * r * half * j_form(J, h1.second, h.second)) - r * dot(h1.first, h.second);
}

struct MatchingReport {
  // residual exponents of the three cocycle-matching conditions (U == 1)
  std::array<Polynomial, 3> residuals;
  // V(r;h,h') versus sigma^r(h',h)
  Polynomial v_vs_sigma;
  bool all_zero() const {
    for (const auto& p : residuals)
      if (!p.is_zero()) return false;
    return v_vs_sigma.is_zero();
  }
};

MatchingReport matching_cocycles_residual(const Skew<Polynomial>& J);

}  // namespace qgroup
