#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qgroup {

using Rational = mpq_class;

/// Parses "p", "p/q" or a decimal literal ("0.25") into an exact rational.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& value);

/// Small random rational: numerator in [-num_bound, num_bound], denominator in [1, den_bound].
Rational random_rational(std::mt19937_64& rng, int num_bound = 5, int den_bound = 4);

// Variables are plain integer ids. Ids below kSymbolBase are positional
// coordinates (their meaning is fixed by whoever owns the polynomial, e.g. a
// LegSpace); ids at or above kSymbolBase are named symbols interned globally.
using Var = std::uint32_t;
inline constexpr Var kSymbolBase = 1u << 24;

/// Interns a named symbol and returns its id (thread-safe).
Var symbol(const std::string& name);
std::string symbol_name(Var v);
inline bool is_symbol(Var v) { return v >= kSymbolBase; }

/// Sparse multivariate polynomial with exact rational coefficients.
class Polynomial {
 public:
  // sorted by variable id, exponents > 0
  using Exponents = std::vector<std::pair<Var, unsigned>>;
  using Terms = std::map<Exponents, Rational>;

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT: implicit constant promotion is intended
  Polynomial(long c);             // NOLINT
  Polynomial(int c) : Polynomial(static_cast<long>(c)) {}  // NOLINT

  static Polynomial variable(Var v);
  static Polynomial monomial(const Exponents& e, const Rational& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  unsigned degree() const;
  std::set<Var> variables() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial operator-() const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial pow(unsigned e) const;
  Polynomial derivative(Var v) const;

  /// Replaces every variable found in `subs` by its polynomial; others are kept.
  Polynomial substitute(const std::unordered_map<Var, Polynomial>& subs) const;
  /// Renames variables via `rename` (identity when the callback returns its input).
  Polynomial rename(const std::function<Var(Var)>& rename) const;

  template <class T>
  T evaluate(const std::function<T(Var)>& value) const {
    T total = T(0);
    for (const auto& [exps, coeff] : terms_) {
      T term = T(coeff.get_d());
      for (const auto& [v, e] : exps) {
        const T x = value(v);
        for (unsigned k = 0; k < e; ++k) term *= x;
      }
      total += term;
    }
    return total;
  }
  Rational evaluate_exact(const std::function<Rational(Var)>& value) const;

  std::string to_string(const std::function<std::string(Var)>& namer = {}) const;

 private:
  void add_term(const Exponents& e, const Rational& c);
  Terms terms_;
};

/// Default variable naming: symbols by name, coordinates as c<i>.
std::string default_var_name(Var v);

}  // namespace qgroup
