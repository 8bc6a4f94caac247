#pragma once

#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "qgroup/polynomial.hpp"

namespace qgroup {

// ---------------------------------------------------------------------------
// Leg-indexed coordinate spaces. Coordinates are positional variables
// 0..dim-1 (Var ids below kSymbolBase); named symbols (J entries,
// parameters) pass through every substitution untouched.

enum class LegKind { xy, r, xyr, rxy, pq, pqr };

int leg_width(LegKind kind, int n);
std::string leg_kind_name(LegKind kind);

class LegSpace {
 public:
  LegSpace(int n, std::vector<LegKind> kinds);

  int n() const { return n_; }
  int legs() const { return static_cast<int>(kinds_.size()); }
  int dim() const { return dim_; }
  LegKind kind(int leg) const { return kinds_.at(leg); }
  const std::vector<LegKind>& kinds() const { return kinds_; }
  int offset(int leg) const { return offsets_.at(leg); }

  // coordinate variables of a leg; throw if the leg kind lacks that coordinate
  Var x(int leg, int i) const;
  Var y(int leg, int i) const;
  Var p(int leg, int i) const { return x(leg, i); }
  Var q(int leg, int i) const { return y(leg, i); }
  Var r(int leg) const;

  /// e.g. x1, y2', r'' (primes count the leg index)
  std::string coordinate_name(Var v) const;
  std::string describe() const;

  friend bool operator==(const LegSpace& a, const LegSpace& b) { return a.n_ == b.n_ && a.kinds_ == b.kinds_; }

 private:
  int n_;
  std::vector<LegKind> kinds_;
  std::vector<int> offsets_;
  int dim_ = 0;
};

inline Polynomial var(Var v) { return Polynomial::variable(v); }

// ---------------------------------------------------------------------------
// Polynomial coordinate maps c -> (P_0(c), ..., P_{dim-1}(c)).

class PolyMap {
 public:
  PolyMap() = default;
  explicit PolyMap(std::vector<Polynomial> outputs) : out_(std::move(outputs)) {}
  static PolyMap identity(int dim);

  int dim() const { return static_cast<int>(out_.size()); }
  const Polynomial& operator[](int i) const { return out_.at(i); }
  Polynomial& operator[](int i) { return out_.at(i); }
  const std::vector<Polynomial>& outputs() const { return out_; }

  /// f(map(c))
  Polynomial pull_back(const Polynomial& f) const;
  /// c -> second(first(c))
  static PolyMap then(const PolyMap& first, const PolyMap& second);
  bool is_identity() const;

  /// Jacobian determinant evaluated at a rational point (symbols get values from `value`).
  Rational jacobian_determinant_at(const std::function<Rational(Var)>& value) const;

  friend bool operator==(const PolyMap& a, const PolyMap& b) { return a.out_ == b.out_; }

 private:
  std::vector<Polynomial> out_;
};

// ---------------------------------------------------------------------------
// (U xi)(c) = e[P(c)] * xi(tau(c)), xi conjugated first when antilinear.

struct StructuredUnitary {
  LegSpace space;
  bool antilinear = false;
  PolyMap tau;
  PolyMap tau_inverse;
  Polynomial phase;
  std::string label;

  static StructuredUnitary identity(const LegSpace& space);
};

/// The operator product AB: tau = tau_B o tau_A, P = P_A + s_A (P_B o tau_A).
StructuredUnitary compose(const StructuredUnitary& A, const StructuredUnitary& B);
StructuredUnitary compose(std::initializer_list<StructuredUnitary> ops);
/// U^* (= U^{-1}); for antilinear U the phase is not negated.
StructuredUnitary adjoint(const StructuredUnitary& U);

/// Places U (on a space of k legs) on legs `assignment[0..k-1]` of `total`.
StructuredUnitary embed_legs(const StructuredUnitary& U, const std::vector<int>& assignment, const LegSpace& total);
/// Same coordinates, different grouping into legs (dimensions must agree).
StructuredUnitary regroup(const StructuredUnitary& U, const LegSpace& target);
/// Transport along a coordinate relabelling: source coordinate v becomes target coordinate perm[v].
StructuredUnitary relabel(const StructuredUnitary& U, const LegSpace& target, const std::vector<Var>& perm);
/// Coordinate relabelling that converts every (r;x,y) leg to (x,y;r) and back.
std::vector<Var> leg_reorder_permutation(const LegSpace& source, const LegSpace& target);
LegSpace reordered_space(const LegSpace& source);

struct EqualityReport {
  bool space_match = true;
  bool linearity_match = true;
  std::vector<int> tau_mismatch;  // output coordinates whose polynomials differ
  Polynomial phase_difference;    // P_A - P_B
  bool phase_match = true;        // difference is an integer constant

  bool equal() const { return space_match && linearity_match && tau_mismatch.empty() && phase_match; }
  /// number of differing polynomial terms (0 when equal)
  std::size_t residual_terms() const;
  std::string describe(const LegSpace& space) const;
};

EqualityReport equals(const StructuredUnitary& A, const StructuredUnitary& B);

/// W12 W13 W23 versus W23 W12 for W on two legs of the same kind.
EqualityReport pentagon_residual(const StructuredUnitary& W);

struct UnitarityReport {
  bool inverse_exact = false;     // tau o tau^{-1} = id both ways
  bool unitary = false;           // U U^* = U^* U = identity in the calculus
  bool volume_preserving = false; // |det D tau| = 1 at sampled rational points
  bool ok() const { return inverse_exact && unitary && volume_preserving; }
};
UnitarityReport check_unitary(const StructuredUnitary& U, std::mt19937_64& rng, int samples = 3);

// ---------------------------------------------------------------------------
// Abstract multipliers (M xi)(c) = m(A(c)) xi(c) for an unspecified function m.

struct MultiplierSymbol {
  LegSpace space;
  std::string name;
  std::vector<Polynomial> argument;
  bool conjugated = false;
};

/// U M U^*: the argument map becomes A o tau_U.
MultiplierSymbol conjugate_by(const StructuredUnitary& U, const MultiplierSymbol& M);

nlohmann::json to_json(const StructuredUnitary& U);

}  // namespace qgroup
