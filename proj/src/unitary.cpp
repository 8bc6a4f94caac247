#include "qgroup/unitary.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qgroup {

int leg_width(LegKind kind, int n) {
  switch (kind) {
    case LegKind::xy:
    case LegKind::pq:
      return 2 * n;
    case LegKind::r:
      return 1;
    default:
      return 2 * n + 1;
  }
}

std::string leg_kind_name(LegKind kind) {
  switch (kind) {
    case LegKind::xy: return "xy";
    case LegKind::r: return "r";
    case LegKind::xyr: return "xyr";
    case LegKind::rxy: return "rxy";
    case LegKind::pq: return "pq";
    case LegKind::pqr: return "pqr";
  }
  return "?";
}

namespace {

bool is_pq(LegKind k) { return k == LegKind::pq || k == LegKind::pqr; }

// local offsets of the x (or p) block, y (or q) block and r inside a leg; -1 when absent
int local_x(LegKind k, int n) {
  (void)n;
  if (k == LegKind::r) return -1;
  return k == LegKind::rxy ? 1 : 0;
}
int local_y(LegKind k, int n) {
  if (k == LegKind::r) return -1;
  return k == LegKind::rxy ? n + 1 : n;
}
int local_r(LegKind k, int n) {
  switch (k) {
    case LegKind::r: return 0;
    case LegKind::rxy: return 0;
    case LegKind::xyr:
    case LegKind::pqr: return 2 * n;
    default: return -1;
  }
}

}  // namespace

LegSpace::LegSpace(int n, std::vector<LegKind> kinds) : n_(n), kinds_(std::move(kinds)) {
  if (n < 1) throw std::invalid_argument("LegSpace: n must be positive");
  for (auto k : kinds_) {
    offsets_.push_back(dim_);
    dim_ += leg_width(k, n);
  }
}

Var LegSpace::x(int leg, int i) const {
  const int o = local_x(kind(leg), n_);
  if (o < 0 || i < 0 || i >= n_) throw std::invalid_argument("leg has no x/p coordinate with that index");
  return static_cast<Var>(offset(leg) + o + i);
}

Var LegSpace::y(int leg, int i) const {
  const int o = local_y(kind(leg), n_);
  if (o < 0 || i < 0 || i >= n_) throw std::invalid_argument("leg has no y/q coordinate with that index");
  return static_cast<Var>(offset(leg) + o + i);
}

Var LegSpace::r(int leg) const {
  const int o = local_r(kind(leg), n_);
  if (o < 0) throw std::invalid_argument("leg has no r coordinate");
  return static_cast<Var>(offset(leg) + o);
}

std::string LegSpace::coordinate_name(Var v) const {
  if (is_symbol(v)) return symbol_name(v);
  const int c = static_cast<int>(v);
  for (int leg = legs() - 1; leg >= 0; --leg) {
    if (c < offset(leg)) continue;
    const int local = c - offset(leg);
    const LegKind k = kind(leg);
    if (local >= leg_width(k, n_)) break;
    std::string base;
    if (local == local_r(k, n_)) {
      base = "r";
    } else if (local >= local_y(k, n_)) {
      base = std::string(is_pq(k) ? "q" : "y") + std::to_string(local - local_y(k, n_) + 1);
    } else {
      base = std::string(is_pq(k) ? "p" : "x") + std::to_string(local - local_x(k, n_) + 1);
    }
    return base + std::string(static_cast<std::size_t>(leg), '\'');
  }
  return "c" + std::to_string(c);
}

std::string LegSpace::describe() const {
  std::string s = "[";
  for (int leg = 0; leg < legs(); ++leg) s += (leg ? "," : "") + leg_kind_name(kind(leg));
  return s + "] n=" + std::to_string(n_);
}

// ---------------------------------------------------------------------------

PolyMap PolyMap::identity(int dim) {
  std::vector<Polynomial> out;
  for (int i = 0; i < dim; ++i) out.push_back(var(static_cast<Var>(i)));
  return PolyMap(std::move(out));
}

Polynomial PolyMap::pull_back(const Polynomial& f) const {
  std::unordered_map<Var, Polynomial> subs;
  for (Var v : f.variables())
    if (!is_symbol(v)) subs.emplace(v, out_.at(v));
  return f.substitute(subs);
}

PolyMap PolyMap::then(const PolyMap& first, const PolyMap& second) {
  if (first.dim() != second.dim()) throw std::invalid_argument("PolyMap dimension mismatch");
  std::vector<Polynomial> out;
  out.reserve(second.out_.size());
  for (const auto& p : second.out_) out.push_back(first.pull_back(p));
  return PolyMap(std::move(out));
}

bool PolyMap::is_identity() const { return *this == identity(dim()); }

Rational PolyMap::jacobian_determinant_at(const std::function<Rational(Var)>& value) const {
  const int d = dim();
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m[i][j] = out_[i].derivative(static_cast<Var>(j)).evaluate_exact(value);
  Rational det = 1;
  for (int col = 0; col < d; ++col) {
    int piv = col;
    while (piv < d && m[piv][col] == 0) ++piv;
    if (piv == d) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (int row = col + 1; row < d; ++row) {
      if (m[row][col] == 0) continue;
      const Rational f = m[row][col] / m[col][col];
      for (int k = col; k < d; ++k) m[row][k] -= f * m[col][k];
    }
  }
  return det;
}

// ---------------------------------------------------------------------------

StructuredUnitary StructuredUnitary::identity(const LegSpace& space) {
  return {space, false, PolyMap::identity(space.dim()), PolyMap::identity(space.dim()), Polynomial(), "1"};
}

StructuredUnitary compose(const StructuredUnitary& A, const StructuredUnitary& B) {
  if (!(A.space == B.space)) throw std::invalid_argument("compose: operators live on different spaces");
  StructuredUnitary out{A.space, A.antilinear != B.antilinear, PolyMap::then(A.tau, B.tau),
                        PolyMap::then(B.tau_inverse, A.tau_inverse), Polynomial(), A.label + "*" + B.label};
  const Polynomial moved = A.tau.pull_back(B.phase);
  out.phase = A.antilinear ? A.phase - moved : A.phase + moved;
  return out;
}

StructuredUnitary compose(std::initializer_list<StructuredUnitary> ops) {
  if (ops.size() == 0) throw std::invalid_argument("compose: empty product");
  auto it = ops.begin();
  StructuredUnitary acc = *it++;
  for (; it != ops.end(); ++it) acc = compose(acc, *it);
  return acc;
}

StructuredUnitary adjoint(const StructuredUnitary& U) {
  const Polynomial moved = U.tau_inverse.pull_back(U.phase);
  return {U.space, U.antilinear, U.tau_inverse, U.tau, U.antilinear ? moved : -moved, U.label + "^*"};
}

namespace {

Polynomial rename_coords(const Polynomial& p, const std::vector<Var>& map) {
  return p.rename([&](Var v) { return is_symbol(v) ? v : map.at(v); });
}

PolyMap transport(const PolyMap& m, const std::vector<Var>& map, int target_dim) {
  PolyMap out = PolyMap::identity(target_dim);
  for (int v = 0; v < m.dim(); ++v) out[static_cast<int>(map[v])] = rename_coords(m[v], map);
  return out;
}

}  // namespace

StructuredUnitary embed_legs(const StructuredUnitary& U, const std::vector<int>& assignment, const LegSpace& total) {
  const auto& src = U.space;
  if (static_cast<int>(assignment.size()) != src.legs()) throw std::invalid_argument("embed_legs: wrong assignment size");
  if (src.n() != total.n()) throw std::invalid_argument("embed_legs: dimension mismatch");
  std::vector<bool> used(static_cast<std::size_t>(total.legs()), false);
  std::vector<Var> map(static_cast<std::size_t>(src.dim()));
  for (int leg = 0; leg < src.legs(); ++leg) {
    const int t = assignment[leg];
    if (t < 0 || t >= total.legs()) throw std::invalid_argument("embed_legs: leg index out of range");
    if (used[t]) throw std::invalid_argument("embed_legs: leg collision");
    used[t] = true;
    if (total.kind(t) != src.kind(leg)) throw std::invalid_argument("embed_legs: leg kind mismatch");
    for (int k = 0; k < leg_width(src.kind(leg), src.n()); ++k)
      map[src.offset(leg) + k] = static_cast<Var>(total.offset(t) + k);
  }
  std::string label = U.label + "_";
  for (int t : assignment) label += std::to_string(t + 1);
  return {total, U.antilinear, transport(U.tau, map, total.dim()), transport(U.tau_inverse, map, total.dim()),
          rename_coords(U.phase, map), label};
}

StructuredUnitary regroup(const StructuredUnitary& U, const LegSpace& target) {
  if (U.space.dim() != target.dim() || U.space.n() != target.n())
    throw std::invalid_argument("regroup: coordinate count mismatch");
  StructuredUnitary out = U;
  out.space = target;
  return out;
}

StructuredUnitary relabel(const StructuredUnitary& U, const LegSpace& target, const std::vector<Var>& perm) {
  if (static_cast<int>(perm.size()) != U.space.dim() || target.dim() != U.space.dim())
    throw std::invalid_argument("relabel: permutation size mismatch");
  return {target, U.antilinear, transport(U.tau, perm, target.dim()), transport(U.tau_inverse, perm, target.dim()),
          rename_coords(U.phase, perm), U.label};
}

LegSpace reordered_space(const LegSpace& source) {
  auto kinds = source.kinds();
  for (auto& k : kinds) {
    if (k == LegKind::rxy) k = LegKind::xyr;
    else if (k == LegKind::xyr) k = LegKind::rxy;
  }
  return LegSpace(source.n(), kinds);
}

std::vector<Var> leg_reorder_permutation(const LegSpace& source, const LegSpace& target) {
  if (source.legs() != target.legs() || source.n() != target.n())
    throw std::invalid_argument("leg_reorder_permutation: incompatible spaces");
  const int n = source.n();
  std::vector<Var> perm(static_cast<std::size_t>(source.dim()));
  for (int leg = 0; leg < source.legs(); ++leg) {
    const LegKind a = source.kind(leg), b = target.kind(leg);
    const bool same_coords = a == b || (a == LegKind::rxy && b == LegKind::xyr) || (a == LegKind::xyr && b == LegKind::rxy);
    if (!same_coords) throw std::invalid_argument("leg_reorder_permutation: leg kinds carry different coordinates");
    for (int i = 0; i < leg_width(a, n); ++i) perm[source.offset(leg) + i] = static_cast<Var>(target.offset(leg) + i);
    if (a == b) continue;
    for (int i = 0; i < n; ++i) {
      perm[source.x(leg, i)] = target.x(leg, i);
      perm[source.y(leg, i)] = target.y(leg, i);
    }
    perm[source.r(leg)] = target.r(leg);
  }
  return perm;
}

// ---------------------------------------------------------------------------

std::size_t EqualityReport::residual_terms() const {
  std::size_t k = tau_mismatch.size();
  if (!phase_match) k += std::max<std::size_t>(phase_difference.terms().size(), 1);
  if (!space_match || !linearity_match) ++k;
  return k;
}

std::string EqualityReport::describe(const LegSpace& space) const {
  if (equal()) {
    const Rational c = phase_difference.constant_term();
    return c == 0 ? "equal" : "equal (phase differs by integer " + c.get_str() + ")";
  }
  std::ostringstream os;
  if (!space_match) os << "spaces differ; ";
  if (!linearity_match) os << "linearity differs; ";
  if (!tau_mismatch.empty()) {
    os << "tau differs at";
    for (int v : tau_mismatch) os << " " << space.coordinate_name(static_cast<Var>(v));
    os << "; ";
  }
  if (!phase_match)
    os << "phase difference " << phase_difference.to_string([&](Var v) { return space.coordinate_name(v); });
  return os.str();
}

EqualityReport equals(const StructuredUnitary& A, const StructuredUnitary& B) {
  EqualityReport rep;
  rep.space_match = A.space == B.space;
  rep.linearity_match = A.antilinear == B.antilinear;
  if (A.tau.dim() != B.tau.dim()) {
    rep.space_match = false;
    return rep;
  }
  for (int i = 0; i < A.tau.dim(); ++i)
    if (A.tau[i] != B.tau[i]) rep.tau_mismatch.push_back(i);
  rep.phase_difference = A.phase - B.phase;
  rep.phase_match = rep.phase_difference.is_constant() && rep.phase_difference.constant_term().get_den() == 1;
  return rep;
}

EqualityReport pentagon_residual(const StructuredUnitary& W) {
  const auto& s = W.space;
  if (s.legs() != 2 || s.kind(0) != s.kind(1)) throw std::invalid_argument("pentagon_residual: W must act on two equal legs");
  const LegSpace three(s.n(), {s.kind(0), s.kind(0), s.kind(0)});
  const auto W12 = embed_legs(W, {0, 1}, three);
  const auto W13 = embed_legs(W, {0, 2}, three);
  const auto W23 = embed_legs(W, {1, 2}, three);
  return equals(compose({W12, W13, W23}), compose(W23, W12));
}

UnitarityReport check_unitary(const StructuredUnitary& U, std::mt19937_64& rng, int samples) {
  UnitarityReport rep;
  rep.inverse_exact = PolyMap::then(U.tau, U.tau_inverse).is_identity() && PolyMap::then(U.tau_inverse, U.tau).is_identity();
  const auto one = StructuredUnitary::identity(U.space);
  rep.unitary = equals(compose(U, adjoint(U)), one).equal() && equals(compose(adjoint(U), U), one).equal();
  rep.volume_preserving = true;
  for (int s = 0; s < samples; ++s) {
    std::unordered_map<Var, Rational> values;
    const auto value = [&](Var v) -> Rational {
      auto it = values.find(v);
      if (it != values.end()) return it->second;
      return values.emplace(v, random_rational(rng)).first->second;
    };
    const Rational det = U.tau.jacobian_determinant_at(value);
    if (det != 1 && det != -1) rep.volume_preserving = false;
  }
  return rep;
}

MultiplierSymbol conjugate_by(const StructuredUnitary& U, const MultiplierSymbol& M) {
  if (!(U.space == M.space)) throw std::invalid_argument("conjugate_by: space mismatch");
  MultiplierSymbol out = M;
  for (auto& a : out.argument) a = U.tau.pull_back(a);
  out.conjugated = M.conjugated != U.antilinear;
  return out;
}

nlohmann::json to_json(const StructuredUnitary& U) {
  const auto name = [&](Var v) { return U.space.coordinate_name(v); };
  nlohmann::json tau = nlohmann::json::array();
  for (int i = 0; i < U.tau.dim(); ++i)
    tau.push_back({{"coordinate", name(static_cast<Var>(i))}, {"maps_to", U.tau[i].to_string(name)}});
  return {{"label", U.label},
          {"space", U.space.describe()},
          {"antilinear", U.antilinear},
          {"tau", tau},
          {"phase", U.phase.to_string(name)}};
}

}  // namespace qgroup
