#include "qgroup/catalog.hpp"

#include <stdexcept>

#include "qgroup/group.hpp"

namespace qgroup {

namespace {

using Vec = std::vector<Polynomial>;

Vec xs(const LegSpace& s, int leg) {
  Vec v;
  for (int i = 0; i < s.n(); ++i) v.push_back(var(s.x(leg, i)));
  return v;
}
Vec ys(const LegSpace& s, int leg) {
  Vec v;
  for (int i = 0; i < s.n(); ++i) v.push_back(var(s.y(leg, i)));
  return v;
}
Polynomial rv(const LegSpace& s, int leg) { return var(s.r(leg)); }

Vec add(const Vec& a, const Vec& b) {
  Vec o = a;
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += b[i];
  return o;
}
Vec sub(const Vec& a, const Vec& b) {
  Vec o = a;
  for (std::size_t i = 0; i < o.size(); ++i) o[i] -= b[i];
  return o;
}
Vec scale(const Polynomial& c, const Vec& a) {
  Vec o = a;
  for (auto& v : o) v = c * v;
  return o;
}

const Polynomial kHalf(Rational(1, 2));

/// Builder for tau: starts as the identity and overwrites coordinate blocks.
struct MapBuilder {
  const LegSpace& s;
  PolyMap m;
  explicit MapBuilder(const LegSpace& space) : s(space), m(PolyMap::identity(space.dim())) {}
  MapBuilder& x(int leg, const Vec& v) {
    for (int i = 0; i < s.n(); ++i) m[s.x(leg, i)] = v[i];
    return *this;
  }
  MapBuilder& y(int leg, const Vec& v) {
    for (int i = 0; i < s.n(); ++i) m[s.y(leg, i)] = v[i];
    return *this;
  }
  MapBuilder& r(int leg, const Polynomial& v) {
    m[s.r(leg)] = v;
    return *this;
  }
};

StructuredUnitary make(const LegSpace& s, const PolyMap& tau, const PolyMap& inv, const Polynomial& phase,
                       const std::string& label, bool antilinear = false) {
  return {s, antilinear, tau, inv, phase, label};
}

StructuredUnitary flip(const LegSpace& s, const std::string& label) {
  PolyMap t = PolyMap::identity(s.dim());
  const int w = leg_width(s.kind(0), s.n());
  for (int i = 0; i < w; ++i) {
    t[s.offset(0) + i] = var(static_cast<Var>(s.offset(1) + i));
    t[s.offset(1) + i] = var(static_cast<Var>(s.offset(0) + i));
  }
  return make(s, t, t, Polynomial(), label);
}

StructuredUnitary build_K(const CatalogParams& P) {
  const LegSpace s(P.n(), {LegKind::rxy});
  const auto r = rv(s, 0);
  const Vec shift = P.k_without_shear ? scale(Polynomial(), xs(s, 0)) : scale(r, P.J.apply(ys(s, 0)));
  MapBuilder b(s);
  b.r(0, -r).x(0, add(xs(s, 0), shift));
  // involutive: the same map is its own inverse
  return make(s, b.m, b.m, Polynomial(), P.k_without_shear ? "K(no shear)" : "K", true);
}

StructuredUnitary build_W_hat(const CatalogParams& P, bool from_cocycles) {
  const LegSpace s(P.n(), {LegKind::rxy, LegKind::rxy});
  const auto& J = P.J;
  const auto r = rv(s, 0), r1 = rv(s, 1);
  const Vec x = xs(s, 0), y = ys(s, 0), x1 = xs(s, 1), y1 = ys(s, 1);
  MapBuilder t(s);
  t.x(0, add(add(x, x1), scale(r1 - r, J.apply(y1)))).y(0, add(y, y1)).r(1, r1 - r);
  MapBuilder inv(s);
  inv.x(0, sub(sub(x, x1), scale(r1, J.apply(y1)))).y(0, sub(y, y1)).r(1, r1 + r);
  Polynomial phase;
  if (from_cocycles) {
    const auto moved = action_alpha_xy<Polynomial>(r1 - r, PlanePoint<Polynomial>{x1, y1}, J);
    phase = matching_v_exponent<Polynomial>(J, r, PlanePoint<Polynomial>{x, y}, moved);
  } else {
    const Polynomial yJy1 = j_form(J, y1, y);
    phase = kHalf * r * r * yJy1 - r * r1 * yJy1 - r * dot(x1, y);
  }
  return make(s, t.m, inv.m, phase, from_cocycles ? "W_hat(cocycles)" : "W_hat");
}

StructuredUnitary build_L(const CatalogParams& P) {
  const LegSpace s(P.n(), {LegKind::xyr});
  const int n = P.n();
  if (static_cast<int>(P.xt.size()) != n || static_cast<int>(P.yt.size()) != n)
    throw std::invalid_argument("L needs shift parameters xt, yt of length n");
  const auto r = rv(s, 0);
  const Vec x = xs(s, 0), y = ys(s, 0);
  MapBuilder t(s), inv(s);
  t.x(0, sub(x, P.xt)).y(0, sub(y, P.yt));
  inv.x(0, add(x, P.xt)).y(0, add(y, P.yt));
  const Polynomial phase = -(r * P.zt) + sigma_exponent<Polynomial>(P.J, Polynomial(1), r, PlanePoint<Polynomial>{P.xt, P.yt},
                                                                     PlanePoint<Polynomial>{sub(x, P.xt), sub(y, P.yt)});
  return make(s, t.m, inv.m, phase, "L");
}

StructuredUnitary build_Delta_L_display(const CatalogParams& P) {
  const LegSpace s(P.n(), {LegKind::xyr, LegKind::xyr});
  const auto& J = P.J;
  const auto r = rv(s, 0), r1 = rv(s, 1);
  const Vec x = xs(s, 0), y = ys(s, 0), x1 = xs(s, 1), y1 = ys(s, 1);
  const Vec& xt = P.xt;
  const Vec& yt = P.yt;
  const Vec Jyt = J.apply(yt);
  MapBuilder t(s), inv(s);
  t.x(0, sub(sub(x, xt), scale(r1, Jyt))).y(0, sub(y, yt)).x(1, sub(x1, xt)).y(1, sub(y1, yt));
  inv.x(0, add(add(x, xt), scale(r1, Jyt))).y(0, add(y, yt)).x(1, add(x1, xt)).y(1, add(y1, yt));
  const Polynomial a = j_form(J, yt, sub(y, yt));
  const Polynomial b = j_form(J, yt, sub(y1, yt));
  const Polynomial phase = -((r + r1) * P.zt) - kHalf * r * r * a - r * dot(xt, sub(y, yt)) - kHalf * r1 * r1 * b -
                           r1 * dot(xt, sub(y1, yt)) - r * r1 * a;
  return make(s, t.m, inv.m, phase, "Delta(L) display");
}

StructuredUnitary build_theta(const CatalogParams& P) {
  const LegSpace s(P.n(), {LegKind::xyr, LegKind::xyr});
  const auto r1 = rv(s, 1);
  const Vec x = xs(s, 0), y = ys(s, 0), y1 = ys(s, 1);
  const Polynomial phase = -(r1 * dot(x, y1)) - kHalf * r1 * r1 * j_form(P.J, y, y1) + P.theta_perturbation;
  const auto id = PolyMap::identity(s.dim());
  return make(s, id, id, phase, P.theta_perturbation.is_zero() ? "Theta" : "Theta(perturbed)");
}

StructuredUnitary build_v_theta_display(const CatalogParams& P) {
  const LegSpace s(P.n(), {LegKind::xyr, LegKind::xyr});
  const auto& J = P.J;
  const auto r = rv(s, 0), r1 = rv(s, 1);
  const Vec x = xs(s, 0), y = ys(s, 0), x1 = xs(s, 1), y1 = ys(s, 1);
  const Vec Jy = J.apply(y);
  MapBuilder t(s), inv(s);
  t.x(0, sub(x, scale(r1, Jy))).r(0, r + r1).x(1, add(sub(x1, x), scale(r1, Jy))).y(1, sub(y1, y));
  inv.x(0, add(x, scale(r1, Jy))).r(0, r - r1).x(1, add(x, x1)).y(1, add(y, y1));
  const Polynomial phase = kHalf * r1 * r1 * j_form(J, y, sub(y1, y)) - r1 * dot(x, sub(y1, y));
  return make(s, t.m, inv.m, phase, "V_Theta display");
}

}  // namespace

StructuredUnitary build_v_four_legs(const CatalogParams& P) {
  const LegSpace four(P.n(), {LegKind::xy, LegKind::r, LegKind::xy, LegKind::r});
  const auto Z12 = embed_legs(build("Z_xy", P), {0, 1}, four);
  const auto X24 = embed_legs(build("X", P), {1, 3}, four);
  const auto Y13 = embed_legs(build("Y", P), {0, 2}, four);
  auto V = compose({Z12, X24, adjoint(Z12), Y13});
  V.label = "V";
  return V;
}

StructuredUnitary perturbed_v_theta(const CatalogParams& params, const Polynomial& perturbation) {
  CatalogParams p = params;
  p.theta_perturbation = perturbation;
  return build("V_Theta", p);
}

StructuredUnitary build(const std::string& id, const CatalogParams& P) {
  const int n = P.n();
  if (id == "X" || id == "W1") {
    const LegSpace s(n, {LegKind::r, LegKind::r});
    const auto r = rv(s, 0), r1 = rv(s, 1);
    MapBuilder t(s), inv(s);
    if (id == "X") {
      t.r(0, r + r1);
      inv.r(0, r - r1);
    } else {
      t.r(1, r + r1);
      inv.r(1, r1 - r);
    }
    return make(s, t.m, inv.m, Polynomial(), id);
  }
  if (id == "Y" || id == "W2hat") {
    const LegSpace s(n, {LegKind::xy, LegKind::xy});
    const Vec x = xs(s, 0), y = ys(s, 0), x1 = xs(s, 1), y1 = ys(s, 1);
    MapBuilder minus(s), plus(s);
    minus.x(1, sub(x1, x)).y(1, sub(y1, y));
    plus.x(1, add(x1, x)).y(1, add(y1, y));
    return id == "Y" ? make(s, minus.m, plus.m, Polynomial(), id) : make(s, plus.m, minus.m, Polynomial(), id);
  }
  if (id == "Z_xy") {
    const LegSpace s(n, {LegKind::xy, LegKind::r});
    const Vec shift = scale(rv(s, 1), P.J.apply(ys(s, 0)));
    MapBuilder t(s), inv(s);
    t.x(0, add(xs(s, 0), shift));
    inv.x(0, sub(xs(s, 0), shift));
    return make(s, t.m, inv.m, Polynomial(), "Z");
  }
  if (id == "Z_pq") {
    const LegSpace s(n, {LegKind::pq, LegKind::r});
    const Vec shift = scale(rv(s, 1), P.J.apply_transpose(xs(s, 0)));
    MapBuilder t(s), inv(s);
    t.y(0, sub(ys(s, 0), shift));
    inv.y(0, add(ys(s, 0), shift));
    return make(s, t.m, inv.m, Polynomial(), "Z");
  }
  if (id == "Theta") return build_theta(P);
  if (id == "V") return regroup(build_v_four_legs(P), LegSpace(n, {LegKind::xyr, LegKind::xyr}));
  if (id == "V_Theta") {
    auto VT = compose(build("V", P), build_theta(P));
    VT.label = P.theta_perturbation.is_zero() ? "V_Theta" : "V_Theta(perturbed)";
    return VT;
  }
  if (id == "V_Theta_display") return build_v_theta_display(P);
  if (id == "L") return build_L(P);
  if (id == "Delta_L_display") return build_Delta_L_display(P);
  if (id == "Sigma_xyr") return flip(LegSpace(n, {LegKind::xyr, LegKind::xyr}), "Sigma");
  if (id == "Sigma_rxy") return flip(LegSpace(n, {LegKind::rxy, LegKind::rxy}), "Sigma");
  if (id == "K") return build_K(P);
  if (id == "W_hat") return build_W_hat(P, false);
  if (id == "W_hat_from_cocycles") return build_W_hat(P, true);
  if (id == "V_hat") {
    const LegSpace s(n, {LegKind::rxy, LegKind::rxy});
    const auto K = build_K(P);
    const auto KK = compose(embed_legs(K, {0}, s), embed_legs(K, {1}, s));
    const auto S = build("Sigma_rxy", P);
    auto Vh = compose({KK, S, adjoint(build_W_hat(P, false)), S, KK});
    Vh.label = "V_hat";
    return Vh;
  }
  std::string known;
  for (const auto& k : catalog_ids()) known += " " + k;
  throw std::invalid_argument("unknown catalog id '" + id + "'; known:" + known);
}

std::vector<std::string> catalog_ids() {
  return {"X",     "W1",          "Y",  "W2hat", "Z_xy",          "Z_pq",       "Theta",
          "V",     "V_Theta",     "V_Theta_display", "L", "Delta_L_display", "Sigma_xyr", "Sigma_rxy",
          "K",     "W_hat",       "W_hat_from_cocycles", "V_hat"};
}

CoactionReport coaction_residual(const Skew<Polynomial>& J) {
  const CatalogParams P(J);
  const auto Z = build("Z_pq", P);
  const auto& s = Z.space;
  const Vec p = xs(s, 0), q = ys(s, 0);
  CoactionReport rep;

  MultiplierSymbol g{s, "g", p, false};
  g.argument.insert(g.argument.end(), q.begin(), q.end());
  const auto ga = conjugate_by(Z, g);
  const auto moved = action_alpha_pq<Polynomial>(rv(s, 1), PlanePoint<Polynomial>{p, q}, J);
  rep.alpha_expected = moved.first;
  rep.alpha_expected.insert(rep.alpha_expected.end(), moved.second.begin(), moved.second.end());
  rep.alpha_argument = ga.argument;
  rep.alpha_match = !ga.conjugated && ga.argument == rep.alpha_expected;

  const MultiplierSymbol f{s, "f", {rv(s, 1)}, false};
  const auto fa = conjugate_by(Z, f);
  rep.gamma_match = !fa.conjugated && fa.argument == Vec{action_gamma(PlanePoint<Polynomial>{p, q}, rv(s, 1))};
  return rep;
}

EqualityReport comultiplication_structured_residual(const Skew<Polynomial>& J, const std::vector<Polynomial>& xt,
                                                    const std::vector<Polynomial>& yt, const Polynomial& zt) {
  CatalogParams P(J);
  P.xt = xt;
  P.yt = yt;
  P.zt = zt;
  const auto VT = build("V_Theta", P);
  const auto L1 = embed_legs(build("L", P), {0}, VT.space);
  return equals(compose({VT, L1, adjoint(VT)}), build("Delta_L_display", P));
}

EqualityReport duality_residual(const Skew<Polynomial>& J, bool k_without_shear) {
  CatalogParams P(J);
  P.k_without_shear = k_without_shear;
  const auto Vh = build("V_hat", P);
  const LegSpace target = reordered_space(Vh.space);
  const auto moved = relabel(Vh, target, leg_reorder_permutation(Vh.space, target));
  return equals(moved, build("V_Theta", P));
}

}  // namespace qgroup
