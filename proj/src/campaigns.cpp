#include "qgroup/campaigns.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qgroup/algebra.hpp"
#include "qgroup/catalog.hpp"
#include "qgroup/group.hpp"
#include "qgroup/unitary.hpp"

namespace qgroup {

namespace fs = std::filesystem;

namespace {

constexpr int kSchemaVersion = 1;

struct CampaignInfo {
  std::string name;
  std::string summary;
  std::vector<std::string> checks;
};

const std::vector<CampaignInfo>& catalog() {
  static const std::vector<CampaignInfo> info{
      {"lie",
       "Exact rational checks of the two Lie algebras and the bialgebra structure on h.",
       {"jacobi_g: Jacobi identity of [.,.] on g (p, q, r with [p_i, r] = sum_k J_ik q_k), basis and random triples",
        "jacobi_h: Jacobi identity of the Heisenberg bracket [x_i, y_i] = z",
        "cybe: classical Yang-Baxter residual of the r-matrix r(J) in h (x) h, for J and 20 random skew matrices",
        "cobracket_closed_form: delta(X) = ad_X r(J) against its closed form on every basis vector",
        "dual_bracket: the bracket dual to delta reproduces the bracket of g",
        "theta_duality: theta is the transpose of the Heisenberg bracket"}},
      {"poisson",
       "The Ad-cocycle F that generates the Poisson structure on G, and the resulting bracket.",
       {"F_cocycle: F(gh) = F(g) + Ad_g F(h) at 100 random rational pairs",
        "dF_theta: the derivative of F at the identity is theta",
        "bracket_jacobi: Jacobi identity of the Poisson bracket on random quadratic polynomials",
        "bracket_antisymmetry: {f, g} + {g, f} = 0"}},
      {"cocycles",
       "Symbolic identities for the twisting cocycle sigma and the matched-pair cocycles.",
       {"sigma_cocycle: sigma(hh', h'') sigma(h, h') = sigma(h, h'h'') sigma(h', h'') as a zero exponent polynomial",
        "sigma_normalisation: sigma(h, 0) = sigma(0, h) = 1",
        "matching_1..3: the three compatibility conditions between the matched-pair cocycles",
        "v_vs_sigma: the second matched-pair cocycle equals the flipped twisting cocycle"}},
      {"pentagon",
       "Pentagon equation W12 W13 W23 = W23 W12 in the structured-unitary calculus.",
       {"pentagon_<id>: exact pentagon for X, Y, V, V_Theta, W_hat and V_hat",
        "v_theta_display: the composite V_Theta equals its displayed closed form",
        "mutation_r2 / mutation_rxy: Theta with an extra r'^2/3 or r' x1 y1'/3 must fail"}},
      {"coaction",
       "The unitary Z implements the coactions alpha and gamma of the matched pair.",
       {"alpha: Z (g (x) 1) Z^* matches alpha(g)", "gamma: Z (1 (x) f) Z^* matches gamma(f)"}},
      {"comultiplication",
       "Comultiplication of the quantum group, both as operators and on functions.",
       {"shift_conjugation: V_Theta (L_{x~,y~,z~} (x) 1) V_Theta^* equals its closed form at 50 random triples",
        "delta_product: (Delta f)(g; g') = f(g g') at 100 random points against the exact group law",
        "coassociativity: f((g g') g'') = f(g (g' g''))"}},
      {"duality",
       "Duality between the multiplicative unitary and its dual.",
       {"duality_J: V_hat = (K (x) K) Sigma W_hat^* Sigma (K (x) K) equals V_Theta with legs reordered",
        "duality_random_n2 / duality_random_n3: the same for 20 random rational J each",
        "k_without_shear: dropping the x-shear in K must break the identity"}},
      {"quantize",
       "Gaussian deformation quantization: star product and involution in closed form, checked by quadrature.",
       {"pointwise_hbar0: star product at hbar = 0 is the pointwise product",
        "involution_hbar0: involution at hbar = 0 is complex conjugation",
        "oracle: closed form against nested Gauss-Hermite quadrature of the position-space integral, relative",
        "associativity: (f x g) x h = f x (g x h), relative", "anti_homomorphism: (f x g)^* = g^* x f^*, relative"}},
      {"limit",
       "Semiclassical limit: (f x g - g x f) / hbar - (i / 2 pi) {f, g} over a decreasing hbar list.",
       {"self_commutator: f with itself gives an identically zero residual",
        "pair<k>.slope_sup / pair<k>.slope_l1: log-log slope of the residual in the sup metric over sample points"
        " and in the grid L1 surrogate; tables limit_pair<k>.csv"}},
      {"antipode",
       "The antipode kappa on the Fourier side and its operator realisation.",
       {"kappa_involution: kappa(kappa(F)) = F",
        "slice_identity: the slice function built from V_Theta^* equals kappa of the slice built from V_Theta",
        "K_conjugation: K (L_F)^* K = L_{kappa(F)} at sample points, by quadrature"}},
      {"haar",
       "Haar functionals phi (integral over G) and phi_S (Fourier side at h = 0).",
       {"phiS_vs_phi: phi_S of the partial Fourier transform equals phi",
        "positivity: phi(f^* x f) = int |f|^2 > 0",
        "left_invariance: (id (x) phi_S)((1 (x) f) Delta g) = kappa((id (x) phi_S)((Delta f)(1 (x) g)))"}},
  };
  return info;
}

std::string comparison_name(Comparison c) {
  switch (c) {
    case Comparison::exact_zero: return "exact-zero";
    case Comparison::at_most: return "<=";
    case Comparison::at_least: return ">=";
    case Comparison::nonzero: return "nonzero";
  }
  return "?";
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

// ---------------------------------------------------------------------------

class Recorder {
 public:
  Recorder(Report& report, std::string campaign) : report_(report), campaign_(std::move(campaign)) {}

  // residual counts nonzero terms
  void exact(const std::string& name, const std::string& anchor, const std::function<double()>& residual) {
    timed(name, anchor, Comparison::exact_zero, 0, true, residual);
  }
  // pass when the exact residual is nonzero
  void must_fail(const std::string& name, const std::string& anchor, const std::function<double()>& residual) {
    timed(name, anchor, Comparison::nonzero, 0, true, residual);
  }
  void at_most(const std::string& name, const std::string& anchor, double tol, const std::function<double()>& residual) {
    timed(name, anchor, Comparison::at_most, tol, false, residual);
  }
  void at_least(const std::string& name, const std::string& anchor, double bound, const std::function<double()>& value) {
    timed(name, anchor, Comparison::at_least, bound, false, value);
  }

 private:
  void timed(const std::string& name, const std::string& anchor, Comparison cmp, double tol, bool exact,
             const std::function<double()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    const double v = fn();
    const auto t1 = std::chrono::steady_clock::now();
    CheckRecord rec;
    rec.campaign = campaign_;
    rec.name = campaign_ + "." + name;
    rec.anchor = anchor;
    rec.comparison = cmp;
    rec.exact = exact;
    rec.residual = v;
    rec.tolerance = tol;
    switch (cmp) {
      case Comparison::exact_zero: rec.pass = v == 0; break;
      case Comparison::at_most: rec.pass = v == 0 || v <= tol; break;
      case Comparison::at_least: rec.pass = v >= tol; break;
      case Comparison::nonzero: rec.pass = v != 0; break;
    }
    rec.seconds = std::chrono::duration<double>(t1 - t0).count();
    report_.checks.push_back(rec);
  }

  Report& report_;
  std::string campaign_;
};

double nonzero(bool is_zero) { return is_zero ? 0.0 : 1.0; }

GroupElementG<Rational> random_group_point(int n, std::mt19937_64& rng) {
  auto g = GroupElementG<Rational>::identity(n);
  for (auto& v : g.p) v = random_rational(rng);
  for (auto& v : g.q) v = random_rational(rng);
  g.r = random_rational(rng);
  return g;
}

GroupElementG<double> to_double(const GroupElementG<Rational>& g) {
  GroupElementG<double> out;
  for (const auto& v : g.p) out.p.push_back(v.get_d());
  for (const auto& v : g.q) out.q.push_back(v.get_d());
  out.r = g.r.get_d();
  return out;
}

Eigen::VectorXd as_vector(const std::vector<double>& c) {
  return Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size()));
}

Eigen::VectorXd uniform_point(int d, double half_width, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-half_width, half_width);
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v(i) = u(rng);
  return v;
}

double rel(cd a, cd b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

CatalogParams random_shift(const Skew<Polynomial>& J, std::mt19937_64& rng) {
  CatalogParams P(J);
  for (int i = 0; i < J.n(); ++i) {
    P.xt.emplace_back(random_rational(rng));
    P.yt.emplace_back(random_rational(rng));
  }
  P.zt = Polynomial(random_rational(rng));
  return P;
}

// ---------------------------------------------------------------------------

void run_lie(Recorder& rec, const SkewMatrix& J, std::mt19937_64& rng) {
  const int n = J.n(), d = 2 * n + 1;
  const auto sg = StructureConstants::for_g(J);
  const auto sh = StructureConstants::for_h(n);
  rec.exact("jacobi_g", "Jacobi identity of the Lie algebra g", [&] {
    double bad = 0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          bad += nonzero(jacobi_residual(sg, LieElementG::basis(n, a), LieElementG::basis(n, b), LieElementG::basis(n, c)).is_zero());
    for (int t = 0; t < 50; ++t)
      bad += nonzero(jacobi_residual(sg, LieElementG::random(n, rng), LieElementG::random(n, rng), LieElementG::random(n, rng)).is_zero());
    return bad;
  });
  rec.exact("jacobi_h", "Jacobi identity of the Heisenberg Lie algebra h", [&] {
    double bad = 0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          bad += nonzero(jacobi_residual(sh, LieElementH::basis(n, a), LieElementH::basis(n, b), LieElementH::basis(n, c)).is_zero());
    return bad;
  });
  rec.exact("cybe", "classical Yang-Baxter equation for r(J)", [&] {
    double bad = nonzero(cybe_residual(classical_r_matrix(J)).is_zero());
    for (int t = 0; t < 20; ++t) bad += nonzero(cybe_residual(classical_r_matrix(SkewMatrix::random(2 + t % 2, rng))).is_zero());
    return bad;
  });
  rec.exact("cobracket_closed_form", "cobracket delta(X) = ad_X r(J) in closed form", [&] {
    double bad = 0;
    for (int a = 0; a < d; ++a) {
      const auto X = LieElementH::basis(n, a);
      bad += nonzero(cobracket_delta(X, J) == cobracket_delta_closed_form(X, J));
    }
    return bad;
  });
  rec.exact("dual_bracket", "bracket dual to delta equals the bracket of g", [&] {
    double bad = 0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        bad += nonzero(dual_bracket_from_delta(LieElementG::basis(n, a), LieElementG::basis(n, b), J) ==
                       bracket_g(LieElementG::basis(n, a), LieElementG::basis(n, b), J));
    return bad;
  });
  rec.exact("theta_duality", "theta is dual to the Heisenberg bracket", [&] {
    double bad = 0;
    for (int a = 0; a < d; ++a) {
      const auto mu = LieElementG::basis(n, a);
      bad += nonzero(cobracket_theta(mu) == cobracket_theta_by_duality(mu));
    }
    return bad;
  });
}

void run_poisson(Recorder& rec, const SkewMatrix& J, std::mt19937_64& rng) {
  const int n = J.n();
  rec.exact("F_cocycle", "F(gh) = F(g) + Ad_g F(h)", [&] {
    double bad = 0;
    for (int t = 0; t < 100; ++t) bad += nonzero(F_cocycle_residual(random_group_point(n, rng), random_group_point(n, rng), J).is_zero());
    return bad;
  });
  rec.exact("dF_theta", "derivative of F at the identity equals theta", [&] {
    double bad = 0;
    for (const auto& row : dF_identity_vs_theta(J)) bad += nonzero(row.match());
    return bad;
  });
  const auto Jp = J.as_polynomial();
  std::vector<Polynomial> polys;
  for (int t = 0; t < 9; ++t) polys.push_back(random_polynomial(n, 2, rng));
  const auto pb = [&](const Polynomial& a, const Polynomial& b) { return poisson_bracket_polynomials(a, b, Jp); };
  rec.exact("bracket_jacobi", "Jacobi identity of the Poisson bracket on G", [&] {
    double bad = 0;
    for (int t = 0; t < 3; ++t) {
      const auto &f = polys[3 * t], &g = polys[3 * t + 1], &h = polys[3 * t + 2];
      bad += static_cast<double>((pb(pb(f, g), h) + pb(pb(g, h), f) + pb(pb(h, f), g)).terms().size());
    }
    return bad;
  });
  rec.exact("bracket_antisymmetry", "antisymmetry of the Poisson bracket", [&] {
    double bad = 0;
    for (int t = 0; t + 1 < static_cast<int>(polys.size()); ++t)
      bad += static_cast<double>((pb(polys[t], polys[t + 1]) + pb(polys[t + 1], polys[t])).terms().size());
    return bad;
  });
}

void run_cocycles(Recorder& rec, const SkewMatrix& J) {
  const int n = J.n();
  for (const auto& [tag, Jp] : {std::pair<std::string, Skew<Polynomial>>{"J", J.as_polynomial()},
                                std::pair<std::string, Skew<Polynomial>>{"symbolic", symbolic_skew(n)}}) {
    rec.exact("sigma_cocycle_" + tag, "2-cocycle identity of the twisting phase sigma", [&] {
      return static_cast<double>(sigma_cocycle_exponent_residual(Jp).terms().size());
    });
    rec.exact("sigma_normalisation_" + tag, "sigma(h, 0) = sigma(0, h) = 1", [&] {
      const auto [l, r] = sigma_normalization_exponents(Jp);
      return static_cast<double>(l.terms().size() + r.terms().size());
    });
    const auto rep = matching_cocycles_residual(Jp);
    for (int k = 0; k < 3; ++k)
      rec.exact("matching_" + std::to_string(k + 1) + "_" + tag, "compatibility condition " + std::to_string(k + 1) + " of the matched-pair cocycles",
                [&] { return static_cast<double>(rep.residuals[k].terms().size()); });
    rec.exact("v_vs_sigma_" + tag, "matched-pair cocycle V equals the flipped sigma",
              [&] { return static_cast<double>(rep.v_vs_sigma.terms().size()); });
  }
}

void run_pentagon(Recorder& rec, const SkewMatrix& J) {
  const CatalogParams P(J.as_polynomial());
  for (const std::string id : {"X", "Y", "V", "V_Theta", "W_hat", "V_hat"})
    rec.exact("pentagon_" + id, "pentagon equation for " + id,
              [&] { return static_cast<double>(pentagon_residual(build(id, P)).residual_terms()); });
  rec.exact("v_theta_display", "V_Theta equals its closed-form display",
            [&] { return static_cast<double>(equals(build("V_Theta", P), build("V_Theta_display", P)).residual_terms()); });
  const LegSpace s(J.n(), {LegKind::xyr, LegKind::xyr});
  const Polynomial third(Rational(1, 3));
  rec.must_fail("mutation_r2", "pentagon must fail when Theta gains r'^2/3", [&] {
    return static_cast<double>(pentagon_residual(perturbed_v_theta(P, third * var(s.r(1)) * var(s.r(1)))).residual_terms());
  });
  rec.must_fail("mutation_rxy", "pentagon must fail when Theta gains r' x1 y1'/3", [&] {
    return static_cast<double>(
        pentagon_residual(perturbed_v_theta(P, third * var(s.r(1)) * var(s.x(0, 0)) * var(s.y(1, 0)))).residual_terms());
  });
}

void run_coaction(Recorder& rec, const SkewMatrix& J) {
  const auto rep = coaction_residual(J.as_polynomial());
  rec.exact("alpha", "Z implements the coaction alpha", [&] { return nonzero(rep.alpha_match); });
  rec.exact("gamma", "Z implements the coaction gamma", [&] { return nonzero(rep.gamma_match); });
}

void run_comultiplication(Recorder& rec, const SkewMatrix& J, const QuantizationConfig& q, std::mt19937_64& rng) {
  const int n = J.n();
  const auto Jp = J.as_polynomial();
  rec.exact("shift_conjugation", "V_Theta (L (x) 1) V_Theta^* equals its closed form", [&] {
    double bad = 0;
    for (int t = 0; t < 50; ++t) {
      const auto P = random_shift(Jp, rng);
      bad += static_cast<double>(comultiplication_structured_residual(Jp, P.xt, P.yt, P.zt).residual_terms());
    }
    return bad;
  });
  const Eigen::MatrixXd Je = J.to_eigen();
  const auto f = GaussianFamily::random(n, Side::position, rng);
  rec.at_most("delta_product", "(Delta f)(g; g') = f(g g')", q.tol.closed_form, [&] {
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
      const auto a = random_group_point(n, rng), b = random_group_point(n, rng);
      const auto ab = to_double(multiply_g(a, b, J.exact())).coords();
      worst = std::max(worst, rel(delta_function(f, to_double(a), to_double(b), Je), f(as_vector(ab))));
    }
    return worst;
  });
  rec.at_most("coassociativity", "f((g g') g'') = f(g (g' g''))", q.tol.closed_form, [&] {
    const auto Jd = J.as_double();
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
      const auto a = to_double(random_group_point(n, rng)), b = to_double(random_group_point(n, rng)),
                 c = to_double(random_group_point(n, rng));
      const cd left = delta_function(f, multiply_g(a, b, Jd), c, Je);
      const cd right = delta_function(f, a, multiply_g(b, c, Jd), Je);
      worst = std::max(worst, rel(left, right));
    }
    return worst;
  });
}

void run_duality(Recorder& rec, const SkewMatrix& J, std::mt19937_64& rng) {
  rec.exact("duality_J", "V_hat equals V_Theta with legs reordered",
            [&] { return static_cast<double>(duality_residual(J.as_polynomial()).residual_terms()); });
  for (int n : {2, 3})
    rec.exact("duality_random_n" + std::to_string(n), "V_hat equals V_Theta for random rational J", [&] {
      double bad = 0;
      for (int t = 0; t < 20; ++t) bad += static_cast<double>(duality_residual(SkewMatrix::random(n, rng).as_polynomial()).residual_terms());
      return bad;
    });
  rec.must_fail("k_without_shear", "duality must fail when K loses its x-shear",
                [&] { return static_cast<double>(duality_residual(J.as_polynomial(), true).residual_terms()); });
}

void run_quantize(Recorder& rec, const QuantizationConfig& q, std::mt19937_64& rng) {
  const int n = q.n;
  const auto f = GaussianFamily::random(n, Side::position, rng), g = GaussianFamily::random(n, Side::position, rng),
             h = GaussianFamily::random(n, Side::position, rng);
  const auto pts = sample_points(*f.joint() * *g.joint(), q.samples, rng);
  const auto pts3 = sample_points(*f.joint() * *g.joint() * *h.joint(), q.samples, rng);
  rec.at_most("pointwise_hbar0", "star product at hbar = 0 is the pointwise product", q.tol.closed_form, [&] {
    const auto fg = star_product(f, g, q.J, 0.0);
    double worst = 0;
    for (const auto& p : pts) worst = std::max(worst, rel(fg(p), f(p) * g(p)));
    return worst;
  });
  rec.at_most("involution_hbar0", "involution at hbar = 0 is complex conjugation", q.tol.closed_form, [&] {
    const auto fs = involution(f, q.J, 0.0);
    double worst = 0;
    for (const auto& p : pts) worst = std::max(worst, rel(fs(p), std::conj(f(p))));
    return worst;
  });
  for (double hbar : {1.0, q.hbar_list.back()}) {
    std::ostringstream tag;
    tag << "hbar=" << hbar;
    rec.at_most("oracle[" + tag.str() + "]", "closed-form star product against position-space quadrature", q.tol.oracle_relative, [&] {
      const auto fg = star_product(f, g, q.J, hbar);
      double worst = 0;
      for (const auto& p : pts) worst = std::max(worst, rel(star_product_point(f, g, q.J, hbar, p, q.oracle_order).value, fg(p)));
      return worst;
    });
    rec.at_most("associativity[" + tag.str() + "]", "associativity of the star product", q.tol.oracle_relative, [&] {
      const auto left = star_product(star_product(f, g, q.J, hbar), h, q.J, hbar);
      const auto right = star_product(f, star_product(g, h, q.J, hbar), q.J, hbar);
      double worst = 0;
      for (const auto& p : pts3) worst = std::max(worst, rel(left(p), right(p)));
      return worst;
    });
    rec.at_most("anti_homomorphism[" + tag.str() + "]", "involution reverses star products", q.tol.oracle_relative, [&] {
      const auto left = involution(star_product(f, g, q.J, hbar), q.J, hbar);
      const auto right = star_product(involution(g, q.J, hbar), involution(f, q.J, hbar), q.J, hbar);
      double worst = 0;
      for (const auto& p : pts) worst = std::max(worst, rel(left(p), right(p)));
      return worst;
    });
  }
}

void run_limit(Recorder& rec, Report& report, const QuantizationConfig& q, std::mt19937_64& rng) {
  const int n = q.n;
  {
    const auto f = GaussianFamily::random(n, Side::position, rng);
    const auto pts = sample_points(*f.joint(), q.samples, rng);
    rec.exact("self_commutator", "commutator residual of f with itself", [&] {
      const auto study = convergence_study(f, f, q.J, q.hbar_list, pts, q.surrogate);
      return study.exact_zero ? 0.0 : 1.0;
    });
  }
  for (int k = 1; k <= q.pairs; ++k) {
    const auto f = GaussianFamily::random(n, Side::position, rng), g = GaussianFamily::random(n, Side::position, rng);
    const auto pts = sample_points(*f.joint() * *g.joint(), q.samples, rng);
    const std::string tag = "pair" + std::to_string(k);
    ConvergenceStudy study;
    bool degenerate = false;
    try {
      study = convergence_study(f, g, q.J, q.hbar_list, pts, q.surrogate);
    } catch (const std::domain_error&) {
      degenerate = true;
    }
    if (!degenerate) report.tables["limit_" + tag + ".csv"] = study.csv();
    rec.at_least(tag + ".slope_sup", "rescaled commutator tends to the Poisson bracket, sup over sample points",
                 q.tol.min_slope, [&] { return degenerate ? 0.0 : study.slope_sup; });
    rec.at_least(tag + ".slope_l1", "rescaled commutator tends to the Poisson bracket, L1 grid surrogate",
                 q.tol.min_slope, [&] { return degenerate ? 0.0 : study.slope_l1; });
  }
}

void run_antipode(Recorder& rec, const QuantizationConfig& q, std::mt19937_64& rng) {
  const int n = q.n;
  const auto F = GaussianFamily::random(n, Side::fourier, rng);
  rec.at_most("kappa_involution", "kappa(kappa(F)) = F", q.tol.closed_form, [&] {
    const auto kk = antipode_kappa(antipode_kappa(F, q.J), q.J);
    double worst = 0;
    for (const auto& p : sample_points(*F.joint(), q.samples, rng)) worst = std::max(worst, rel(kk(p), F(p)));
    return worst;
  });
  rec.at_most("slice_identity", "slice function of V_Theta^* equals kappa of the slice of V_Theta", q.tol.quadrature, [&] {
    const auto eta = GaussianFamily::random(n, Side::fourier, rng), zeta = GaussianFamily::random(n, Side::fourier, rng);
    std::vector<Eigen::VectorXd> pts;
    for (int t = 0; t < q.samples; ++t) pts.push_back(uniform_point(2 * n + 1, 1.0, rng));
    return antipode_slice_residual(slice_functions(eta, zeta, q.J), q.J, pts);
  });
  rec.at_most("K_conjugation", "K (L_F)^* K = L_{kappa(F)}", q.tol.quadrature, [&] {
    const Gaussian xg = Gaussian::random(2 * n + 1, rng);
    const FourierFunction xi = [&](const Eigen::VectorXd& h, double r) {
      Eigen::VectorXd w(2 * n + 1);
      w << h, r;
      return xg(w);
    };
    double worst = 0;
    for (int t = 0; t < q.samples; ++t) {
      const Eigen::VectorXd p = uniform_point(2 * n + 1, 0.8, rng);
      worst = std::max(worst, std::abs(K_conjugation_residual(F, xi, q.J, p.head(2 * n), p(2 * n), q.lf_order)));
    }
    return worst;
  });
}

void run_haar(Recorder& rec, const QuantizationConfig& q, std::mt19937_64& rng) {
  const int n = q.n;
  rec.at_most("phiS_vs_phi", "phi_S of the Fourier transform equals phi", q.tol.quadrature, [&] {
    const auto f = GaussianFamily::random(n, Side::position, rng), g = GaussianFamily::random(n, Side::position, rng);
    const auto fg = star_product(f, g, q.J, 1.0);
    return std::max(rel(haar_phiS(partial_fourier(f), q.r_nodes), haar_phi(f, q.r_nodes)),
                    rel(haar_phiS(partial_fourier(fg), q.r_nodes), haar_phi(fg, q.r_nodes)));
  });
  rec.at_most("positivity", "phi(f^* x f) equals the squared L2 norm and is positive", q.tol.quadrature, [&] {
    double worst = 0;
    for (int t = 0; t < 3; ++t) {
      const auto f = GaussianFamily::random(n, Side::position, rng);
      const cd v = haar_phi(star_product(involution(f, q.J, 1.0), f, q.J, 1.0), q.r_nodes);
      const cd norm = haar_phi(pointwise_product(conjugate(f), f), q.r_nodes);
      if (v.real() < q.tol.positivity) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, rel(v, norm));
    }
    return worst;
  });
  rec.at_most("left_invariance", "left invariance of phi_S", q.tol.quadrature, [&] {
    const auto f = GaussianFamily::random(n, Side::fourier, rng), g = GaussianFamily::random(n, Side::fourier, rng);
    double worst = 0;
    for (int t = 0; t < q.samples; ++t) worst = std::max(worst, std::abs(left_invariance(f, g, q.J, uniform_point(2 * n + 1, 1.0, rng)).residual()));
    return worst;
  });
}

}  // namespace

// ---------------------------------------------------------------------------

const std::vector<std::string>& campaign_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& c : catalog()) v.push_back(c.name);
    return v;
  }();
  return names;
}

std::string describe(const std::string& name) {
  for (const auto& c : catalog()) {
    if (c.name != name) continue;
    std::ostringstream os;
    os << c.name << ": " << c.summary << "\n";
    for (const auto& line : c.checks) os << "  - " << line << "\n";
    return os.str();
  }
  throw ConfigError("unknown campaign '" + name + "'; valid names: " + join(campaign_names(), ", "));
}

std::vector<std::string> CampaignConfig::parse_campaign_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

CampaignConfig CampaignConfig::from_json(const nlohmann::json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  CampaignConfig c;
  try {
    if (j.contains("j_file")) {
      fs::path p = j.at("j_file").get<std::string>();
      if (p.is_relative()) p = fs::path(base_dir) / p;
      c.j_path = p.string();
      c.J = load_skew_matrix(c.j_path);
    } else if (j.contains("J")) {
      c.J = parse_skew_matrix_json(j.at("J").dump());
    }
    c.campaigns = j.contains("campaigns") ? j.at("campaigns").get<std::vector<std::string>>() : campaign_names();
    c.seed = j.value("seed", c.seed);
    if (j.contains("output_dir")) {
      fs::path p = j.at("output_dir").get<std::string>();
      if (p.is_relative()) p = fs::path(base_dir) / p;
      c.output_dir = p.string();
    }
    c.quant = QuantizationConfig::from_json(j.value("quantization", nlohmann::json()), c.J.to_eigen());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return c;
}

CampaignConfig CampaignConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("malformed configuration " + path + ": " + e.what());
  }
  return from_json(j, fs::path(path).parent_path().string());
}

void CampaignConfig::validate() const {
  const auto& names = campaign_names();
  for (const auto& c : campaigns)
    if (std::find(names.begin(), names.end(), c) == names.end())
      throw ConfigError("unknown campaign '" + c + "'; valid names: " + join(names, ", "));
  try {
    QuantizationConfig q = quant;
    q.n = J.n();
    q.J = J.to_eigen();
    q.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  const fs::path probe = fs::path(output_dir) / ".write_probe";
  std::ofstream out(probe);
  if (ec || !out) throw ConfigError("output directory " + output_dir + " is not writable");
  out.close();
  fs::remove(probe, ec);
}

// ---------------------------------------------------------------------------

int Report::failed() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const CheckRecord& c) { return !c.pass; }));
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["seed"] = seed;
  j["n"] = J.n();
  j["J"] = J.to_strings();
  j["campaigns"] = campaigns;
  auto arr = nlohmann::json::array();
  int exact_zero = 0;
  for (const auto& c : checks) {
    nlohmann::json r;
    r["name"] = c.name;
    r["campaign"] = c.campaign;
    r["anchor"] = c.anchor;
    r["status"] = c.pass ? "pass" : "fail";
    r["comparison"] = comparison_name(c.comparison);
    if (c.exact && c.residual == 0) {
      r["residual"] = "exact-zero";
      ++exact_zero;
    } else {
      r["residual"] = c.residual;
    }
    r["tolerance"] = c.tolerance;
    arr.push_back(r);
  }
  j["checks"] = arr;
  std::vector<std::string> files;
  for (const auto& [name, text] : tables) files.push_back(name);
  j["tables"] = files;
  j["summary"] = {{"total", checks.size()},
                  {"passed", static_cast<int>(checks.size()) - failed()},
                  {"failed", failed()},
                  {"exact_zero", exact_zero}};
  return j;
}

nlohmann::json Report::timings_json() const {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  nlohmann::json per = nlohmann::json::object();
  for (const auto& c : checks) per[c.name] = c.seconds;
  j["checks"] = per;
  j["campaigns"] = campaign_seconds;
  return j;
}

void Report::write(const std::string& dir) const {
  fs::create_directories(dir);
  auto put = [&](const std::string& name, const std::string& text) {
    std::ofstream out(fs::path(dir) / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (fs::path(dir) / name).string());
    out << text;
  };
  put("report.json", to_json().dump(2) + "\n");
  put("timings.json", timings_json().dump(2) + "\n");
  for (const auto& [name, text] : tables) put(name, text);
}

Report run_campaigns(const CampaignConfig& config) {
  config.validate();
  Report report;
  report.seed = config.seed;
  report.J = config.J;
  const auto& names = campaign_names();
  for (std::size_t idx = 0; idx < names.size(); ++idx) {
    const std::string& name = names[idx];
    if (std::find(config.campaigns.begin(), config.campaigns.end(), name) == config.campaigns.end()) continue;
    report.campaigns.push_back(name);
    const auto t0 = std::chrono::steady_clock::now();
    // each campaign draws from its own stream so subsets reproduce the full run
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(idx)};
    std::mt19937_64 rng(seq);
    Recorder rec(report, name);
    QuantizationConfig q = config.quant;
    q.n = config.J.n();
    q.J = config.J.to_eigen();
    if (name == "lie") run_lie(rec, config.J, rng);
    else if (name == "poisson") run_poisson(rec, config.J, rng);
    else if (name == "cocycles") run_cocycles(rec, config.J);
    else if (name == "pentagon") run_pentagon(rec, config.J);
    else if (name == "coaction") run_coaction(rec, config.J);
    else if (name == "comultiplication") run_comultiplication(rec, config.J, q, rng);
    else if (name == "duality") run_duality(rec, config.J, rng);
    else if (name == "quantize") run_quantize(rec, q, rng);
    else if (name == "limit") run_limit(rec, report, q, rng);
    else if (name == "antipode") run_antipode(rec, q, rng);
    else if (name == "haar") run_haar(rec, q, rng);
    report.campaign_seconds[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return report;
}

}  // namespace qgroup
