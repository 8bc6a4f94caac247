#include "qgroup/group.hpp"

namespace qgroup {

std::complex<double> sigma_phase(const CocycleParams& params, const PlanePoint<double>& a, const PlanePoint<double>& b,
                                 const Skew<double>& J) {
  const double t = sigma_exponent<double>(J, params.hbar, params.r, a, b);
  return std::polar(1.0, 2.0 * std::numbers::pi * t);
}

std::complex<double> sigma_cocycle_residual(const CocycleParams& params, const PlanePoint<double>& h,
                                            const PlanePoint<double>& h1, const PlanePoint<double>& h2,
                                            const Skew<double>& J) {
  const auto s = [&](const PlanePoint<double>& a, const PlanePoint<double>& b) { return sigma_phase(params, a, b, J); };
  return s(h + h1, h2) * s(h, h1) - s(h, h1 + h2) * s(h1, h2);
}

PlanePoint<Polynomial> symbolic_plane_point(int n, const std::string& tag) {
  PlanePoint<Polynomial> out;
  for (int i = 0; i < n; ++i) out.first.push_back(Polynomial::variable(symbol(tag + "x" + std::to_string(i + 1))));
  for (int i = 0; i < n; ++i) out.second.push_back(Polynomial::variable(symbol(tag + "y" + std::to_string(i + 1))));
  return out;
}

Polynomial sigma_cocycle_exponent_residual(const Skew<Polynomial>& J) {
  const int n = J.n();
  const Polynomial r = Polynomial::variable(symbol("r"));
  const Polynomial hb = Polynomial::variable(symbol("hbar"));
  const auto h = symbolic_plane_point(n, "");
  const auto h1 = symbolic_plane_point(n, "'");
  const auto h2 = symbolic_plane_point(n, "''");
  const auto s = [&](const PlanePoint<Polynomial>& a, const PlanePoint<Polynomial>& b) {
    return sigma_exponent<Polynomial>(J, hb, r, a, b);
  };
  return (s(h + h1, h2) + s(h, h1)) - (s(h, h1 + h2) + s(h1, h2));
}

std::pair<Polynomial, Polynomial> sigma_normalization_exponents(const Skew<Polynomial>& J) {
  const int n = J.n();
  const Polynomial r = Polynomial::variable(symbol("r"));
  const Polynomial hb = Polynomial::variable(symbol("hbar"));
  const auto h = symbolic_plane_point(n, "");
  const auto zero = PlanePoint<Polynomial>::zero(n);
  return {sigma_exponent<Polynomial>(J, hb, r, h, zero), sigma_exponent<Polynomial>(J, hb, r, zero, h)};
}

MatchingReport matching_cocycles_residual(const Skew<Polynomial>& J) {
  // With U == 1 the three conditions reduce to
  //   V(r r'; h, h') = V(r; alpha_{r'} h, alpha_{r'} h') + V(r'; h, h')          (cocycle in r)
  //   V(r; h h', h'') + V(r; h, h') = V(r; h, h' h'') + V(r; h', h'')            (2-cocycle in h)
  //   U(r r'; h) = U(r; alpha_{r'} h) U(r'; h), trivially 0
  // exponents added since e[.] is multiplicative; G1 and H/Z are both abelian here.
  const int n = J.n();
  const Polynomial r = Polynomial::variable(symbol("r"));
  const Polynomial r1 = Polynomial::variable(symbol("r'"));
  const auto h = symbolic_plane_point(n, "");
  const auto h1 = symbolic_plane_point(n, "'");
  const auto h2 = symbolic_plane_point(n, "''");
  const auto V = [&](const Polynomial& rr, const PlanePoint<Polynomial>& a, const PlanePoint<Polynomial>& b) {
    return matching_v_exponent<Polynomial>(J, rr, a, b);
  };
  const auto alpha = [&](const Polynomial& rr, const PlanePoint<Polynomial>& a) {
    return action_alpha_xy<Polynomial>(rr, a, J);
  };

  MatchingReport rep;
  rep.residuals[0] = Polynomial();  // U == 1 on both sides
  rep.residuals[1] = V(r + r1, h, h1) - V(r, alpha(r1, h), alpha(r1, h1)) - V(r1, h, h1);
  rep.residuals[2] = (V(r, h + h1, h2) + V(r, h, h1)) - (V(r, h, h1 + h2) + V(r, h1, h2));
  const Polynomial one(1);
  rep.v_vs_sigma = V(r, h, h1) - sigma_exponent<Polynomial>(J, one, r, h1, h);
  return rep;
}

}  // namespace qgroup
