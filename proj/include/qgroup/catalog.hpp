#pragma once

#include <string>
#include <vector>

#include "qgroup/skew_matrix.hpp"
#include "qgroup/unitary.hpp"

namespace qgroup {

struct CatalogParams {
  Skew<Polynomial> J;
  // parameters of the shift operator L_{xt,yt,zt}
  std::vector<Polynomial> xt, yt;
  Polynomial zt;
  // added to the exponent of Theta (mutation tests); written in the
  // coordinates of Theta's [xyr,xyr] space
  Polynomial theta_perturbation;
  // K without its x-shear (mutation test)
  bool k_without_shear = false;

  explicit CatalogParams(Skew<Polynomial> j) : J(std::move(j)) {}
  int n() const { return J.n(); }
};

/// Known ids:
///   X [r,r]; W1 [r,r]; Y [xy,xy]; W2hat [xy,xy]; Z_xy [xy,r]; Z_pq [pq,r];
///   Theta, V, V_Theta, V_Theta_display, L, Delta_L_display, Sigma_xyr [xyr,xyr] (L on [xyr]);
///   K [rxy]; Sigma_rxy, W_hat, W_hat_from_cocycles, V_hat [rxy,rxy].
StructuredUnitary build(const std::string& id, const CatalogParams& params);
std::vector<std::string> catalog_ids();

/// V = (Z12 X24 Z12^*) Y13 on [xy,r,xy,r], returned on that 4-leg space.
StructuredUnitary build_v_four_legs(const CatalogParams& params);

/// Theta with its exponent perturbed by c * monomial, c rational.
StructuredUnitary perturbed_v_theta(const CatalogParams& params, const Polynomial& perturbation);

struct CoactionReport {
  bool alpha_match = false;
  bool gamma_match = false;
  std::vector<Polynomial> alpha_argument, alpha_expected;
  bool ok() const { return alpha_match && gamma_match; }
};
/// Z (g (x) 1) Z^* and Z (1 (x) f) Z^* on [pq,r] against alpha(g), gamma(f).
CoactionReport coaction_residual(const Skew<Polynomial>& J);

/// V_Theta (L (x) 1) V_Theta^* against the transcribed display.
EqualityReport comultiplication_structured_residual(const Skew<Polynomial>& J, const std::vector<Polynomial>& xt,
                                                    const std::vector<Polynomial>& yt, const Polynomial& zt);

/// (K (x) K) Sigma W_hat^* Sigma (K (x) K), leg-reordered to (x,y;r), against V_Theta.
EqualityReport duality_residual(const Skew<Polynomial>& J, bool k_without_shear = false);

}  // namespace qgroup
