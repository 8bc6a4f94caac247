#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "qgroup/gaussian.hpp"
#include "qgroup/group.hpp"
#include "qgroup/quadrature.hpp"

namespace qgroup {

// Coordinates: position side (p_1..p_n, q_1..q_n), Fourier side (x_1..x_n, y_1..y_n);
// r is appended last wherever a function of all 2n+1 variables is meant.

enum class Side { position, fourier };
std::string side_name(Side s);

/// Rough location of the r-dependence, used to place r-quadrature windows.
struct REnvelope {
  double center = 0;
  double sigma = 1;
};

/// A function of (u, r) whose r-slices are Gaussians in u.
class GaussianFamily {
 public:
  using SliceFn = std::function<Gaussian(double)>;

  GaussianFamily(int n, Side side, SliceFn slice, REnvelope env);
  /// joint Gaussian over (u, r)
  static GaussianFamily from_joint(const Gaussian& joint, Side side);
  static GaussianFamily random(int n, Side side, std::mt19937_64& rng, double scale = 1.0);
  static GaussianFamily zero(int n, Side side);

  int n() const { return n_; }
  Side side() const { return side_; }
  const REnvelope& r_envelope() const { return env_; }
  const std::optional<Gaussian>& joint() const { return joint_; }

  Gaussian slice(double r) const { return slice_(r); }
  cd operator()(const Eigen::VectorXd& u, double r) const;
  /// point = (u, r)
  cd operator()(const Eigen::VectorXd& point) const;

  nlohmann::json to_json() const;

 private:
  int n_;
  Side side_;
  SliceFn slice_;
  REnvelope env_;
  std::optional<Gaussian> joint_;
};

Skew<double> skew_from_eigen(const Eigen::MatrixXd& J);

// ---------------------------------------------------------------------------
// Fourier calculus and the deformed product

/// f -> f^v (position to Fourier, kernel e[p.x + q.y]) or back (kernel e-bar).
GaussianFamily partial_fourier(const GaussianFamily& f);

/// (F *_sigma G)(h) = int F(h~) G(h - h~) sigma_hbar^r(h~, h - h~) dh~ at one r.
Gaussian twisted_convolution(const Gaussian& F, const Gaussian& G, const Eigen::MatrixXd& J, double hbar, double r);

/// f x_hbar g = (f^v *_sigma g^v)^, both position side.
GaussianFamily star_product(const GaussianFamily& f, const GaussianFamily& g, const Eigen::MatrixXd& J, double hbar);

/// Closed form of the position-side integral
/// int e-bar[(q - q~).y] f(p + hbar r y, q + (hbar r^2 / 2) J^T y, r) g(p, q~, r) dq~ dy.
/// Only g needs to decay in q; f may be constant in any direction.
GaussianFamily star_product_position_form(const GaussianFamily& f, const GaussianFamily& g, const Eigen::MatrixXd& J,
                                          double hbar);

/// The same integral by tensor Gauss-Hermite quadrature: inner over q~, outer over y.
/// Nodes follow the Gaussian envelopes; values are plain sums of the integrand.
QuadratureEstimate star_product_point(const GaussianFamily& f, const GaussianFamily& g, const Eigen::MatrixXd& J,
                                      double hbar, const Eigen::VectorXd& point, int order);

/// f^* = ((f^v)^*)^ with (F^*)(x,y) = conj F(-x,-y) e-bar[hbar r x.y + (hbar r^2/2) y^T J y].
GaussianFamily involution(const GaussianFamily& f, const Eigen::MatrixXd& J, double hbar);
Gaussian involution_fourier_slice(const Gaussian& F, const Eigen::MatrixXd& J, double hbar, double r);

GaussianFamily conjugate(const GaussianFamily& f);
GaussianFamily pointwise_product(const GaussianFamily& f, const GaussianFamily& g);

// ---------------------------------------------------------------------------
// Semiclassical limit

/// {f, g} at point = (p, q, r) from exact Gaussian gradients; f, g joint, position side.
cd poisson_reference(const GaussianFamily& f, const GaussianFamily& g, const Eigen::MatrixXd& J,
                     const Eigen::VectorXd& point);

/// (1/hbar)(f x g - g x f)(point) - (i / 2 pi) {f, g}(point)
cd commutator_residual(const GaussianFamily& f, const GaussianFamily& g, const Eigen::MatrixXd& J, double hbar,
                       const Eigen::VectorXd& point);

struct SurrogateGrid {
  int points = 16;         // per (p, q) axis
  double half_width = 4;   // around the origin
  int r_points = 9;        // sup over r taken on these nodes
  double r_sigmas = 3;
};

struct ConvergenceRow {
  double hbar = 0;
  double sup_residual = 0;
  double l1_residual = 0;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  double slope_sup = 0;
  double slope_l1 = 0;
  bool exact_zero = false;  // every residual is identically zero
  std::string csv() const;
};

/// L^1(H/Z, C_0(G_1)) surrogate of the residual: int dh sup_r |R^v(h, r)| on a grid.
double l1_surrogate(const GaussianFamily& f, const GaussianFamily& g, const Eigen::MatrixXd& J, double hbar,
                    const SurrogateGrid& grid);

/// Throws std::invalid_argument for fewer than 4 hbar values and std::domain_error
/// when the fit is degenerate (fewer than 2 nonzero residuals but not all zero).
ConvergenceStudy convergence_study(const GaussianFamily& f, const GaussianFamily& g, const Eigen::MatrixXd& J,
                                   const std::vector<double>& hbar_list, const std::vector<Eigen::VectorXd>& points,
                                   const SurrogateGrid& grid);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------
// Quantum group maps (Fourier side, hbar = 1)

/// kappa(f)(x,y,r) = e-bar[(r^2/2) y^T J y] e-bar[r x.y] f(-x - r J y, -y, -r);
/// without the cocycle both phases are dropped.
GaussianFamily antipode_kappa(const GaussianFamily& F, const Eigen::MatrixXd& J, bool with_cocycle = true);

using FourierFunction = std::function<cd(const Eigen::VectorXd& h, double r)>;

/// (L_F xi)(h, r) = int F(h~, r) sigma^r(h~, h - h~) xi(h - h~, r) dh~ by quadrature.
QuadratureEstimate apply_Lf(const GaussianFamily& F, const FourierFunction& xi, const Eigen::MatrixXd& J,
                            const Eigen::VectorXd& h, double r, int order);
/// (L_F^* psi)(h, r) = int conj F(t, r) conj sigma^r(t, h) psi(h + t, r) dt.
QuadratureEstimate apply_Lf_adjoint(const GaussianFamily& F, const FourierFunction& psi, const Eigen::MatrixXd& J,
                                    const Eigen::VectorXd& h, double r, int order);

/// (K xi)(h, r) = conj xi(x + r J y, y, -r)
FourierFunction apply_K(const FourierFunction& xi, const Eigen::MatrixXd& J);

/// (K L_F^* K xi - L_{kappa F} xi)(h, r)
cd K_conjugation_residual(const GaussianFamily& F, const FourierFunction& xi, const Eigen::MatrixXd& J,
                          const Eigen::VectorXd& h, double r, int order);

struct SlicePair {
  GaussianFamily f;
  GaussianFamily g;
};
/// f(x,y;r) = int eta(x,y,r+s) conj zeta(x + r J y, y, s) ds and the companion g built from the
/// adjoint of V_Theta; both in closed form (eta, zeta joint, Fourier side).
SlicePair slice_functions(const GaussianFamily& eta, const GaussianFamily& zeta, const Eigen::MatrixXd& J);
/// max |g - kappa(f)| over the points (x, y, r)
double antipode_slice_residual(const SlicePair& s, const Eigen::MatrixXd& J, const std::vector<Eigen::VectorXd>& points);

/// phi(f) = int f dp dq dr (position side)
cd haar_phi(const GaussianFamily& f, int r_nodes = 96);
/// phi_S(F) = int F(0, 0; r) dr (Fourier side)
cd haar_phiS(const GaussianFamily& F, int r_nodes = 96);

struct LeftInvarianceSides {
  cd lhs;  // (id (x) phi_S)((1 (x) f) Delta g)
  cd rhs;  // kappa((id (x) phi_S)((Delta f)(1 (x) g)))
  cd residual() const { return lhs - rhs; }
};
/// f, g joint Fourier-side families; point = (x, y, r); r~ integrals in closed form.
LeftInvarianceSides left_invariance(const GaussianFamily& f, const GaussianFamily& g, const Eigen::MatrixXd& J,
                                    const Eigen::VectorXd& point);

/// (Delta f)(g; g') = f(g g')
cd delta_function(const GaussianFamily& f, const GroupElementG<double>& a, const GroupElementG<double>& b,
                  const Eigen::MatrixXd& J);

// ---------------------------------------------------------------------------

struct QuantizationTolerances {
  double closed_form = 1e-10;
  double oracle_relative = 1e-6;
  double quadrature = 1e-5;
  double min_slope = 0.9;
  double positivity = -1e-8;
};

struct QuantizationConfig {
  int n = 2;
  Eigen::MatrixXd J;
  std::vector<double> hbar_list{0.2, 0.1, 0.05, 0.025, 0.0125};
  int oracle_order = 32;
  int lf_order = 20;
  int r_nodes = 96;
  SurrogateGrid surrogate;
  QuantizationTolerances tol;
  int samples = 20;
  int pairs = 5;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
  /// Reads the "quantization" block of a run configuration; missing keys keep defaults.
  static QuantizationConfig from_json(const nlohmann::json& j, const Eigen::MatrixXd& J);
};

/// Points drawn uniformly from the 2-sigma box of |env|.
std::vector<Eigen::VectorXd> sample_points(const Gaussian& env, int count, std::mt19937_64& rng);

}  // namespace qgroup
