#include "qgroup/quantization.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "qgroup/algebra.hpp"
#include "qgroup/grid.hpp"

namespace qgroup {

namespace {

constexpr double kPi = M_PI;
const cd kI(0, 1);

std::vector<int> range(int begin, int end) {
  std::vector<int> v;
  for (int i = begin; i < end; ++i) v.push_back(i);
  return v;
}

cd e_of(double t) { return std::polar(1.0, 2 * kPi * t); }

REnvelope joint_r_envelope(const Gaussian& joint) {
  const int d = joint.dim();
  const Eigen::MatrixXd R = joint.A().real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R);
  if (es.eigenvalues()(0) <= 0) return {0.0, 1.0};
  const Eigen::MatrixXd cov = (2 * kPi * R).inverse();
  const Eigen::VectorXd m = R.ldlt().solve(joint.b().real());
  return {m(d - 1), std::sqrt(cov(d - 1, d - 1))};
}

REnvelope product_envelope(const REnvelope& a, const REnvelope& b) {
  const double pa = 1 / (a.sigma * a.sigma), pb = 1 / (b.sigma * b.sigma);
  return {(a.center * pa + b.center * pb) / (pa + pb), 1 / std::sqrt(pa + pb)};
}

void require_side(const GaussianFamily& f, Side side, const char* what) {
  if (f.side() != side) throw std::invalid_argument(std::string(what) + ": expected a " + side_name(side) + "-side function");
}

void require_joint(const GaussianFamily& f, const char* what) {
  if (!f.joint()) throw std::invalid_argument(std::string(what) + ": needs a jointly Gaussian input");
}

// sigma_hbar^r exponent: -hbar r x.y' - (hbar r^2 / 2) y'.(J y)
double sigma_exp(const Eigen::MatrixXd& J, double hbar, double r, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(J.rows());
  const Eigen::VectorXd ax = a.head(n), ay = a.tail(n), by = b.tail(n);
  return -hbar * r * ax.dot(by) - hbar * r * r / 2 * by.dot(J * ay);
}

// (x, y) -> (x + r J y, y)
Eigen::VectorXd shear(const Eigen::MatrixXd& J, double r, const Eigen::VectorXd& h) {
  const int n = static_cast<int>(J.rows());
  Eigen::VectorXd out = h;
  out.head(n) += r * J * h.tail(n);
  return out;
}

// phase e-bar[r x.y + (r^2/2) y^T J y] as a quadratic form on (x, y)
Eigen::MatrixXd kappa_phase(const Eigen::MatrixXd& J, double r) {
  const int n = static_cast<int>(J.rows());
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) Q(i, n + i) = -r;
  Q.bottomRightCorner(n, n) = -(r * r / 2) * J;
  return Q;
}

struct Node {
  Eigen::VectorXd u;
  double w;
};

std::vector<Node> tensor_nodes(const Gaussian::Envelope& env, int order) {
  const int d = static_cast<int>(env.center.size());
  const auto rule = gauss_hermite(order);
  std::vector<Node> nodes;
  const double det = std::abs(env.C.determinant());
  std::vector<int> idx(d, 0);
  Eigen::VectorXd t(d);
  for (;;) {
    double w = det;
    for (int k = 0; k < d; ++k) {
      t(k) = rule.nodes(idx[k]);
      w *= rule.weights(idx[k]) * std::exp(t(k) * t(k));
    }
    nodes.push_back({env.center + env.C * t, w});
    int k = 0;
    while (k < d && ++idx[k] == order) idx[k++] = 0;
    if (k == d) break;
  }
  return nodes;
}

}  // namespace

std::string side_name(Side s) { return s == Side::position ? "position" : "fourier"; }

Skew<double> skew_from_eigen(const Eigen::MatrixXd& J) {
  Skew<double> out(static_cast<int>(J.rows()));
  for (int i = 0; i < J.rows(); ++i)
    for (int k = 0; k < J.cols(); ++k) out(i, k) = J(i, k);
  return out;
}

// ---------------------------------------------------------------------------

GaussianFamily::GaussianFamily(int n, Side side, SliceFn slice, REnvelope env)
    : n_(n), side_(side), slice_(std::move(slice)), env_(env) {}

GaussianFamily GaussianFamily::from_joint(const Gaussian& joint, Side side) {
  if (joint.dim() % 2 != 1) throw std::invalid_argument("joint Gaussian needs 2n+1 coordinates");
  const int n = (joint.dim() - 1) / 2;
  GaussianFamily f(
      n, side,
      [joint, n](double r) { return joint.restrict({2 * n}, Eigen::VectorXd::Constant(1, r)); },
      joint.is_zero() ? REnvelope{} : joint_r_envelope(joint));
  f.joint_ = joint;
  return f;
}

GaussianFamily GaussianFamily::random(int n, Side side, std::mt19937_64& rng, double scale) {
  return from_joint(Gaussian::random(2 * n + 1, rng, scale), side);
}

GaussianFamily GaussianFamily::zero(int n, Side side) { return from_joint(Gaussian::zero(2 * n + 1), side); }

cd GaussianFamily::operator()(const Eigen::VectorXd& u, double r) const {
  if (joint_) {
    Eigen::VectorXd w(u.size() + 1);
    w << u, r;
    return (*joint_)(w);
  }
  return slice(r)(u);
}

cd GaussianFamily::operator()(const Eigen::VectorXd& point) const {
  return (*this)(point.head(point.size() - 1), point(point.size() - 1));
}

nlohmann::json GaussianFamily::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  j["side"] = side_name(side_);
  j["r_envelope"] = {{"center", env_.center}, {"sigma", env_.sigma}};
  if (joint_) j["joint"] = joint_->to_json();
  return j;
}

// ---------------------------------------------------------------------------

GaussianFamily partial_fourier(const GaussianFamily& f) {
  const int n = f.n();
  const int sign = f.side() == Side::position ? 1 : -1;
  const Side out = f.side() == Side::position ? Side::fourier : Side::position;
  if (f.joint()) return GaussianFamily::from_joint(f.joint()->fourier(range(0, 2 * n), sign), out);
  return GaussianFamily(
      n, out, [f, n, sign](double r) { return f.slice(r).fourier(range(0, 2 * n), sign); }, f.r_envelope());
}

Gaussian twisted_convolution(const Gaussian& F, const Gaussian& G, const Eigen::MatrixXd& J, double hbar, double r) {
  const int n = F.dim() / 2;
  if (G.dim() != 2 * n || J.rows() != n) throw std::invalid_argument("twisted_convolution: dimension mismatch");
  // variables (h, h~): x = 0..n, y = n..2n, x~ = 2n..3n, y~ = 3n..4n
  Eigen::MatrixXd MF = Eigen::MatrixXd::Zero(2 * n, 4 * n), MG = Eigen::MatrixXd::Zero(2 * n, 4 * n);
  for (int i = 0; i < 2 * n; ++i) {
    MF(i, 2 * n + i) = 1;
    MG(i, i) = 1;
    MG(i, 2 * n + i) = -1;
  }
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(2 * n);
  // sigma(h~, h - h~) = e[-hbar r x~.(y - y~) - (hbar r^2/2) (y - y~).(J y~)]
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  const double c1 = hbar * r, c2 = hbar * r * r / 2;
  for (int i = 0; i < n; ++i) {
    Q(2 * n + i, n + i) -= c1;
    Q(2 * n + i, 3 * n + i) += c1;
    for (int k = 0; k < n; ++k) {
      Q(n + i, 3 * n + k) -= c2 * J(i, k);
      Q(3 * n + i, 3 * n + k) += c2 * J(i, k);
    }
  }
  const Gaussian integrand = (F.substitute(MF, z) * G.substitute(MG, z)).with_phase(Q, Eigen::VectorXd::Zero(4 * n));
  return integrand.integrate_out(range(2 * n, 4 * n));
}

GaussianFamily star_product(const GaussianFamily& f, const GaussianFamily& g, const Eigen::MatrixXd& J, double hbar) {
  require_side(f, Side::position, "star_product");
  require_side(g, Side::position, "star_product");
  const int n = f.n();
  return GaussianFamily(
      n, Side::position,
      [f, g, J, hbar, n](double r) {
        const auto all = range(0, 2 * n);
        const Gaussian F = f.slice(r).fourier(all, 1), G = g.slice(r).fourier(all, 1);
        return twisted_convolution(F, G, J, hbar, r).fourier(all, -1);
      },
      product_envelope(f.r_envelope(), g.r_envelope()));
}

namespace {

// integrand of the position form on (p, q, y, q~) at one r
Gaussian position_form_integrand(const Gaussian& fr, const Gaussian& gr, const Eigen::MatrixXd& J, double hbar,
                                 double r) {
  const int n = fr.dim() / 2;
  Eigen::MatrixXd Mf = Eigen::MatrixXd::Zero(2 * n, 4 * n), Mg = Eigen::MatrixXd::Zero(2 * n, 4 * n);
  for (int i = 0; i < n; ++i) {
    Mf(i, i) = 1;
    Mf(i, 2 * n + i) = hbar * r;
    Mf(n + i, n + i) = 1;
    for (int k = 0; k < n; ++k) Mf(n + i, 2 * n + k) += hbar * r * r / 2 * J(k, i);
    Mg(i, i) = 1;
    Mg(n + i, 3 * n + i) = 1;
  }
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  for (int k = 0; k < n; ++k) {
    Q(3 * n + k, 2 * n + k) = 1;
    Q(n + k, 2 * n + k) = -1;
  }
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(2 * n);
  return (fr.substitute(Mf, z) * gr.substitute(Mg, z)).with_phase(Q, Eigen::VectorXd::Zero(4 * n));
}

}  // namespace

GaussianFamily star_product_position_form(const GaussianFamily& f, const GaussianFamily& g, const Eigen::MatrixXd& J,
                                          double hbar) {
  require_side(f, Side::position, "star_product_position_form");
  require_side(g, Side::position, "star_product_position_form");
  const int n = f.n();
  return GaussianFamily(
      n, Side::position,
      [f, g, J, hbar, n](double r) {
        const Gaussian w = position_form_integrand(f.slice(r), g.slice(r), J, hbar, r);
        return w.integrate_out(range(3 * n, 4 * n)).integrate_out(range(2 * n, 3 * n));
      },
      product_envelope(f.r_envelope(), g.r_envelope()));
}

QuadratureEstimate star_product_point(const GaussianFamily& f, const GaussianFamily& g, const Eigen::MatrixXd& J,
                                      double hbar, const Eigen::VectorXd& point, int order) {
  require_side(f, Side::position, "star_product_point");
  require_side(g, Side::position, "star_product_point");
  const int n = f.n();
  const double r = point(2 * n);
  const Eigen::VectorXd p = point.head(n), q = point.segment(n, n);
  const Gaussian fr = f.slice(r), gr = g.slice(r);

  // The q~ integral oscillates like e[q~.y]; its real-node quadrature does not converge once |y| is
  // large. g(p, .) is an entire Gaussian, so the contour is moved to the saddle A^-1 (b + i y) and
  // the nodes keep the shape of the real envelope. y nodes follow the envelope left after the q~ integral.
  const Gaussian gq = gr.restrict(range(0, n), p);
  Eigen::VectorXd pq(2 * n);
  pq << p, q;
  const Gaussian gy = position_form_integrand(fr, gr, J, hbar, r).restrict(range(0, 2 * n), pq).integrate_out(range(n, 2 * n));
  const auto env_q = gq.envelope(), env_y = gy.envelope();
  const Eigen::MatrixXd JT = J.transpose();
  const Eigen::MatrixXcd& Ag = gq.A();
  const Eigen::PartialPivLU<Eigen::MatrixXcd> Alu(Ag);

  auto run = [&](int N) {
    const auto qn = tensor_nodes({Eigen::VectorXd::Zero(n), env_q.C}, N), yn = tensor_nodes(env_y, N);
    Eigen::VectorXd arg(2 * n);
    cd total = 0;
    for (const auto& ym : yn) {
      arg << p + hbar * r * ym.u, q + (hbar * r * r / 2) * JT * ym.u;
      const cd fv = fr(arg);
      if (fv == cd(0)) continue;
      const Eigen::VectorXcd yc = ym.u.cast<cd>();
      const Eigen::VectorXcd saddle = Alu.solve(gq.b() + kI * yc);
      cd inner = 0;
      for (const auto& qj : qn) {
        const Eigen::VectorXcd w = saddle + qj.u.cast<cd>();
        // log of g(w) e[(w - q).y] continued to complex w
        const cd expo = gq.log_amplitude() - kPi * (w.transpose() * Ag * w)(0) + 2 * kPi * (gq.b().transpose() * w)(0) +
                        2 * kPi * kI * ((w - q.cast<cd>()).transpose() * yc)(0);
        inner += qj.w * std::exp(expo);
      }
      total += ym.w * fv * inner;
    }
    return total;
  };
  const cd full = run(order);
  const cd half = run(std::max(2, order / 2));
  return {full, std::abs(full - half)};
}

Gaussian involution_fourier_slice(const Gaussian& F, const Eigen::MatrixXd& J, double hbar, double r) {
  const int d = F.dim();
  const Eigen::MatrixXd minus = -Eigen::MatrixXd::Identity(d, d);
  // conj F(-h) e-bar[hbar r x.y + (hbar r^2/2) y^T J y]
  return F.conj().substitute(minus, Eigen::VectorXd::Zero(d)).with_phase(kappa_phase(J, hbar * r) * 1.0, Eigen::VectorXd::Zero(d));
}

GaussianFamily involution(const GaussianFamily& f, const Eigen::MatrixXd& J, double hbar) {
  const int n = f.n();
  const Side side = f.side();
  return GaussianFamily(
      n, side,
      [f, J, hbar, n, side](double r) {
        const auto all = range(0, 2 * n);
        if (side == Side::fourier) return involution_fourier_slice(f.slice(r), J, hbar, r);
        return involution_fourier_slice(f.slice(r).fourier(all, 1), J, hbar, r).fourier(all, -1);
      },
      f.r_envelope());
}

GaussianFamily conjugate(const GaussianFamily& f) {
  if (f.joint()) return GaussianFamily::from_joint(f.joint()->conj(), f.side());
  return GaussianFamily(
      f.n(), f.side(), [f](double r) { return f.slice(r).conj(); }, f.r_envelope());
}

GaussianFamily pointwise_product(const GaussianFamily& f, const GaussianFamily& g) {
  if (f.side() != g.side() || f.n() != g.n()) throw std::invalid_argument("pointwise_product: incompatible inputs");
  if (f.joint() && g.joint()) return GaussianFamily::from_joint(*f.joint() * *g.joint(), f.side());
  return GaussianFamily(
      f.n(), f.side(), [f, g](double r) { return f.slice(r) * g.slice(r); },
      product_envelope(f.r_envelope(), g.r_envelope()));
}

// ---------------------------------------------------------------------------

cd poisson_reference(const GaussianFamily& f, const GaussianFamily& g, const Eigen::MatrixXd& J,
                     const Eigen::VectorXd& point) {
  require_side(f, Side::position, "poisson_reference");
  require_side(g, Side::position, "poisson_reference");
  require_joint(f, "poisson_reference");
  require_joint(g, "poisson_reference");
  const int n = f.n();
  auto covector = [n](const Eigen::VectorXcd& d) {
    Covector<cd> c;
    for (int i = 0; i < n; ++i) {
      c.x.push_back(d(i));
      c.y.push_back(d(n + i));
    }
    c.z = d(2 * n);
    return c;
  };
  Skew<cd> Jc(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) Jc(i, k) = J(i, k);
  return poisson_bracket_cov<cd>(cd(point(2 * n)), covector(f.joint()->gradient(point)),
                                 covector(g.joint()->gradient(point)), Jc);
}

cd commutator_residual(const GaussianFamily& f, const GaussianFamily& g, const Eigen::MatrixXd& J, double hbar,
                       const Eigen::VectorXd& point) {
  if (hbar <= 0) throw std::invalid_argument("commutator_residual: hbar must be positive");
  const int n = f.n();
  const double r = point(2 * n);
  const Eigen::VectorXd u = point.head(2 * n);
  const cd fg = star_product(f, g, J, hbar).slice(r)(u);
  const cd gf = star_product(g, f, J, hbar).slice(r)(u);
  return (fg - gf) / hbar - kI / (2 * kPi) * poisson_reference(f, g, J, point);
}

double l1_surrogate(const GaussianFamily& f, const GaussianFamily& g, const Eigen::MatrixXd& J, double hbar,
                    const SurrogateGrid& grid) {
  const int n = f.n();
  const REnvelope env = product_envelope(f.r_envelope(), g.r_envelope());
  std::vector<GridAxis> axes(2 * n, GridAxis{0.0, grid.half_width, grid.points});
  const auto fg = star_product(f, g, J, hbar), gf = star_product(g, f, J, hbar);
  std::vector<double> sup;
  double cell = 0;
  for (int k = 0; k < grid.r_points; ++k) {
    const double r = grid.r_points == 1
                         ? env.center
                         : env.center + grid.r_sigmas * env.sigma * (2.0 * k / (grid.r_points - 1) - 1.0);
    const Gaussian a = fg.slice(r), b = gf.slice(r);
    Eigen::VectorXd point(2 * n + 1);
    const auto res = GridFunction::sample(axes, [&](const Eigen::VectorXd& u) {
      point << u, r;
      return (a(u) - b(u)) / hbar - kI / (2 * kPi) * poisson_reference(f, g, J, point);
    });
    const auto hat = res.fourier(1);
    if (sup.empty()) sup.assign(hat.size(), 0.0);
    for (std::size_t i = 0; i < hat.size(); ++i) sup[i] = std::max(sup[i], std::abs(hat.values()[i]));
    cell = hat.cell_volume();
  }
  double total = 0;
  for (double s : sup) total += s;
  return total * cell;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0 || y[i] <= 0) throw std::domain_error("loglog_slope: nonpositive value");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::string ConvergenceStudy::csv() const {
  std::ostringstream os;
  os << "hbar,sup_residual,l1_residual\n";
  os << std::setprecision(12) << std::scientific;
  for (const auto& row : rows) os << row.hbar << ',' << row.sup_residual << ',' << row.l1_residual << '\n';
  return os.str();
}

ConvergenceStudy convergence_study(const GaussianFamily& f, const GaussianFamily& g, const Eigen::MatrixXd& J,
                                   const std::vector<double>& hbar_list, const std::vector<Eigen::VectorXd>& points,
                                   const SurrogateGrid& grid) {
  if (hbar_list.size() < 4) throw std::invalid_argument("convergence_study: need at least 4 hbar values");
  ConvergenceStudy study;
  std::vector<double> hs, sups, l1s;
  for (double h : hbar_list) {
    ConvergenceRow row{h, 0, 0};
    for (const auto& p : points) row.sup_residual = std::max(row.sup_residual, std::abs(commutator_residual(f, g, J, h, p)));
    row.l1_residual = l1_surrogate(f, g, J, h, grid);
    study.rows.push_back(row);
    hs.push_back(h);
    sups.push_back(row.sup_residual);
    l1s.push_back(row.l1_residual);
  }
  auto nonzero = [](const std::vector<double>& v) {
    int c = 0;
    for (double x : v) c += x != 0;
    return c;
  };
  if (nonzero(sups) == 0 && nonzero(l1s) == 0) {
    study.exact_zero = true;
    return study;
  }
  if (nonzero(sups) < static_cast<int>(sups.size()) || nonzero(l1s) < static_cast<int>(l1s.size()))
    throw std::domain_error("convergence_study: degenerate fit, some residuals are exactly zero");
  study.slope_sup = loglog_slope(hs, sups);
  study.slope_l1 = loglog_slope(hs, l1s);
  return study;
}

// ---------------------------------------------------------------------------

GaussianFamily antipode_kappa(const GaussianFamily& F, const Eigen::MatrixXd& J, bool with_cocycle) {
  require_side(F, Side::fourier, "antipode_kappa");
  const int n = F.n();
  REnvelope env = F.r_envelope();
  env.center = -env.center;
  return GaussianFamily(
      n, Side::fourier,
      [F, J, n, with_cocycle](double r) {
        // (x, y) -> (-x - r J y, -y)
        Eigen::MatrixXd M = -Eigen::MatrixXd::Identity(2 * n, 2 * n);
        M.topRightCorner(n, n) = -r * J;
        const Gaussian moved = F.slice(-r).substitute(M, Eigen::VectorXd::Zero(2 * n));
        if (!with_cocycle) return moved;
        return moved.with_phase(kappa_phase(J, r), Eigen::VectorXd::Zero(2 * n));
      },
      env);
}

QuadratureEstimate apply_Lf(const GaussianFamily& F, const FourierFunction& xi, const Eigen::MatrixXd& J,
                            const Eigen::VectorXd& h, double r, int order) {
  require_side(F, Side::fourier, "apply_Lf");
  const Gaussian Fr = F.slice(r);
  if (Fr.is_zero()) return {0, 0};
  const auto env = Fr.envelope();
  return integrate_hermite_checked(env.center, env.C, order, [&](const Eigen::VectorXd& t) {
    const Eigen::VectorXd rest = h - t;
    return Fr(t) * e_of(sigma_exp(J, 1.0, r, t, rest)) * xi(rest, r);
  });
}

QuadratureEstimate apply_Lf_adjoint(const GaussianFamily& F, const FourierFunction& psi, const Eigen::MatrixXd& J,
                                    const Eigen::VectorXd& h, double r, int order) {
  require_side(F, Side::fourier, "apply_Lf_adjoint");
  const Gaussian Fr = F.slice(r);
  if (Fr.is_zero()) return {0, 0};
  const auto env = Fr.envelope();
  return integrate_hermite_checked(env.center, env.C, order, [&](const Eigen::VectorXd& t) {
    return std::conj(Fr(t) * e_of(sigma_exp(J, 1.0, r, t, h))) * psi(h + t, r);
  });
}

FourierFunction apply_K(const FourierFunction& xi, const Eigen::MatrixXd& J) {
  return [xi, J](const Eigen::VectorXd& h, double r) { return std::conj(xi(shear(J, r, h), -r)); };
}

cd K_conjugation_residual(const GaussianFamily& F, const FourierFunction& xi, const Eigen::MatrixXd& J,
                          const Eigen::VectorXd& h, double r, int order) {
  const cd lhs = std::conj(apply_Lf_adjoint(F, apply_K(xi, J), J, shear(J, r, h), -r, order).value);
  const cd rhs = apply_Lf(antipode_kappa(F, J), xi, J, h, r, order).value;
  return lhs - rhs;
}

SlicePair slice_functions(const GaussianFamily& eta, const GaussianFamily& zeta, const Eigen::MatrixXd& J) {
  require_side(eta, Side::fourier, "slice_functions");
  require_side(zeta, Side::fourier, "slice_functions");
  require_joint(eta, "slice_functions");
  require_joint(zeta, "slice_functions");
  const int n = eta.n();
  const Gaussian E = *eta.joint(), Z = *zeta.joint();
  const int d = 2 * n + 1;
  const REnvelope ee = eta.r_envelope(), ez = zeta.r_envelope();
  const double sig = std::sqrt(ee.sigma * ee.sigma + ez.sigma * ez.sigma);

  // variables (x, y, s); s is integrated out
  GaussianFamily f(
      n, Side::fourier,
      [E, Z, J, n, d](double r) {
        Eigen::VectorXd shift = Eigen::VectorXd::Zero(d);
        shift(2 * n) = r;
        Eigen::MatrixXd M = Eigen::MatrixXd::Identity(d, d);
        M.block(0, n, n, n) += r * J;
        const Gaussian w = E.substitute(Eigen::MatrixXd::Identity(d, d), shift) * Z.conj().substitute(M, Eigen::VectorXd::Zero(d));
        return w.integrate_out({2 * n});
      },
      {ee.center - ez.center, sig});

  GaussianFamily g(
      n, Side::fourier,
      [E, Z, J, n, d](double r) {
        Eigen::MatrixXd Me = -Eigen::MatrixXd::Identity(d, d);
        Me.block(0, n, n, n) = -r * J;
        Me(2 * n, 2 * n) = 1;
        Eigen::VectorXd shift = Eigen::VectorXd::Zero(d);
        shift(2 * n) = -r;
        Eigen::MatrixXd Mz = -Eigen::MatrixXd::Identity(d, d);
        Mz(2 * n, 2 * n) = 1;
        const Gaussian w = E.substitute(Me, shift) * Z.conj().substitute(Mz, Eigen::VectorXd::Zero(d));
        return w.integrate_out({2 * n}).with_phase(kappa_phase(J, r), Eigen::VectorXd::Zero(2 * n));
      },
      {ez.center - ee.center, sig});
  return {f, g};
}

double antipode_slice_residual(const SlicePair& s, const Eigen::MatrixXd& J, const std::vector<Eigen::VectorXd>& points) {
  const auto kf = antipode_kappa(s.f, J);
  double worst = 0;
  for (const auto& p : points) worst = std::max(worst, std::abs(s.g(p) - kf(p)));
  return worst;
}

cd haar_phi(const GaussianFamily& f, int r_nodes) {
  require_side(f, Side::position, "haar_phi");
  if (f.joint()) return f.joint()->integral();
  const auto& env = f.r_envelope();
  const auto rule = gauss_legendre(r_nodes, env.center - 8 * env.sigma, env.center + 8 * env.sigma);
  cd s = 0;
  for (int i = 0; i < r_nodes; ++i) s += rule.weights(i) * f.slice(rule.nodes(i)).integral();
  return s;
}

cd haar_phiS(const GaussianFamily& F, int r_nodes) {
  require_side(F, Side::fourier, "haar_phiS");
  const int n = F.n();
  if (F.joint()) return F.joint()->restrict(range(0, 2 * n), Eigen::VectorXd::Zero(2 * n)).integral();
  const auto& env = F.r_envelope();
  const auto rule = gauss_legendre(r_nodes, env.center - 8 * env.sigma, env.center + 8 * env.sigma);
  cd s = 0;
  for (int i = 0; i < r_nodes; ++i) s += rule.weights(i) * F.slice(rule.nodes(i))(Eigen::VectorXd::Zero(2 * n));
  return s;
}

namespace {

// int a(sx + ca, ...) b(...) e[s x.y] e-bar[(s^2/2) y^T J y] ds with both arguments affine in s
cd affine_r_integral(const Gaussian& A, const Eigen::VectorXd& da, const Eigen::VectorXd& ca, const Gaussian& B,
                     const Eigen::VectorXd& db, const Eigen::VectorXd& cb, double xy, double yJy) {
  const Gaussian w = A.substitute(da, ca) * B.substitute(db, cb);
  Eigen::MatrixXd Q(1, 1);
  Q(0, 0) = -yJy / 2;
  return w.with_phase(Q, Eigen::VectorXd::Constant(1, xy)).integral();
}

}  // namespace

LeftInvarianceSides left_invariance(const GaussianFamily& f, const GaussianFamily& g, const Eigen::MatrixXd& J,
                                    const Eigen::VectorXd& point) {
  require_side(f, Side::fourier, "left_invariance");
  require_side(g, Side::fourier, "left_invariance");
  require_joint(f, "left_invariance");
  require_joint(g, "left_invariance");
  const int n = f.n(), d = 2 * n + 1;
  const Gaussian F = *f.joint(), G = *g.joint();

  // s -> (x0 + s u, y0, r0 + s): direction vector with x-part u and r-part 1
  auto dir = [n, d](const Eigen::VectorXd& u) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
    v.head(n) = u;
    v(2 * n) = 1;
    return v;
  };
  auto at = [n, d](const Eigen::VectorXd& x, const Eigen::VectorXd& y, double r) {
    Eigen::VectorXd v(d);
    v << x, y, r;
    return v;
  };
  auto side_integral = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y, double r, bool lhs) {
    const Eigen::VectorXd Jy = J * y;
    const double xy = x.dot(y), yJy = y.dot(Jy);
    if (lhs)  // f(-x + s Jy, -y, s) g(x - s Jy, y, r + s)
      return affine_r_integral(F, dir(Jy), at(-x, -y, 0), G, dir(-Jy), at(x, y, r), xy, yJy);
    // f(x - s Jy, y, r + s) g(-x + s Jy, -y, s)
    return affine_r_integral(F, dir(-Jy), at(x, y, r), G, dir(Jy), at(-x, -y, 0), xy, yJy);
  };

  const Eigen::VectorXd x = point.head(n), y = point.segment(n, n);
  const double r = point(2 * n);
  LeftInvarianceSides out;
  out.lhs = side_integral(x, y, r, true);
  const Eigen::VectorXd xs = -x - r * J * y;
  const cd phase = e_of(-(r * r / 2) * y.dot(J * y) - r * x.dot(y));
  out.rhs = phase * side_integral(xs, -y, -r, false);
  return out;
}

cd delta_function(const GaussianFamily& f, const GroupElementG<double>& a, const GroupElementG<double>& b,
                  const Eigen::MatrixXd& J) {
  require_side(f, Side::position, "delta_function");
  const auto c = multiply_g(a, b, skew_from_eigen(J)).coords();
  return f(Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size())));
}

// ---------------------------------------------------------------------------

void QuantizationConfig::validate() const {
  if (n < 1 || J.rows() != n || J.cols() != n) throw std::invalid_argument("quantization: J must be n x n");
  if ((J + J.transpose()).cwiseAbs().maxCoeff() > 0) throw std::invalid_argument("quantization: J must be skew-symmetric");
  if (hbar_list.empty()) throw std::invalid_argument("quantization: hbar_list is empty");
  for (std::size_t i = 0; i < hbar_list.size(); ++i) {
    if (!(hbar_list[i] > 0)) throw std::invalid_argument("quantization: hbar values must be positive");
    if (i > 0 && !(hbar_list[i] < hbar_list[i - 1])) throw std::invalid_argument("quantization: hbar_list must be sorted descending");
  }
  if (oracle_order < 2 || lf_order < 2 || r_nodes < 2) throw std::invalid_argument("quantization: quadrature orders must be >= 2");
  if (surrogate.points < 4 || (surrogate.points & (surrogate.points - 1)) != 0)
    throw std::invalid_argument("quantization: surrogate grid points must be a power of two >= 4");
  if (!(surrogate.half_width > 0) || surrogate.r_points < 1 || !(surrogate.r_sigmas > 0))
    throw std::invalid_argument("quantization: bad surrogate grid");
  if (!(tol.closed_form > 0) || !(tol.oracle_relative > 0) || !(tol.quadrature > 0) || !(tol.min_slope > 0))
    throw std::invalid_argument("quantization: tolerances must be positive");
  if (samples < 1 || pairs < 1) throw std::invalid_argument("quantization: samples and pairs must be positive");
}

QuantizationConfig QuantizationConfig::from_json(const nlohmann::json& j, const Eigen::MatrixXd& J) {
  QuantizationConfig c;
  c.n = static_cast<int>(J.rows());
  c.J = J;
  if (j.is_null()) return c;
  if (!j.is_object()) throw std::invalid_argument("quantization block must be an object");
  c.hbar_list = j.value("hbar_list", c.hbar_list);
  c.oracle_order = j.value("oracle_order", c.oracle_order);
  c.lf_order = j.value("lf_order", c.lf_order);
  c.r_nodes = j.value("r_nodes", c.r_nodes);
  c.samples = j.value("samples", c.samples);
  c.pairs = j.value("pairs", c.pairs);
  if (j.contains("surrogate")) {
    const auto& s = j.at("surrogate");
    c.surrogate.points = s.value("points", c.surrogate.points);
    c.surrogate.half_width = s.value("half_width", c.surrogate.half_width);
    c.surrogate.r_points = s.value("r_points", c.surrogate.r_points);
    c.surrogate.r_sigmas = s.value("r_sigmas", c.surrogate.r_sigmas);
  }
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    c.tol.closed_form = t.value("closed_form", c.tol.closed_form);
    c.tol.oracle_relative = t.value("oracle_relative", c.tol.oracle_relative);
    c.tol.quadrature = t.value("quadrature", c.tol.quadrature);
    c.tol.min_slope = t.value("min_slope", c.tol.min_slope);
    c.tol.positivity = t.value("positivity", c.tol.positivity);
  }
  c.validate();
  return c;
}

std::vector<Eigen::VectorXd> sample_points(const Gaussian& env, int count, std::mt19937_64& rng) {
  const Eigen::MatrixXd R = env.A().real();
  const Eigen::VectorXd center = R.ldlt().solve(env.b().real());
  const Eigen::MatrixXd cov = (2 * kPi * R).inverse();
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Eigen::VectorXd> pts;
  for (int c = 0; c < count; ++c) {
    Eigen::VectorXd p(env.dim());
    for (int i = 0; i < env.dim(); ++i) p(i) = center(i) + 2 * std::sqrt(cov(i, i)) * u(rng);
    pts.push_back(p);
  }
  return pts;
}

}  // namespace qgroup
