#include "qgroup/gaussian.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qgroup {

namespace {

constexpr double kPi = M_PI;
const cd kI(0, 1);

Eigen::MatrixXd real_part(const Eigen::MatrixXcd& A) { return A.real(); }

void require_integrable(const Eigen::MatrixXcd& block) {
  if (block.rows() == 0) return;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(real_part(block));
  if (es.eigenvalues()(0) <= 1e-300) throw std::domain_error("non-integrable Gaussian: real part not positive definite");
}

}  // namespace

cd log_det_right_half_plane(const Eigen::MatrixXcd& A) {
  if (A.rows() == 0) return 0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
  cd s = 0;
  for (int i = 0; i < A.rows(); ++i) s += std::log(es.eigenvalues()(i));
  return s;
}

Gaussian::Gaussian(Eigen::MatrixXcd A, Eigen::VectorXcd b, cd log_amplitude)
    : A_(std::move(A)), b_(std::move(b)), logc_(log_amplitude) {
  if (A_.rows() != A_.cols() || A_.rows() != b_.size()) throw std::invalid_argument("Gaussian: shape mismatch");
  symmetrize();
}

Gaussian Gaussian::standard(int d) {
  return Gaussian(Eigen::MatrixXcd::Identity(d, d), Eigen::VectorXcd::Zero(d), 0);
}

Gaussian Gaussian::zero(int d) {
  return Gaussian(Eigen::MatrixXcd::Identity(d, d), Eigen::VectorXcd::Zero(d),
                  cd(-std::numeric_limits<double>::infinity(), 0));
}

Gaussian Gaussian::random(int d, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::MatrixXd B(d, d), S(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      B(i, k) = 0.5 * u(rng);
      S(i, k) = 0.15 * u(rng);
    }
  const double diag = 0.9 + 0.3 * u(rng);
  Eigen::MatrixXd R = B * B.transpose() / d + diag * Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXcd A = scale * (R.cast<cd>() + kI * (S + S.transpose()).cast<cd>() / 2.0);
  Eigen::VectorXcd b(d);
  for (int i = 0; i < d; ++i) b(i) = cd(0.3 * u(rng), 0.3 * u(rng));
  return Gaussian(A, b, cd(0.2 * u(rng), 0.5 * u(rng)));
}

bool Gaussian::is_zero() const { return std::isinf(logc_.real()) && logc_.real() < 0; }

void Gaussian::symmetrize() { A_ = (A_ + A_.transpose()).eval() / 2.0; }

cd Gaussian::log_value(const Eigen::VectorXd& w) const {
  const Eigen::VectorXcd wc = w.cast<cd>();
  return logc_ - kPi * (wc.transpose() * A_ * wc)(0) + 2 * kPi * (b_.transpose() * wc)(0);
}

cd Gaussian::operator()(const Eigen::VectorXd& w) const {
  if (is_zero()) return 0;
  return eval(w.data());
}

cd Gaussian::eval(const double* w) const {
  if (is_zero()) return 0;
  const int d = dim();
  cd quad = 0, lin = 0;
  for (int k = 0; k < d; ++k) {
    const cd* col = A_.data() + static_cast<std::ptrdiff_t>(k) * d;
    cd s = 0;
    for (int i = 0; i < d; ++i) s += col[i] * w[i];
    quad += s * w[k];
    lin += b_(k) * w[k];
  }
  return std::exp(logc_ - kPi * quad + 2 * kPi * lin);
}

Eigen::VectorXcd Gaussian::gradient(const Eigen::VectorXd& w) const {
  const cd v = (*this)(w);
  return v * (-2 * kPi * (A_ * w.cast<cd>()) + 2 * kPi * b_);
}

Gaussian Gaussian::conj() const { return Gaussian(A_.conjugate(), b_.conjugate(), std::conj(logc_)); }

Gaussian Gaussian::operator*(const Gaussian& o) const {
  if (o.dim() != dim()) throw std::invalid_argument("Gaussian product: dimension mismatch");
  return Gaussian(A_ + o.A_, b_ + o.b_, logc_ + o.logc_);
}

Gaussian Gaussian::scaled(cd factor) const {
  if (factor == cd(0)) return zero(dim());
  return Gaussian(A_, b_, logc_ + std::log(factor));
}

Gaussian Gaussian::substitute(const Eigen::MatrixXd& M, const Eigen::VectorXd& s) const {
  if (M.rows() != dim() || s.size() != dim()) throw std::invalid_argument("Gaussian substitute: shape mismatch");
  const Eigen::MatrixXcd Mc = M.cast<cd>();
  const Eigen::VectorXcd sc = s.cast<cd>();
  const Eigen::VectorXcd As = A_ * sc;
  const cd shift = -kPi * (sc.transpose() * As)(0) + 2 * kPi * (b_.transpose() * sc)(0);
  return Gaussian(Mc.transpose() * A_ * Mc, Mc.transpose() * (b_ - As), logc_ + shift);
}

Gaussian Gaussian::permuted(const std::vector<int>& order) const {
  const int d = dim();
  if (static_cast<int>(order.size()) != d) throw std::invalid_argument("Gaussian permuted: size mismatch");
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < d; ++k) M(order[k], k) = 1;
  return substitute(M, Eigen::VectorXd::Zero(d));
}

Gaussian Gaussian::with_phase(const Eigen::MatrixXd& Q, const Eigen::VectorXd& t, double c) const {
  // exp(2 pi i w^T Q w) = exp(-pi w^T (-i (Q + Q^T)) w)
  const Eigen::MatrixXcd dA = -kI * (Q + Q.transpose()).cast<cd>();
  return Gaussian(A_ + dA, b_ + kI * t.cast<cd>(), logc_ + 2 * kPi * kI * c);
}

Gaussian Gaussian::integrate_out(const std::vector<int>& idx) const {
  const int d = dim(), k = static_cast<int>(idx.size());
  std::vector<bool> drop(d, false);
  for (int i : idx) {
    if (i < 0 || i >= d || drop[i]) throw std::invalid_argument("integrate_out: bad index list");
    drop[i] = true;
  }
  std::vector<int> keep;
  for (int i = 0; i < d; ++i)
    if (!drop[i]) keep.push_back(i);
  const int m = static_cast<int>(keep.size());

  Eigen::MatrixXcd Auu(m, m), Auw(m, k), Aww(k, k);
  Eigen::VectorXcd bu(m), bw(k);
  for (int i = 0; i < m; ++i) {
    bu(i) = b_(keep[i]);
    for (int j = 0; j < m; ++j) Auu(i, j) = A_(keep[i], keep[j]);
    for (int j = 0; j < k; ++j) Auw(i, j) = A_(keep[i], idx[j]);
  }
  for (int i = 0; i < k; ++i) {
    bw(i) = b_(idx[i]);
    for (int j = 0; j < k; ++j) Aww(i, j) = A_(idx[i], idx[j]);
  }
  require_integrable(Aww);
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(Aww);
  const Eigen::MatrixXcd KAwu = lu.solve(Auw.transpose());
  const Eigen::VectorXcd Kbw = lu.solve(bw);
  const cd logc = is_zero() ? logc_ : logc_ - 0.5 * log_det_right_half_plane(Aww) + kPi * (bw.transpose() * Kbw)(0);
  return Gaussian(Auu - Auw * KAwu, bu - Auw * Kbw, logc);
}

Gaussian Gaussian::fourier(const std::vector<int>& idx, int sign) const {
  const int d = dim(), k = static_cast<int>(idx.size());
  // append v, multiply by e[sign u.v], integrate u out
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(d, d + k);
  E.leftCols(d).setIdentity();
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(d + k, d + k);
  for (int j = 0; j < k; ++j) Q(idx[j], d + j) = sign;
  const Gaussian wide = substitute(E, Eigen::VectorXd::Zero(d)).with_phase(Q, Eigen::VectorXd::Zero(d + k));
  const Gaussian out = wide.integrate_out(idx);
  // out coordinates: kept originals in order, then v_0..v_{k-1}
  std::vector<int> order(d);
  std::vector<int> slot(d, -1);
  for (int j = 0; j < k; ++j) slot[idx[j]] = j;
  int kept = 0;
  for (int p = 0; p < d; ++p) {
    if (slot[p] >= 0) continue;
    order[p] = kept++;
  }
  for (int p = 0; p < d; ++p)
    if (slot[p] >= 0) order[p] = kept + slot[p];
  return out.permuted(order);
}

Gaussian Gaussian::restrict(const std::vector<int>& idx, const Eigen::VectorXd& values) const {
  const int d = dim();
  std::vector<bool> fixed(d, false);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(d);
  for (std::size_t j = 0; j < idx.size(); ++j) {
    fixed.at(idx[j]) = true;
    s(idx[j]) = values(static_cast<int>(j));
  }
  std::vector<int> keep;
  for (int i = 0; i < d; ++i)
    if (!fixed[i]) keep.push_back(i);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d, static_cast<int>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) M(keep[j], static_cast<int>(j)) = 1;
  return substitute(M, s);
}

cd Gaussian::integral() const {
  if (is_zero()) return 0;
  std::vector<int> all(dim());
  for (int i = 0; i < dim(); ++i) all[i] = i;
  return std::exp(integrate_out(all).log_amplitude());
}

Gaussian::Envelope Gaussian::envelope() const {
  require_integrable(A_);
  const Eigen::MatrixXd R = A_.real();
  const Eigen::VectorXd center = R.ldlt().solve(b_.real());
  // exp(-pi (w-m)^T R (w-m)) = exp(-|t|^2) with w = m + C t, C = L^{-T}, pi R = L L^T
  const Eigen::LLT<Eigen::MatrixXd> llt(kPi * R);
  const Eigen::MatrixXd L = llt.matrixL();
  const Eigen::MatrixXd C = L.transpose().triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(dim(), dim()));
  return {center, C};
}

nlohmann::json Gaussian::to_json() const {
  nlohmann::json j;
  j["dim"] = dim();
  auto mat = nlohmann::json::array();
  for (int i = 0; i < dim(); ++i) {
    auto row = nlohmann::json::array();
    for (int k = 0; k < dim(); ++k) row.push_back({A_(i, k).real(), A_(i, k).imag()});
    mat.push_back(row);
  }
  j["A"] = mat;
  auto vec = nlohmann::json::array();
  for (int i = 0; i < dim(); ++i) vec.push_back({b_(i).real(), b_(i).imag()});
  j["b"] = vec;
  if (is_zero()) j["log_amplitude"] = "zero";
  else j["log_amplitude"] = {logc_.real(), logc_.imag()};
  return j;
}

}  // namespace qgroup
