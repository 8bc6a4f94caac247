#include "doctest.h"

#include <cmath>

#include "qgroup/grid.hpp"
#include "qgroup/quantization.hpp"
#include "qgroup/skew_matrix.hpp"

using namespace qgroup;

namespace {

const Eigen::MatrixXd Jstd = SkewMatrix::standard().to_eigen();
const Eigen::MatrixXd Jzero = Eigen::MatrixXd::Zero(2, 2);

Eigen::VectorXd random_vec(int d, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v(i) = u(rng);
  return v;
}

double rel(cd a, cd b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// samples taken where f and g both live
std::vector<Eigen::VectorXd> joint_points(const GaussianFamily& f, const GaussianFamily& g, int count,
                                          std::mt19937_64& rng) {
  return sample_points(*f.joint() * *g.joint(), count, rng);
}

}  // namespace

TEST_CASE("partial Fourier transform on a subset inverts") {
  std::mt19937_64 rng(11);
  const Gaussian g = Gaussian::random(5, rng);
  const std::vector<int> idx{0, 2, 3};
  const Gaussian back = g.fourier(idx, 1).fourier(idx, -1);
  for (int t = 0; t < 10; ++t) {
    const Eigen::VectorXd w = random_vec(5, rng);
    CHECK(rel(back(w), g(w)) < 1e-12);
  }
}

TEST_CASE("unit Gaussian is its own Fourier transform") {
  const Gaussian g = Gaussian::standard(3);
  const Gaussian h = g.fourier({0, 1, 2}, 1);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 5; ++t) {
    const Eigen::VectorXd w = random_vec(3, rng);
    CHECK(rel(h(w), g(w)) < 1e-13);
  }
  CHECK(std::abs(g.integral() - 1.0) < 1e-14);
}

TEST_CASE("grid FFT matches the closed-form transform") {
  std::mt19937_64 rng(5);
  const Gaussian g = Gaussian::random(4, rng);
  const Gaussian gh = g.fourier({0, 1, 2, 3}, 1);
  const std::vector<GridAxis> axes(4, GridAxis{0.0, 3.0, 32});  // balances truncation against aliasing
  const auto grid = GridFunction::sample(axes, [&](const Eigen::VectorXd& u) { return g(u); });
  const auto hat = grid.fourier(1);
  double worst = 0;
  for (std::size_t i = 0; i < hat.size(); i += 7) worst = std::max(worst, std::abs(hat.values()[i] - gh(hat.point(i))));
  CHECK(worst < 1e-6);
}

TEST_CASE("grid FFT rejects non power-of-two axes") {
  const auto grid = GridFunction::sample({GridAxis{0, 1, 6}}, [](const Eigen::VectorXd&) { return cd(1); });
  CHECK_THROWS_AS(grid.fourier(1), std::invalid_argument);
}

TEST_CASE("non-integrable input throws") {
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(2, 2);
  A(1, 1) = cd(0, 1);
  const Gaussian g(A, Eigen::VectorXcd::Zero(2), 0);
  CHECK_THROWS_AS(g.integral(), std::domain_error);
  CHECK_THROWS_AS(g.fourier({1}, 1), std::domain_error);
}

TEST_CASE("star product at hbar = 0 is the pointwise product") {
  std::mt19937_64 rng(21);
  const auto f = GaussianFamily::random(2, Side::position, rng), g = GaussianFamily::random(2, Side::position, rng);
  const auto fg = star_product(f, g, Jstd, 0.0);
  for (const auto& p : joint_points(f, g, 10, rng)) CHECK(rel(fg(p), f(p) * g(p)) < 1e-10);
}

TEST_CASE("star product is commutative on the r = 0 slice") {
  std::mt19937_64 rng(22);
  const auto f = GaussianFamily::random(2, Side::position, rng), g = GaussianFamily::random(2, Side::position, rng);
  const auto fg = star_product(f, g, Jstd, 1.0), gf = star_product(g, f, Jstd, 1.0);
  for (int t = 0; t < 5; ++t) {
    const Eigen::VectorXd u = random_vec(4, rng);
    CHECK(rel(fg(u, 0.0), f(u, 0.0) * g(u, 0.0)) < 1e-10);
    CHECK(rel(gf(u, 0.0), fg(u, 0.0)) < 1e-10);
  }
}

TEST_CASE("position form agrees with the twisted convolution") {
  std::mt19937_64 rng(23);
  for (const auto& J : {Jstd, Jzero}) {
    const auto f = GaussianFamily::random(2, Side::position, rng), g = GaussianFamily::random(2, Side::position, rng);
    const auto a = star_product(f, g, J, 0.7), b = star_product_position_form(f, g, J, 0.7);
    for (const auto& p : joint_points(f, g, 10, rng)) CHECK(rel(a(p), b(p)) < 1e-10);
  }
}

TEST_CASE("star product matches the quadrature oracle") {
  std::mt19937_64 rng(24);
  const auto f = GaussianFamily::random(2, Side::position, rng), g = GaussianFamily::random(2, Side::position, rng);
  for (double hbar : {1.0, 0.1}) {
    const auto fg = star_product(f, g, Jstd, hbar);
    for (const auto& p : joint_points(f, g, 20, rng)) {
      const auto est = star_product_point(f, g, Jstd, hbar, p, 32);
      CAPTURE(hbar);
      CHECK(rel(est.value, fg(p)) < 1e-6);
      CHECK(est.error_estimate <= 1e-6 * std::abs(est.value));
    }
  }
}

TEST_CASE("star product is associative") {
  std::mt19937_64 rng(25);
  const auto f = GaussianFamily::random(2, Side::position, rng), g = GaussianFamily::random(2, Side::position, rng),
             h = GaussianFamily::random(2, Side::position, rng);
  for (double hbar : {1.0, 0.5}) {
    const auto left = star_product(star_product(f, g, Jstd, hbar), h, Jstd, hbar);
    const auto right = star_product(f, star_product(g, h, Jstd, hbar), Jstd, hbar);
    for (const auto& p : sample_points(*f.joint() * *g.joint() * *h.joint(), 8, rng)) CHECK(rel(left(p), right(p)) < 1e-9);
  }
}

TEST_CASE("a function of (q, r) alone multiplies pointwise from the left when J = 0") {
  // the left factor need not decay; only the right one is integrated over q
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(5, 5);
  A(2, 2) = 1.3;
  A(3, 3) = 0.8;
  A(4, 4) = 1.1;
  A(2, 4) = A(4, 2) = 0.2;
  A(2, 2) += cd(0, 0.3);
  const Eigen::VectorXcd b = Eigen::VectorXcd::Zero(5);
  const auto qr = GaussianFamily::from_joint(Gaussian(A, b, 0), Side::position);
  std::mt19937_64 rng(26);
  const auto f = GaussianFamily::random(2, Side::position, rng);
  const auto fg = star_product_position_form(qr, f, Jzero, 0.8);
  for (int t = 0; t < 5; ++t) {
    const Eigen::VectorXd p = random_vec(5, rng);
    CHECK(rel(fg(p), f(p) * qr(p)) < 1e-10);
  }
}

TEST_CASE("involution") {
  std::mt19937_64 rng(27);
  const auto f = GaussianFamily::random(2, Side::position, rng), g = GaussianFamily::random(2, Side::position, rng);
  const auto pts = joint_points(f, g, 8, rng);
  SUBCASE("hbar = 0 is complex conjugation") {
    const auto fs = involution(f, Jstd, 0.0);
    for (const auto& p : pts) CHECK(rel(fs(p), std::conj(f(p))) < 1e-10);
  }
  SUBCASE("is an involution") {
    const auto fss = involution(involution(f, Jstd, 0.6), Jstd, 0.6);
    for (const auto& p : pts) CHECK(rel(fss(p), f(p)) < 1e-10);
  }
  SUBCASE("reverses products") {
    for (double hbar : {1.0, 0.3}) {
      const auto lhs = involution(star_product(f, g, Jstd, hbar), Jstd, hbar);
      const auto rhs = star_product(involution(g, Jstd, hbar), involution(f, Jstd, hbar), Jstd, hbar);
      for (const auto& p : pts) CHECK(rel(lhs(p), rhs(p)) < 1e-9);
    }
  }
}

TEST_CASE("Poisson reference uses the exact gradient") {
  std::mt19937_64 rng(28);
  const auto f = GaussianFamily::random(2, Side::position, rng), g = GaussianFamily::random(2, Side::position, rng);
  const Eigen::VectorXd p = random_vec(5, rng, 0.5);
  const auto grad = f.joint()->gradient(p);
  const double h = 1e-6;
  for (int i = 0; i < 5; ++i) {
    Eigen::VectorXd a = p, b = p;
    a(i) += h;
    b(i) -= h;
    CHECK(std::abs((f(a) - f(b)) / (2 * h) - grad(i)) < 1e-7);
  }
  CHECK(std::abs(poisson_reference(f, g, Jstd, p) + poisson_reference(g, f, Jstd, p)) < 1e-14);
  CHECK(poisson_reference(f, f, Jstd, p) == cd(0));
}

TEST_CASE("commutator approaches the Poisson bracket") {
  std::mt19937_64 rng(29);
  const auto f = GaussianFamily::random(2, Side::position, rng), g = GaussianFamily::random(2, Side::position, rng);
  const auto pts = joint_points(f, g, 6, rng);
  SurrogateGrid grid;
  grid.r_points = 3;
  const std::vector<double> hbars{0.2, 0.1, 0.05, 0.025};
  SUBCASE("first order in hbar") {
    const auto study = convergence_study(f, g, Jstd, hbars, pts, grid);
    CHECK_FALSE(study.exact_zero);
    CHECK(study.slope_sup >= 0.9);
    CHECK(study.slope_l1 >= 0.9);
    CHECK(study.csv().rfind("hbar,sup_residual,l1_residual\n", 0) == 0);
  }
  SUBCASE("f with itself is exactly zero") {
    const auto study = convergence_study(f, f, Jstd, hbars, pts, grid);
    CHECK(study.exact_zero);
  }
  SUBCASE("too few hbar values") {
    CHECK_THROWS_AS(convergence_study(f, g, Jstd, {0.1, 0.05, 0.01}, pts, grid), std::invalid_argument);
  }
}

TEST_CASE("log-log slope") {
  CHECK(loglog_slope({1, 2, 4}, {3, 6, 12}) == doctest::Approx(1.0));
  CHECK(loglog_slope({1, 2, 4}, {1, 4, 16}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(loglog_slope({1, 2}, {0, 1}), std::domain_error);
}

TEST_CASE("kappa squares to the identity") {
  std::mt19937_64 rng(30);
  for (const auto& J : {Jstd, Jzero}) {
    const auto F = GaussianFamily::random(2, Side::fourier, rng);
    const auto kk = antipode_kappa(antipode_kappa(F, J), J);
    for (const auto& p : sample_points(*F.joint(), 8, rng)) CHECK(rel(kk(p), F(p)) < 1e-10);
  }
}

TEST_CASE("kappa without the cocycle is composition with the inverse") {
  std::mt19937_64 rng(31);
  const auto f = GaussianFamily::random(2, Side::position, rng);
  const auto k0 = partial_fourier(antipode_kappa(partial_fourier(f), Jstd, false));
  const auto Js = skew_from_eigen(Jstd);
  for (const auto& p : sample_points(*f.joint(), 8, rng)) {
    const auto g = GroupElementG<double>::from_coords(std::vector<double>(p.data(), p.data() + p.size()));
    const auto c = inverse_g(g, Js).coords();
    CHECK(rel(k0(p), f(Eigen::Map<const Eigen::VectorXd>(c.data(), 5))) < 1e-10);
  }
}

TEST_CASE("K conjugates L_F^* into L_kappa(F)") {
  std::mt19937_64 rng(32);
  const auto F = GaussianFamily::random(2, Side::fourier, rng);
  const Gaussian xg = Gaussian::random(5, rng);
  const FourierFunction xi = [&](const Eigen::VectorXd& h, double r) {
    Eigen::VectorXd w(5);
    w << h, r;
    return xg(w);
  };
  for (int t = 0; t < 4; ++t) {
    const Eigen::VectorXd h = random_vec(4, rng, 0.6);
    const double r = 0.8 * (2.0 * t / 3 - 1);
    const cd res = K_conjugation_residual(F, xi, Jstd, h, r, 20);
    CHECK(std::abs(res) < 1e-5);
  }
}

TEST_CASE("K conjugation needs the cocycle phases in kappa") {
  std::mt19937_64 rng(37);
  const auto F = GaussianFamily::random(2, Side::fourier, rng);
  const Gaussian xg = Gaussian::random(5, rng);
  const FourierFunction xi = [&](const Eigen::VectorXd& h, double r) {
    Eigen::VectorXd w(5);
    w << h, r;
    return xg(w);
  };
  const Eigen::VectorXd h = random_vec(4, rng, 0.6);
  const double r = 0.7;
  const cd with = apply_Lf(antipode_kappa(F, Jstd), xi, Jstd, h, r, 20).value;
  const cd without = apply_Lf(antipode_kappa(F, Jstd, false), xi, Jstd, h, r, 20).value;
  CHECK(std::abs(with - without) > 1e-3 * std::abs(with));
}

TEST_CASE("slice functions are related by kappa") {
  std::mt19937_64 rng(33);
  for (const auto& J : {Jstd, Jzero}) {
    const auto eta = GaussianFamily::random(2, Side::fourier, rng), zeta = GaussianFamily::random(2, Side::fourier, rng);
    const auto s = slice_functions(eta, zeta, J);
    std::vector<Eigen::VectorXd> pts;
    for (int t = 0; t < 10; ++t) pts.push_back(random_vec(5, rng));
    CHECK(antipode_slice_residual(s, J, pts) < 1e-5);
  }
  const auto zeta = GaussianFamily::random(2, Side::fourier, rng);
  const auto z = slice_functions(GaussianFamily::zero(2, Side::fourier), zeta, Jstd);
  const Eigen::VectorXd p = random_vec(5, rng);
  CHECK(z.f(p) == cd(0));
  CHECK(z.g(p) == cd(0));
}

TEST_CASE("Haar functionals") {
  std::mt19937_64 rng(34);
  SUBCASE("normalised Gaussian integrates to one") {
    const auto f = GaussianFamily::from_joint(Gaussian::standard(5), Side::position);
    CHECK(std::abs(haar_phi(f) - 1.0) < 1e-14);
  }
  SUBCASE("phi_S of the transform equals phi") {
    const auto f = GaussianFamily::random(2, Side::position, rng), g = GaussianFamily::random(2, Side::position, rng);
    CHECK(rel(haar_phiS(partial_fourier(f)), haar_phi(f)) < 1e-12);
    const auto fg = star_product(f, g, Jstd, 1.0);  // sliced only, so r is integrated numerically
    CHECK(rel(haar_phiS(partial_fourier(fg)), haar_phi(fg)) < 1e-8);
  }
  SUBCASE("phi is positive on f^* x f") {
    for (int t = 0; t < 3; ++t) {
      const auto f = GaussianFamily::random(2, Side::position, rng);
      const cd v = haar_phi(star_product(involution(f, Jstd, 1.0), f, Jstd, 1.0));
      const cd norm = haar_phi(pointwise_product(conjugate(f), f));
      CHECK(std::abs(v.imag()) < 1e-8 * std::abs(v));
      CHECK(v.real() > 0);
      CHECK(rel(v, norm) < 1e-8);
    }
  }
}

TEST_CASE("left invariance of phi_S") {
  std::mt19937_64 rng(35);
  for (const auto& J : {Jstd, Jzero}) {
    const auto f = GaussianFamily::random(2, Side::fourier, rng), g = GaussianFamily::random(2, Side::fourier, rng);
    for (int t = 0; t < 10; ++t) {
      const auto s = left_invariance(f, g, J, random_vec(5, rng));
      CHECK(std::abs(s.residual()) < 1e-5);
      CHECK(std::abs(s.residual()) <= 1e-9 * std::max(std::abs(s.lhs), 1e-12) + 1e-15);
    }
  }
}

TEST_CASE("comultiplication evaluates at the product") {
  std::mt19937_64 rng(36);
  const auto f = GaussianFamily::random(2, Side::position, rng);
  GroupElementG<double> a = GroupElementG<double>::from_coords({0.1, -0.2, 0.3, 0.05, 0.4});
  GroupElementG<double> b = GroupElementG<double>::from_coords({-0.3, 0.1, 0.2, -0.1, -0.5});
  // (p + p', q + q' + r' J^T p, r + r') by hand with J = [[0, 1], [-1, 0]]
  Eigen::VectorXd c(5);
  c << -0.2, -0.1, 0.5 + (-0.5) * (-(-0.2)), -0.05 + (-0.5) * 0.1, -0.1;
  CHECK(rel(delta_function(f, a, b, Jstd), f(c)) < 1e-14);
  const auto e = GroupElementG<double>::from_coords({0, 0, 0, 0, 0});
  const Eigen::VectorXd pa = Eigen::Map<const Eigen::VectorXd>(a.coords().data(), 5);
  CHECK(delta_function(f, a, e, Jstd) == f(pa));
}

TEST_CASE("config validation") {
  QuantizationConfig c;
  c.J = Jstd;
  CHECK_NOTHROW(c.validate());
  auto bad = c;
  bad.hbar_list = {0.1, 0.2, 0.05, 0.01};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.surrogate.points = 12;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  const auto parsed = QuantizationConfig::from_json({{"oracle_order", 24}, {"surrogate", {{"points", 8}}}}, Jstd);
  CHECK(parsed.oracle_order == 24);
  CHECK(parsed.surrogate.points == 8);
  CHECK_THROWS_AS(QuantizationConfig::from_json({{"hbar_list", {-1.0, 0.1}}}, Jstd), std::invalid_argument);
}
