#include "doctest.h"

#include <cmath>

#include "qgroup/group.hpp"

using namespace qgroup;

namespace {

const Skew<Rational> Js = SkewMatrix::standard().exact();

GroupElementG<Rational> random_g(int n, std::mt19937_64& rng) {
  auto g = GroupElementG<Rational>::identity(n);
  for (auto& v : g.p) v = random_rational(rng);
  for (auto& v : g.q) v = random_rational(rng);
  g.r = random_rational(rng);
  return g;
}

PlanePoint<Rational> random_plane(int n, std::mt19937_64& rng) {
  auto h = PlanePoint<Rational>::zero(n);
  for (auto& v : h.first) v = random_rational(rng);
  for (auto& v : h.second) v = random_rational(rng);
  return h;
}

PlanePoint<double> to_double(const PlanePoint<Rational>& h) {
  PlanePoint<double> out;
  for (const auto& v : h.first) out.first.push_back(v.get_d());
  for (const auto& v : h.second) out.second.push_back(v.get_d());
  return out;
}

}  // namespace

TEST_CASE("multiplication in G") {
  GroupElementG<Rational> a{{1, 0}, {0, 0}, 0}, b{{0, 0}, {0, 0}, 1};
  const GroupElementG<Rational> ab{{1, 0}, {0, 1}, 1};
  CHECK(multiply_g(a, b, Js) == ab);
  const auto e = GroupElementG<Rational>::identity(2);
  CHECK(multiply_g(ab, e, Js) == ab);

  std::mt19937_64 rng(1);
  const auto Z = SkewMatrix::zero(2).exact();
  const auto g = random_g(2, rng), h = random_g(2, rng);
  const auto gh = multiply_g(g, h, Z);
  CHECK(gh.p[0] == g.p[0] + h.p[0]);
  CHECK(gh.q[1] == g.q[1] + h.q[1]);
  CHECK(gh.r == g.r + h.r);
}

TEST_CASE("associativity, inverse and identity in G") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 3;
    const auto J = SkewMatrix::random(n, rng).exact();
    const auto a = random_g(n, rng), b = random_g(n, rng), c = random_g(n, rng);
    CHECK(multiply_g(multiply_g(a, b, J), c, J) == multiply_g(a, multiply_g(b, c, J), J));
    CHECK(multiply_g(a, inverse_g(a, J), J) == GroupElementG<Rational>::identity(n));
    CHECK(multiply_g(inverse_g(a, J), a, J) == GroupElementG<Rational>::identity(n));
  }
  const GroupElementG<Rational> a{{1, 0}, {0, 0}, 1};
  const GroupElementG<Rational> inv{{-1, 0}, {0, 1}, -1};
  CHECK(inverse_g(a, Js) == inv);
  CHECK(inverse_g(GroupElementG<Rational>::identity(2), Js) == GroupElementG<Rational>::identity(2));
}

TEST_CASE("Heisenberg multiplication and commutator") {
  GroupElementH<Rational> a{{1, 0}, {0, 0}, 0}, b{{0, 0}, {1, 0}, 0};
  CHECK(multiply_h(a, b).z == 1);
  CHECK(multiply_h(a, GroupElementH<Rational>::identity(2)) == a);
  const auto comm = multiply_h(multiply_h(a, b), multiply_h(inverse_h(a), inverse_h(b)));
  const GroupElementH<Rational> center{{0, 0}, {0, 0}, 1};
  CHECK(comm == center);
}

TEST_CASE("matched pair decomposition") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto J = SkewMatrix::random(3, rng).exact();
    const auto a = random_g(3, rng);
    const auto [g1, g2] = decompose_matched(a);
    CHECK(multiply_g(g1, g2, J) == a);
    CHECK(g1.p == std::vector<Rational>(3, Rational(0)));
    CHECK(g2.r == 0);
  }
  const auto e = GroupElementG<Rational>::identity(2);
  CHECK(decompose_matched(e).first == e);
  CHECK(decompose_matched(e).second == e);
}

TEST_CASE("action alpha on (p,q)") {
  const PlanePoint<Rational> pq{{1, 0}, {0, 0}};
  const PlanePoint<Rational> expect{{1, 0}, {0, -1}};
  CHECK(action_alpha_pq<Rational>(1, pq, Js) == expect);
  CHECK(action_alpha_pq<Rational>(0, pq, Js) == pq);

  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 2;
    const auto J = SkewMatrix::random(n, rng).exact();
    const auto h = random_plane(n, rng);
    const Rational r = random_rational(rng), r1 = random_rational(rng);
    CHECK(action_alpha_pq<Rational>(Rational(r + r1), h, J) ==
          action_alpha_pq<Rational>(r, action_alpha_pq<Rational>(r1, h, J), J));
    // alpha_r(p,q) gamma_{(p,q)}(r) recomposes (0,0,r)(p,q,0)
    const auto moved = action_alpha_pq<Rational>(r, h, J);
    const GroupElementG<Rational> left{moved.first, moved.second, 0};
    const GroupElementG<Rational> right{std::vector<Rational>(n, Rational(0)), std::vector<Rational>(n, Rational(0)),
                                        action_gamma(h, r)};
    const GroupElementG<Rational> g1{std::vector<Rational>(n, Rational(0)), std::vector<Rational>(n, Rational(0)), r};
    const GroupElementG<Rational> g2{h.first, h.second, 0};
    CHECK(multiply_g(left, right, J) == multiply_g(g1, g2, J));
  }
}

TEST_CASE("action alpha on (x,y)") {
  const PlanePoint<Rational> xy{{0, 0}, {1, 0}};
  const PlanePoint<Rational> expect{{0, -1}, {1, 0}};
  CHECK(action_alpha_xy<Rational>(1, xy, Js) == expect);
  CHECK(action_alpha_xy<Rational>(0, xy, Js) == xy);
  const PlanePoint<Rational> fixed{{2, 3}, {0, 0}};
  CHECK(action_alpha_xy<Rational>(Rational(7, 3), fixed, Js) == fixed);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto J = SkewMatrix::random(3, rng).exact();
    const auto h = random_plane(3, rng);
    const Rational r = random_rational(rng), r1 = random_rational(rng);
    CHECK(action_alpha_xy<Rational>(Rational(r + r1), h, J) ==
          action_alpha_xy<Rational>(r, action_alpha_xy<Rational>(r1, h, J), J));
    CHECK(action_gamma(h, r) == r);
  }
}

TEST_CASE("sigma phase values") {
  const auto Jd = SkewMatrix::standard().as_double();
  const PlanePoint<double> a{{1, 0}, {0, 0}}, b{{0, 0}, {1, 0}};
  const auto s = sigma_phase({0.5, 1.0}, a, b, Jd);
  CHECK(std::abs(s - std::complex<double>(-1.0, 0.0)) < 1e-14);
  const PlanePoint<double> c{{0.3, -1.2}, {0.7, 2.5}}, zero = PlanePoint<double>::zero(2);
  CHECK(std::abs(sigma_phase({1.3, 1.0}, c, zero, Jd) - 1.0) < 1e-15);
  CHECK(std::abs(sigma_phase({1.3, 1.0}, zero, c, Jd) - 1.0) < 1e-15);
  CHECK(std::abs(sigma_phase({1.3, 0.0}, c, a + c, Jd) - 1.0) < 1e-15);
  CHECK(std::abs(sigma_phase({0.0, 0.7}, c, a + c, Jd) - 1.0) < 1e-15);
}

TEST_CASE("sigma cocycle identity") {
  std::mt19937_64 rng(6);
  const auto Jd = SkewMatrix::standard().as_double();
  for (int t = 0; t < 20; ++t) {
    const auto h = to_double(random_plane(2, rng)), h1 = to_double(random_plane(2, rng)),
               h2 = to_double(random_plane(2, rng));
    CHECK(std::abs(sigma_cocycle_residual({random_rational(rng).get_d(), 0.7}, h, h1, h2, Jd)) < 1e-12);
    CHECK(std::abs(sigma_cocycle_residual({1.5, 1.0}, h, PlanePoint<double>::zero(2), h2, Jd)) < 1e-12);
  }
  for (int n : {2, 3}) {
    const auto Jsym = symbolic_skew(n);
    CHECK(sigma_cocycle_exponent_residual(Jsym).is_zero());
    const auto [left, right] = sigma_normalization_exponents(Jsym);
    CHECK(left.is_zero());
    CHECK(right.is_zero());
  }
}

TEST_CASE("cocycle matching conditions hold exactly") {
  for (int n : {2, 3}) {
    const auto rep = matching_cocycles_residual(symbolic_skew(n));
    CHECK(rep.residuals[0].is_zero());
    CHECK(rep.residuals[1].is_zero());
    CHECK(rep.residuals[2].is_zero());
    CHECK(rep.v_vs_sigma.is_zero());
    CHECK(rep.all_zero());
  }
}

TEST_CASE("phase polynomials compare modulo integers") {
  const Polynomial x = Polynomial::variable(symbol("x1"));
  CHECK(same_phase({x + Polynomial(3)}, {x}));
  CHECK_FALSE(same_phase({x + Polynomial(Rational(1, 2))}, {x}));
  CHECK_FALSE(same_phase({x * x}, {x}));
}
