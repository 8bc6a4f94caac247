#include "doctest.h"

#include <cmath>

#include "qgroup/algebra.hpp"

using namespace qgroup;

namespace {

const SkewMatrix J2 = SkewMatrix::standard();

LieElementG g_basis(int n, int a) { return LieElementG::basis(n, a); }
LieElementH h_basis(int n, int a) { return LieElementH::basis(n, a); }

GroupElementG<Rational> random_point(int n, std::mt19937_64& rng) {
  GroupElementG<Rational> g = GroupElementG<Rational>::identity(n);
  for (auto& v : g.p) v = random_rational(rng);
  for (auto& v : g.q) v = random_rational(rng);
  g.r = random_rational(rng);
  return g;
}

}  // namespace

TEST_CASE("bracket of g on basis vectors") {
  const int n = 2;
  // [p1, r] = q2 for the standard J
  CHECK(bracket_g(g_basis(n, 0), g_basis(n, 4), J2) == g_basis(n, 3));
  CHECK(bracket_g(g_basis(n, 2), g_basis(n, 3), J2).is_zero());
  std::mt19937_64 rng(7);
  const auto X = LieElementG::random(n, rng);
  CHECK(bracket_g(X, X, J2).is_zero());
}

TEST_CASE("bracket of h on basis vectors") {
  const int n = 2;
  CHECK(bracket_h(h_basis(n, 0), h_basis(n, 2)) == h_basis(n, 4));
  CHECK(bracket_h(h_basis(n, 0), h_basis(n, 3)).is_zero());
  CHECK(bracket_h(h_basis(n, 4), h_basis(n, 1)).is_zero());
}

TEST_CASE("structure-constant brackets agree with the closed forms") {
  std::mt19937_64 rng(11);
  for (int n : {2, 3, 4}) {
    const auto J = SkewMatrix::random(n, rng);
    const auto sg = StructureConstants::for_g(J);
    const auto sh = StructureConstants::for_h(n);
    for (int t = 0; t < 20; ++t) {
      const auto X = LieElementG::random(n, rng), Y = LieElementG::random(n, rng);
      CHECK(bracket(sg, X, Y) == bracket_g(X, Y, J));
      const auto A = LieElementH::random(n, rng), B = LieElementH::random(n, rng);
      CHECK(bracket(sh, A, B) == bracket_h(A, B));
    }
  }
}

TEST_CASE("Jacobi identity holds exactly on basis and random triples") {
  std::mt19937_64 rng(3);
  for (int n : {2, 3, 4}) {
    const auto J = SkewMatrix::random(n, rng);
    const auto sg = StructureConstants::for_g(J);
    const auto sh = StructureConstants::for_h(n);
    const int d = 2 * n + 1;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c) {
          CHECK(jacobi_residual(sg, g_basis(n, a), g_basis(n, b), g_basis(n, c)).is_zero());
          CHECK(jacobi_residual(sh, h_basis(n, a), h_basis(n, b), h_basis(n, c)).is_zero());
        }
    for (int t = 0; t < 100; ++t) {
      CHECK(jacobi_residual(sg, LieElementG::random(n, rng), LieElementG::random(n, rng), LieElementG::random(n, rng))
                .is_zero());
      CHECK(jacobi_residual(sh, LieElementH::random(n, rng), LieElementH::random(n, rng), LieElementH::random(n, rng))
                .is_zero());
    }
  }
}

TEST_CASE("r-matrix for the standard J") {
  const auto r = classical_r_matrix(J2);
  TensorElement expect(AlgebraTag::h, 2, 2);
  expect.add({1, 0}, 1);
  expect.add({0, 1}, -1);
  CHECK(r == expect);
  CHECK((r + r.flipped()).is_zero());
  CHECK(classical_r_matrix(SkewMatrix::zero(2)).is_zero());
}

TEST_CASE("CYBE residual vanishes for r(J) and not for a probe") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto J = SkewMatrix::random(2 + t % 3, rng);
    CHECK(cybe_residual(classical_r_matrix(J)).is_zero());
  }
  TensorElement probe(AlgebraTag::h, 2, 2);
  probe.add({0, 2}, 1);  // x1 (x) y1
  TensorElement expect(AlgebraTag::h, 2, 3);
  expect.add({0, 4, 2}, -1);  // -x1 (x) z (x) y1
  CHECK(cybe_residual(probe) == expect);
  CHECK(cybe_residual(TensorElement(AlgebraTag::h, 2, 2)).is_zero());
}

TEST_CASE("cobracket delta via ad_X(r) matches the closed form") {
  std::mt19937_64 rng(13);
  for (int n : {2, 3, 4}) {
    const auto J = SkewMatrix::random(n, rng);
    for (int a = 0; a < 2 * n + 1; ++a) {
      const auto d = cobracket_delta(h_basis(n, a), J);
      CHECK(d == cobracket_delta_closed_form(h_basis(n, a), J));
      CHECK((d.is_zero() || d.is_antisymmetric()));
    }
  }
  // delta(y1) = -x2 ^ z for the standard J
  TensorElement expect(AlgebraTag::h, 2, 2);
  expect.add_wedge(1, 4, -1);
  CHECK(cobracket_delta(h_basis(2, 2), J2) == expect);
  CHECK(cobracket_delta(h_basis(2, 0), J2).is_zero());
  CHECK(cobracket_delta(h_basis(2, 4), J2).is_zero());
}

TEST_CASE("dual bracket from delta reproduces the bracket of g") {
  std::mt19937_64 rng(17);
  CHECK(dual_bracket_from_delta(g_basis(2, 0), g_basis(2, 4), J2) == g_basis(2, 3));
  for (int n : {2, 3}) {
    const auto J = SkewMatrix::random(n, rng);
    for (int a = 0; a < 2 * n + 1; ++a)
      for (int b = 0; b < 2 * n + 1; ++b)
        CHECK(dual_bracket_from_delta(g_basis(n, a), g_basis(n, b), J) == bracket_g(g_basis(n, a), g_basis(n, b), J));
  }
}

TEST_CASE("theta values and duality with the bracket of h") {
  const int n = 2;
  TensorElement expect(AlgebraTag::g, n, 2);
  expect.add_wedge(0, 2, 1);
  expect.add_wedge(1, 3, 1);
  CHECK(cobracket_theta(g_basis(n, 4)) == expect);
  CHECK(cobracket_theta(g_basis(n, 0)).is_zero());
  CHECK(pair(cobracket_theta(g_basis(n, 4)), h_basis(n, 0), h_basis(n, 2)) == 1);
  for (int nn : {2, 3})
    for (int a = 0; a < 2 * nn + 1; ++a) {
      const auto mu = g_basis(nn, a);
      CHECK(cobracket_theta(mu) == cobracket_theta_by_duality(mu));
    }
}

TEST_CASE("cocycle F closed form values") {
  const auto& J = J2.exact();
  CHECK(cocycle_F(GroupElementG<Rational>::identity(2), J).is_zero());

  auto g = GroupElementG<Rational>::identity(2);
  g.p = {Rational(3), Rational(-1)};
  g.r = 1;
  TensorElement pq(AlgebraTag::g, 2, 2);
  pq.add_wedge(0, 2, 1);
  pq.add_wedge(1, 3, 1);
  CHECK(cocycle_F(g, SkewMatrix::zero(2).exact()) == pq);

  // r = 2: 2 sum p_i^q_i - 2 (J12 q2^q1 + J21 q1^q2) = 2 sum p_i^q_i + 4 q1^q2
  auto h = GroupElementG<Rational>::identity(2);
  h.r = 2;
  TensorElement expect = Rational(2) * pq;
  expect.add_wedge(2, 3, 4);
  CHECK(cocycle_F(h, J) == expect);
}

TEST_CASE("Ad_g by symbolic differentiation") {
  const int n = 2;
  std::mt19937_64 rng(19);
  const auto e = GroupElementG<Rational>::identity(n);
  const auto X = LieElementG::random(n, rng);
  CHECK(adjoint_G(e, X, J2) == X);
  const auto g = random_point(n, rng);
  CHECK(adjoint_G(g, g_basis(n, 2), J2) == g_basis(n, 2));
  auto p = GroupElementG<Rational>::identity(n);
  p.p = {Rational(1), Rational(0)};
  CHECK(adjoint_G(p, g_basis(n, 4), J2) == g_basis(n, 4) + g_basis(n, 3));
}

TEST_CASE("Ad_g agrees with central finite differences") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 2;
    const auto J = SkewMatrix::random(n, rng);
    const auto g = random_point(n, rng);
    const auto A = adjoint_matrix(g, J);
    GroupElementG<double> gd;
    for (const auto& v : g.p) gd.p.push_back(v.get_d());
    for (const auto& v : g.q) gd.q.push_back(v.get_d());
    gd.r = g.r.get_d();
    for (int b = 0; b < 2 * n + 1; ++b) {
      std::vector<double> X(2 * n + 1, 0.0);
      X[b] = 1.0;
      const auto fd = adjoint_finite_difference(gd, X, J.as_double(), 1e-3);
      for (int a = 0; a < 2 * n + 1; ++a) CHECK(std::abs(fd[a] - A[a][b].get_d()) < 1e-6);
    }
  }
}

TEST_CASE("F is an Ad-cocycle with dF_e = theta") {
  std::mt19937_64 rng(29);
  const auto e = GroupElementG<Rational>::identity(2);
  const auto g0 = random_point(2, rng);
  CHECK(F_cocycle_residual(e, g0, J2).is_zero());
  CHECK(F_cocycle_residual(g0, inverse_g(g0, J2.exact()), J2).is_zero());
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 2;
    const auto J = t % 2 ? SkewMatrix::random(n, rng) : J2;
    const auto g = random_point(n, rng), h = random_point(n, rng);
    CHECK(F_cocycle_residual(g, h, J).is_zero());
  }
  for (int n : {2, 3}) {
    const auto J = SkewMatrix::random(n, rng);
    for (const auto& row : dF_identity_vs_theta(J)) CHECK(row.match());
  }
}

TEST_CASE("Poisson bracket kernel examples") {
  const auto& J = J2.exact();
  Covector<Rational> df{{1, 0}, {0, 0}, 0}, dg{{0, 0}, {1, 0}, 0};
  CHECK(poisson_bracket_cov<Rational>(1, df, dg, J) == 1);
  Covector<Rational> a{{0, 0}, {1, 0}, 0}, b{{0, 0}, {0, 1}, 0};
  CHECK(poisson_bracket_cov<Rational>(1, a, b, J) == -1);
  CHECK(poisson_bracket_cov<Rational>(Rational(3, 2), a, a, J) == 0);
}

TEST_CASE("omega examples") {
  const auto& J = J2.exact();
  PlanePoint<Rational> a{{1, 0}, {0, 0}}, b{{0, 0}, {1, 0}};
  CHECK(lie_cocycle_omega<Rational>(a, b, 2, J) == 2);
  CHECK(lie_cocycle_omega<Rational>(a, a, 2, J) == 0);
  PlanePoint<Rational> c{{1, 2}, {0, 0}}, d{{3, -1}, {0, 0}};
  CHECK(lie_cocycle_omega<Rational>(c, d, 5, SkewMatrix::zero(2).exact()) == 0);
}

TEST_CASE("Poisson bracket satisfies Jacobi on quadratic polynomials") {
  std::mt19937_64 rng(31);
  for (int n : {2, 3}) {
    const auto Jp = SkewMatrix::random(n, rng).as_polynomial();
    for (int t = 0; t < 5; ++t) {
      const auto f = random_polynomial(n, 2, rng), g = random_polynomial(n, 2, rng), h = random_polynomial(n, 2, rng);
      const auto pb = [&](const Polynomial& a, const Polynomial& b) { return poisson_bracket_polynomials(a, b, Jp); };
      CHECK((pb(pb(f, g), h) + pb(pb(g, h), f) + pb(pb(h, f), g)).is_zero());
      CHECK((pb(f, g) + pb(g, f)).is_zero());
    }
  }
}

TEST_CASE("non-skew J is rejected with a message") {
  CHECK_THROWS_WITH_AS(parse_skew_matrix_json(R"({"n":2,"J":[[0,1],[1,0]]})"), doctest::Contains("not skew"),
                       std::invalid_argument);
  CHECK_THROWS_AS(parse_skew_matrix_json(R"({"n":1,"J":[[0]]})"), std::invalid_argument);
  CHECK_NOTHROW(parse_skew_matrix_json(R"({"n":1,"J":[[0]],"allow_degenerate_n1":true})"));
  const auto J = parse_skew_matrix_json(R"({"n":3,"J":[[0,"1/2",0.25],["-1/2",0,3],[-0.25,-3,0]]})");
  CHECK(J(0, 2) == Rational(1, 4));
  CHECK(J(1, 0) == Rational(-1, 2));
}
