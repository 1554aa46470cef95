#include <catch_amalgamated.hpp>

#include <lieclass/algebraic.hpp>

using namespace lieclass;

namespace {
Poly P(std::vector<long> c) {
  std::vector<Q> q;
  for (long x : c) q.emplace_back(x);
  return Poly(q);
}
}  // namespace

TEST_CASE("rational parsing accepts integers and fractions") {
  CHECK(parse_rational("3") == Q(3));
  CHECK(parse_rational("-6/4") == Q(-3, 2));
  CHECK(parse_rational("+1/2") == Q(1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("a"), ParseError);
}

TEST_CASE("matrix elimination") {
  QMatrix m = QMatrix::from_rows({{1, 2}, {3, 4}});
  CHECK(determinant(m) == -2);
  auto inv = inverse(m);
  REQUIRE(inv);
  CHECK(*inv * m == QMatrix::identity(2));
  QMatrix s = QMatrix::from_rows({{1, 2, 3}, {2, 4, 6}});
  CHECK(rank(s) == 1);
  auto ker = nullspace(s);
  CHECK(ker.size() == 2);
  for (auto& v : ker) CHECK((s * v) == Vec{0, 0});
  CHECK_FALSE(inverse(QMatrix::from_rows({{1, 2}, {2, 4}})));
  auto x = solve(m, Vec{5, 11});
  REQUIRE(x);
  CHECK(*x == Vec{1, 2});
}

TEST_CASE("polynomial arithmetic") {
  // (x-1)(x-2) and (x-2)(x+3)
  Poly a = P({2, -3, 1}), b = P({-6, 1, 1});
  CHECK(gcd(a, b) == P({-2, 1}));
  auto [q, r] = divmod(P({-1, 0, 0, 1}), P({-1, 1}));
  CHECK(q == P({1, 1, 1}));
  CHECK(r.zero());
  CHECK(charpoly(QMatrix::from_rows({{1, 2}, {3, 4}})) == P({-2, -5, 1}));
  // (x-1)^2 (x+2)
  auto sf = squarefree_decomposition(P({2, -3, 0, 1}));
  REQUIRE(sf.size() == 2);
  CHECK(sf[0] == P({2, 1}));
  CHECK(sf[1] == P({-1, 1}));
  CHECK(P({1, 2, 3}).negate_var() == P({1, -2, 3}));
  CHECK(P({1, 2}).square_var() == P({1, 0, 2}));
}

TEST_CASE("simplest rational in an interval") {
  CHECK(simplest_between(Q(1, 3), Q(1, 2)) == Q(2, 5));
  CHECK(simplest_between(Q(3, 10), Q(7, 20)) == Q(1, 3));
  CHECK(simplest_between(Q(-1, 2), Q(1, 2)) == 0);
  CHECK(simplest_between(Q(7, 3), Q(5, 2)) == Q(12, 5));
  CHECK(simplest_between(Q(-5, 2), Q(-7, 3)) == Q(-12, 5));
  CHECK(simplest_between(Q(0), Q(1, 3)) == Q(1, 4));
}

TEST_CASE("real root isolation and rational roots") {
  auto r = isolate_real_roots(P({-2, 0, 1}));
  REQUIRE(r.size() == 2);
  CHECK(r[0].hi <= 0);
  CHECK(r[1].lo >= 0);
  // (2x-1)(x^2-2)(x+3)
  Poly p = P({-1, 2}) * P({-2, 0, 1}) * P({3, 1});
  CHECK(rational_roots(p) == std::vector<Q>{Q(-3), Q(1, 2)});
  CHECK(rational_roots(P({1, 0, 1})).empty());
}

TEST_CASE("real algebraic arithmetic") {
  RealNum two(2), three(3);
  RealNum s2 = two.sqrt(), s3 = three.sqrt();
  CHECK_FALSE(s2.is_rational());
  CHECK(s2 * s2 == two);
  CHECK(RealNum(8).sqrt() == RealNum(2) * s2);
  CHECK(s2.inverse() == s2 / two);
  CHECK(s2 < s3);
  CHECK(s2 != s3);
  RealNum sum = s2 + s3;  // 3.14626...
  CHECK(sum > RealNum(Q(314, 100)));
  CHECK(sum < RealNum(Q(315, 100)));
  CHECK((sum - s3) == s2);
  CHECK((-s2).sign() == -1);
  CHECK(RealNum(Q(9, 4)).sqrt().is_rational());
  CHECK(RealNum(Q(9, 4)).sqrt() == RealNum(Q(3, 2)));
  CHECK((s2 * s3 - RealNum(6).sqrt()).sign() == 0);
  CHECK(std::abs(s2.approx() - 1.4142135623730951) < 1e-12);
}
