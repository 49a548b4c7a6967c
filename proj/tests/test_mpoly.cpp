#include <random>

#include "doctest.h"
#include "dynmahler/mpoly.hpp"
#include "support.hpp"

using namespace dynmahler;
using testing::mp;
using testing::zp;

namespace {

MPoly random_mpoly(std::mt19937_64& rng, std::size_t nvars, int terms, unsigned max_exp) {
  MPoly p(nvars);
  std::uniform_int_distribution<long> coef(-5, 5);
  for (int t = 0; t < terms; ++t) {
    Exponent e(nvars);
    for (auto& x : e) x = static_cast<unsigned>(rng() % (max_exp + 1));
    p.add_term(e, Integer(coef(rng)));
  }
  if (p.is_zero()) p = MPoly::constant(nvars, Integer(1));
  return p;
}

}  // namespace

TEST_SUITE("mpoly") {

TEST_CASE("no zero coefficients are stored") {
  MPoly p(2);
  p.add_term({1, 0}, Integer(3));
  p.add_term({1, 0}, Integer(-3));
  CHECK(p.is_zero());
  CHECK(p.terms().empty());
  CHECK_THROWS(p.add_term({1}, Integer(1)));
}

TEST_CASE("arithmetic and evaluation") {
  const MPoly x = MPoly::variable(2, 0), y = MPoly::variable(2, 1);
  const MPoly p = (x - y) * (x + y);
  CHECK(p == mp(2, {{{2, 0}, 1}, {{0, 2}, -1}}));
  const std::vector<Complex> pt = {Complex(2.0, 1.0), Complex(-0.5, 0.25)};
  CHECK(std::abs(p(pt) - (pt[0] * pt[0] - pt[1] * pt[1])) < 1e-14);
  CHECK(std::abs(MPolyEval(p)(pt) - p(pt)) < 1e-13);
  CHECK(p.degree_in(0) == 2);
  CHECK(p.total_degree() == 2);
}

TEST_CASE("content and primitive part") {
  auto [c1, p1] = content_primitive(mp(2, {{{1, 0}, 2}, {{0, 1}, 2}}));
  CHECK(c1 == 2);
  CHECK(p1 == mp(2, {{{1, 0}, 1}, {{0, 1}, 1}}));
  auto [c2, p2] = content_primitive(mp(1, {{{2}, 1}, {{1}, 1}}));
  CHECK(c2 == 1);
  auto [c3, p3] = content_primitive(mp(2, {{{2, 1}, 6}, {{1, 2}, -9}, {{0, 0}, 3}}));
  CHECK(c3 == 3);
  CHECK(p3 == mp(2, {{{2, 1}, 2}, {{1, 2}, -3}, {{0, 0}, 1}}));
  CHECK(c3 * p3 == mp(2, {{{2, 1}, 6}, {{1, 2}, -9}, {{0, 0}, 3}}));
  CHECK_THROWS(content_primitive(MPoly(2)));
}

TEST_CASE("divide_exact examples") {
  const MPoly x = MPoly::variable(2, 0), y = MPoly::variable(2, 1);
  auto q = divide_exact((x - y) * (x + y), x - y);
  REQUIRE(q);
  CHECK(*q == x + y);
  CHECK_FALSE(divide_exact(x * x - y * y + MPoly::constant(2, Integer(1)), x - y));

  // f(x) - f(y) for f = z^2 - 1, expanded directly.
  const ZPoly f = zp({-1, 0, 1});
  const MPoly F = MPoly::from_univariate(f, 2, 0) - MPoly::from_univariate(f, 2, 1);
  auto q2 = divide_exact(F, x - y);
  REQUIRE(q2);
  CHECK(*q2 == x + y);

  CHECK_FALSE(divide_exact(2 * x + MPoly::constant(2, Integer(1)), MPoly::constant(2, Integer(2))));
  CHECK_THROWS(divide_exact(x, MPoly(2)));
}

TEST_CASE("divide_exact roundtrip on random products") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + rng() % 3;
    const MPoly A = random_mpoly(rng, n, 4, 3);
    const MPoly B = random_mpoly(rng, n, 3, 2);
    auto q = divide_exact(A * B, B);
    REQUIRE(q);
    CHECK(*q == A);
  }
}

TEST_CASE("substitute, specialize, coefficients_in, as_univariate") {
  const MPoly P = mp(2, {{{1, 0}, 1}, {{0, 1}, -1}});  // x - y
  const MPoly S = P.substitute(1, zp({-1, 0, 1}), 0);  // x - (x^2 - 1)
  auto u = S.as_univariate(0);
  REQUIRE(u);
  CHECK(*u == zp({1, 1, -1}));
  CHECK_FALSE(P.as_univariate(0));

  const std::vector<Complex> pt = {0.0, Complex(2.0, 1.0)};
  const CPoly c = P.specialize(0, pt);
  CHECK(c.degree() == 1);
  CHECK(std::abs(c.coeff(0) + Complex(2.0, 1.0)) < 1e-15);

  const auto cs = mp(2, {{{2, 1}, 3}, {{0, 0}, 1}, {{2, 0}, 5}}).coefficients_in(0);
  REQUIRE(cs.size() == 3);
  CHECK(cs[1].is_zero());
  CHECK(cs[2] == mp(2, {{{0, 1}, 3}, {{0, 0}, 5}}));
}

TEST_CASE("printing") {
  CHECK(to_string(mp(2, {{{1, 0}, 1}, {{0, 1}, -1}}), {"x", "y"}) == "x - y");
}

}  // TEST_SUITE
