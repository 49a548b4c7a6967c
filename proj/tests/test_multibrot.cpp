#include <random>

#include "doctest.h"
#include "dynmahler/multibrot.hpp"
#include "dynmahler/potential.hpp"
#include "support.hpp"

using namespace dynmahler;
using testing::zp;

namespace {

// Powers of the unit root closest to lambda, order up to 6.
double root_of_unity_distance(Complex lambda) {
  double best = 1e9;
  for (int q = 1; q <= 6; ++q) {
    for (int p = 0; p < q; ++p) best = std::min(best, std::abs(lambda - std::polar(1.0, 2.0 * M_PI * p / q)));
  }
  return best;
}

void check_witness(const ZPoly& f, const PreperJuliaVerdict& v) {
  if (!v.witness) return;
  const CycleReport& w = *v.witness;
  const auto again = classify_cycle(f, w.cycle.front(), static_cast<unsigned>(w.cycle.size()));
  if (v.holds == Holds::No) {
    CHECK((again.cls == CycleClass::Attracting || again.cls == CycleClass::Superattracting));
  }
  if (v.reason == PreperReason::NeutralRootOfUnity) {
    CHECK(std::abs(w.abs_multiplier - 1.0) < 1e-9);
    CHECK(root_of_unity_distance(w.multiplier) < 1e-9);
  }
}

}  // namespace

TEST_SUITE("multibrot") {

TEST_CASE("membership examples") {
  CHECK(multibrot_member(2, -2.0).status == Membership::Inside);
  const auto out = multibrot_member(2, 0.5);
  CHECK(out.status == Membership::Outside);
  CHECK(out.escape_step > 0);
  CHECK(multibrot_member(3, -1.0).status == Membership::Outside);
  CHECK(multibrot_member(2, Complex(0.0, 1.0)).status == Membership::Inside);  // 0, i, i-1, -i, ...
}

TEST_CASE("real intervals") {
  auto r = multibrot_real_interval(2);
  CHECK(r.lo == -2);
  CHECK(r.hi == HighReal(1) / 4);

  // Closed forms, recomputed here at the same precision.
  using boost::multiprecision::pow;
  r = multibrot_real_interval(3);
  const HighReal three(3);
  CHECK(abs(r.hi - 2 / pow(three, HighReal(1.5))) < HighReal("1e-45"));
  CHECK(abs(r.lo + r.hi) < HighReal("1e-45"));
  CHECK(std::abs(r.hi.convert_to<double>() - 0.3849) < 1e-4);

  r = multibrot_real_interval(4);
  CHECK(abs(r.lo + pow(HighReal(2), HighReal(1) / 3)) < HighReal("1e-45"));
  CHECK(abs(r.hi - 3 / pow(HighReal(4), HighReal(4) / 3)) < HighReal("1e-45"));
  CHECK(std::abs(r.lo.convert_to<double>() + 1.2599) < 1e-4);
  CHECK(std::abs(r.hi.convert_to<double>() - 0.4724) < 1e-4);
  CHECK_FALSE(r.lo_formula.empty());
}

TEST_CASE("the right endpoint is a parabolic fixed point") {
  // At c = hi the fixed point z satisfies d z^(d-1) = 1 and z^d + c = z.
  for (int d = 2; d <= 7; ++d) {
    const double hi = multibrot_real_interval(d).hi.convert_to<double>();
    const double z = std::pow(1.0 / d, 1.0 / (d - 1));
    CHECK(std::abs(std::pow(z, d) + hi - z) < 1e-12);
  }
}

TEST_CASE("integer scans") {
  for (int d : {3, 5, 7}) {
    for (int c = -3; c <= 3; ++c) {
      CHECK((multibrot_member(d, double(c)).status == Membership::Inside) == (c == 0));
    }
  }
  for (int d : {2, 4, 6}) {
    for (int c = -3; c <= 3; ++c) {
      const bool inside = c == 0 || c == -1 || (d == 2 && c == -2);
      CHECK((multibrot_member(d, double(c)).status == Membership::Inside) == inside);
    }
  }
}

TEST_CASE("membership agrees with the real interval") {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<long> num(-3000, 1000);
  for (int d = 2; d <= 5; ++d) {
    const auto r = multibrot_real_interval(d);
    const double lo = r.lo.convert_to<double>(), hi = r.hi.convert_to<double>();
    int tested = 0;
    while (tested < 1000) {
      const double c = static_cast<double>(num(rng)) / 1000.0;
      if (std::abs(c - lo) < 1e-3 || std::abs(c - hi) < 1e-3) continue;
      const bool inside = c >= lo && c <= hi;
      // Near the parabolic endpoint the orbit creeps; give it room.
      CHECK((multibrot_member(d, c, 100000).status == Membership::Inside) == inside);
      ++tested;
    }
  }
}

TEST_CASE("quadratic normal forms") {
  auto q = quadratic_normal_form(zp({1, 2, 1}));
  CHECK(q.form == zp({1, 0, 1}));
  CHECK(conjugate(zp({1, 2, 1}), q.L) == q.form);

  q = quadratic_normal_form(zp({0, 0, 1}));
  CHECK(q.form == zp({0, 0, 1}));
  CHECK(q.L == IntAffine::identity());

  q = quadratic_normal_form(zp({1, 3, 1}));
  CHECK(q.form == zp({0, 1, 1}));
  CHECK(conjugate(zp({1, 3, 1}), q.L) == q.form);

  for (long a = -7; a <= 7; ++a) {
    for (long b = -5; b <= 5; ++b) {
      const ZPoly f = zp({b, a, 1});
      q = quadratic_normal_form(f);
      CHECK(conjugate(f, q.L) == q.form);
      CHECK(q.form.lead() == 1);
      CHECK((q.form.coeff(1) == 0 || q.form.coeff(1) == 1));
    }
  }
  CHECK_THROWS_AS(quadratic_normal_form(zp({0, 0, 2})), InputError);
  CHECK_THROWS_AS(quadratic_normal_form(zp({0, 0, 0, 1})), InputError);
}

TEST_CASE("unicritical normal forms") {
  auto u = unicritical_normal_form(zp({0, 0, 0, 1}));
  REQUIRE(u);
  CHECK(u->c == 0);
  CHECK(u->L == IntAffine::identity());

  const ZPoly f = zp({4, 3, -3, 1});
  u = unicritical_normal_form(f);
  REQUIRE(u);
  CHECK(u->c == 4);
  CHECK(u->L == IntAffine(Integer(1), Integer(1)));
  CHECK(conjugate(f, u->L) == zp({4, 0, 0, 1}));

  CHECK_FALSE(unicritical_normal_form(zp({1, -1, 0, 1})));
  // z^4 - 2z^3: the centre 1/2 is not integral.
  CHECK_FALSE(unicritical_normal_form(zp({0, 0, 0, -2, 1})));

  for (long g = -3; g <= 3; ++g) {
    for (long b = -3; b <= 3; ++b) {
      for (unsigned d = 3; d <= 6; ++d) {
        const ZPoly h = compose(ZPoly::monomial(Integer(1), d), zp({-g, 1})) + ZPoly::constant(Integer(b));
        u = unicritical_normal_form(h);
        REQUIRE(u);
        CHECK(conjugate(h, u->L) == ZPoly::monomial(Integer(1), d) + ZPoly::constant(u->c));
        CHECK(u->c == b - g);
      }
    }
  }
}

TEST_CASE("preperiodic points in the Julia set: examples") {
  auto v = preper_in_julia(zp({-1, 0, 1}));
  CHECK(v.holds == Holds::No);
  REQUIRE(v.witness);
  CHECK(v.witness->cls == CycleClass::Superattracting);
  CHECK(v.witness->cycle.size() == 2);
  check_witness(zp({-1, 0, 1}), v);

  v = preper_in_julia(zp({-2, 1, 1}));
  CHECK(v.holds == Holds::Yes);
  CHECK(v.reason == PreperReason::NeutralRootOfUnity);
  REQUIRE(v.witness);
  CHECK(v.witness->cycle.size() == 3);
  CHECK(std::abs(v.witness->multiplier - 1.0) < 1e-9);
  check_witness(zp({-2, 1, 1}), v);

  v = preper_in_julia(zp({-1, 0, 0, 0, 1}));
  CHECK(v.holds == Holds::No);
  REQUIRE(v.witness);
  CHECK(v.witness->cls == CycleClass::Superattracting);
  check_witness(zp({-1, 0, 0, 0, 1}), v);

  CHECK(preper_in_julia(zp({-2, 0, 1})).reason == PreperReason::ChebyshevSegment);
  CHECK(preper_in_julia(zp({0, 0, 1})).holds == Holds::No);
  CHECK(preper_in_julia(zp({1, -1, 0, 1})).holds == Holds::Unknown);
  CHECK(preper_in_julia(zp({-1, 0, 0, 1})).holds == Holds::Yes);  // odd d, c = -1
}

TEST_CASE("verdicts survive integral conjugation") {
  for (long a = -6; a <= 6; ++a) {
    for (long b = -6; b <= 6; ++b) {
      const ZPoly f = zp({b, a, 1});
      const auto v = preper_in_julia(f);
      CHECK(v.holds != Holds::Unknown);
      check_witness(f, v);
      // No happens exactly for the classes of z^2 and z^2 - 1.
      const auto q = quadratic_normal_form(f);
      const bool exceptional = q.form == zp({0, 0, 1}) || q.form == zp({-1, 0, 1});
      CHECK((v.holds == Holds::No) == exceptional);
      if (v.witness) {
        for (const Complex& z : v.witness->cycle) CHECK(green(f, z).value == 0.0);
      }
    }
  }
  for (unsigned d = 3; d <= 5; ++d) {
    for (long g = -2; g <= 2; ++g) {
      for (long c = -3; c <= 3; ++c) {
        const ZPoly h =
            compose(ZPoly::monomial(Integer(1), d), zp({-g, 1})) + ZPoly::constant(Integer(c + g));
        const auto v = preper_in_julia(h);
        const bool no = c == 0 || (d % 2 == 0 && c == -1);
        CHECK((v.holds == Holds::No) == no);
        check_witness(h, v);
      }
    }
  }
}

}  // TEST_SUITE
