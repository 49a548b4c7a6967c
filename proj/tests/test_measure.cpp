#include <algorithm>
#include <random>

#include "doctest.h"
#include "dynmahler/measure.hpp"
#include "support.hpp"

using namespace dynmahler;
using testing::mp;
using testing::zp;

namespace {

// m(1 + x + y) = (1/2pi) int log max(1, |1 + e^it|) dt by inner Jensen;
// the remaining one-dimensional integrand is continuous.
double smyth_oracle() {
  const int N = 2000000;
  double s = 0.0;
  for (int k = 0; k < N; ++k) {
    const double t = 2.0 * M_PI * (k + 0.5) / N;
    s += std::log(std::max(1.0, std::abs(1.0 + std::polar(1.0, t))));
  }
  return s / N;
}

double ks_uniform(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double D = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    D = std::max({D, (i + 1) / n - u[i], u[i] - i / n});
  }
  return D;
}

const MPoly kXminusY = mp(2, {{{1, 0}, 1}, {{0, 1}, -1}});
const MPoly kOnePlusXPlusY = mp(2, {{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}});

}  // namespace

TEST_SUITE("measure") {

TEST_CASE("seed schedule") {
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(stream_seed(7, 0) == splitmix64(7 + 0x9e3779b97f4a7c15ULL));
  CHECK(stream_seed(7, 3) != stream_seed(7, 4));
  CHECK(stream_seed(7, 3) != stream_seed(8, 3));
}

TEST_CASE("repelling start points") {
  CHECK(std::abs(repelling_start_point(zp({0, 0, 1})) - 1.0) < 1e-12);
  const Complex w = repelling_start_point(zp({-2, 0, 1}));
  CHECK((std::abs(w - 2.0) < 1e-12 || std::abs(w + 1.0) < 1e-12));
  const Complex g = repelling_start_point(zp({-1, 0, 1}));
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK((std::abs(g - phi) < 1e-12 || std::abs(g - (1.0 - phi)) < 1e-12));

  for (const ZPoly& p : {zp({-1, 0, 1}), zp({0, 1, 1}), zp({-2, 1, 1}), zp({1, -1, 0, 1}), zp({3, 0, 0, 0, 1})}) {
    const DynMap f = p;
    const Complex s = repelling_start_point(f);
    // A fixed point, or a 2-periodic point when no fixed point repels.
    const bool fixed = std::abs(f(s) - s) < 1e-10;
    const bool two = std::abs(f(f(s)) - s) < 1e-10;
    CHECK((fixed || two));
    auto [w2, dw2] = f.iterate_with_derivative(s, fixed ? 1 : 2);
    CHECK(std::abs(dw2) > 1.0);
  }
}

TEST_CASE("preimages") {
  for (const ZPoly& p : {zp({-1, 0, 1}), zp({0, 1, 1}), zp({5, 0, 0, 1}), zp({1, -1, 0, 1}), zp({2, 0, 3, 0, 1})}) {
    const DynMap f = p;
    const Complex w(0.3, -1.7);
    const auto pre = preimages(f, w);
    CHECK(pre.size() == static_cast<std::size_t>(f.degree()));
    for (const Complex& z : pre) CHECK(std::abs(f(z) - w) < 1e-10 * (1.0 + std::abs(w)));
  }
  const auto sq = preimages(zp({0, 0, 1}), std::polar(1.0, 0.4));
  for (const Complex& z : sq) CHECK(std::abs(std::abs(z) - 1.0) < 1e-15);
}

TEST_CASE("sampler law for z^2: unit circle, uniform angle") {
  MeasureSampler s(zp({0, 0, 1}), 123);
  std::vector<double> u;
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const Complex z = s.next();
    worst = std::max(worst, std::abs(std::abs(z) - 1.0));
    // Thin by 7 steps; successive states share most of their angle bits.
    for (int j = 0; j < 6; ++j) s.next();
    u.push_back((std::arg(z) + M_PI) / (2.0 * M_PI));
  }
  CHECK(worst < 1e-9);
  CHECK(ks_uniform(u) < 1.6276 / std::sqrt(10000.0));
}

TEST_CASE("sampler law for z^2 - 2: arcsine on [-2, 2]") {
  MeasureSampler s(zp({-2, 0, 1}), 321);
  CHECK(std::abs(s.start_point() + 1.0) < 1e-12);  // |f'(-1)| = 2 < |f'(2)| = 4
  std::vector<double> u;
  for (int k = 0; k < 10000; ++k) {
    Complex z = s.next();
    for (int j = 0; j < 6; ++j) z = s.next();
    CHECK(std::abs(z.imag()) < 1e-9);
    CHECK(std::abs(z.real()) <= 2.0 + 1e-9);
    u.push_back(0.5 + std::asin(std::clamp(z.real() / 2.0, -1.0, 1.0)) / M_PI);
  }
  CHECK(ks_uniform(u) < 1.6276 / std::sqrt(10000.0));
}

TEST_CASE("sampler is reproducible") {
  MeasureSampler a(zp({-1, 0, 1}), 99), b(zp({-1, 0, 1}), 99), c(zp({-1, 0, 1}), 100);
  bool differs = false;
  for (int k = 0; k < 100; ++k) {
    const Complex za = a.next(), zb = b.next(), zc = c.next();
    CHECK(za == zb);
    differs = differs || za != zc;
  }
  CHECK(differs);
}

TEST_CASE("preimage trees") {
  const auto t = preimage_tree(zp({0, 0, 1}), 1.0, 3);
  std::vector<Complex> roots8;
  for (int k = 0; k < 8; ++k) roots8.push_back(std::polar(1.0, 2.0 * M_PI * k / 8));
  CHECK(testing::multiset_distance(t, roots8) < 1e-12);

  const DynMap f = zp({-1, 0, 1});
  const Complex w = (1.0 + std::sqrt(5.0)) / 2.0;
  const auto t2 = preimage_tree(f, w, 2);
  CHECK(t2.size() == 4);
  for (const Complex& z : t2) CHECK(std::abs(f(f(z)) - w) < 1e-8);

  const auto t10 = preimage_tree(zp({0, 0, 1}), 1.0, 10);
  double mean = 0.0;
  for (const Complex& z : t10) mean += std::log(std::abs(z - 3.0));
  CHECK(std::abs(mean / t10.size() - std::log(3.0)) < 1e-3);

  CHECK_THROWS_AS(preimage_tree(zp({0, 0, 1}), 1.0, 20, 1 << 16), DegreeCapError);
}

TEST_CASE("Monte Carlo examples") {
  McOptions o;
  o.seed = 5;
  auto r = mahler_mc(zp({0, 0, 1}), mp(1, {{{1}, 1}, {{0}, -2}}), o);
  CHECK(std::abs(r.estimate - std::log(2.0)) <= 3.0 * r.std_error + 1e-12);
  CHECK(r.method == Method::MC);
  CHECK(r.n_samples == o.n_samples);

  r = mahler_mc(zp({-1, 0, 1}), kXminusY, o);
  CHECK(std::abs(r.estimate) <= std::max(3.0 * r.std_error, 1e-2));

  r = mahler_mc(zp({0, 0, 1}), kOnePlusXPlusY, o);
  CHECK(std::abs(r.estimate - smyth_oracle()) <= 3.0 * r.std_error);
  CHECK(r.std_error > 0.0);
}

TEST_CASE("Monte Carlo is deterministic across thread counts") {
  McOptions o;
  o.seed = 11;
  o.n_samples = 20000;
  o.threads = 1;
  const auto a = mahler_mc(zp({-1, 0, 1}), kOnePlusXPlusY, o);
  o.threads = 4;
  const auto b = mahler_mc(zp({-1, 0, 1}), kOnePlusXPlusY, o);
  CHECK(a.estimate == b.estimate);
  CHECK(a.std_error == b.std_error);
  o.seed = 12;
  CHECK(mahler_mc(zp({-1, 0, 1}), kOnePlusXPlusY, o).estimate != a.estimate);
}

TEST_CASE("shared samples make additivity exact") {
  McOptions o;
  o.seed = 3;
  o.n_samples = 20000;
  const MPoly P = kOnePlusXPlusY;
  const MPoly Q = mp(2, {{{2, 1}, 3}, {{0, 0}, -1}, {{1, 0}, 1}});
  const std::vector<MPoly> polys = {P * Q, P, Q};
  const auto r = mahler_mc_shared(zp({-2, 1, 1}), polys, o);
  CHECK(std::abs(r[0].estimate - r[1].estimate - r[2].estimate) < 1e-12);
}

TEST_CASE("rejections beyond budget raise") {
  McOptions o;
  o.n_samples = 1000;
  o.underflow_floor = 10.0;  // every |x - y| on J_{z^2} is at most 2
  CHECK_THROWS_AS(mahler_mc(zp({0, 0, 1}), kXminusY, o), Error);
}

TEST_CASE("tree and Monte Carlo agree") {
  McOptions o;
  o.seed = 17;
  struct Case {
    ZPoly f;
    MPoly P;
    int depth;
  };
  const std::vector<Case> panel = {
      {zp({-1, 0, 1}), mp(1, {{{1}, 1}, {{0}, -3}}), 12},
      {zp({-2, 1, 1}), mp(1, {{{2}, 1}, {{0}, 1}}), 12},
      {zp({1, 0, 0, 1}), mp(1, {{{1}, 2}, {{0}, -1}}), 8},
  };
  for (const auto& [f, P, depth] : panel) {
    const auto t = mahler_tree(f, P, depth);
    const auto m = mahler_mc(f, P, o);
    CHECK(t.method == Method::Tree);
    CHECK(t.depth == depth);
    CHECK(std::abs(t.estimate - m.estimate) <= 3.0 * m.std_error + 1e-3);
  }
}

TEST_CASE("nested decomposition") {
  McOptions o;
  o.seed = 21;
  o.n_samples = 20000;
  auto r = mahler_nested(zp({0, 0, 1}), kXminusY, o);
  CHECK(std::abs(r.estimate) < 1e-6);

  // (x - 2) y + 1 under z^2: leading coefficient x - 2 contributes log 2,
  // the root -1/(z - 2) stays in the unit disk.
  const MPoly P = mp(2, {{{1, 1}, 1}, {{0, 1}, -2}, {{0, 0}, 1}});
  r = mahler_nested(zp({0, 0, 1}), mp(2, {{{1, 1}, 1}, {{1, 0}, -2}, {{0, 0}, 1}}), o);
  CHECK(std::abs(r.estimate - std::log(2.0)) < 1e-9);
  CHECK(std::abs(mahler_circle(P, 1024).estimate - std::log(2.0)) < 1e-4);

  // x y - 1 under z^2 - 1: nested vs plain Monte Carlo.
  const MPoly xy1 = mp(2, {{{1, 1}, 1}, {{0, 0}, -1}});
  const auto a = mahler_nested(zp({-1, 0, 1}), xy1, o);
  const auto b = mahler_mc(zp({-1, 0, 1}), xy1, o);
  CHECK(std::abs(a.estimate - b.estimate) <= 3.0 * std::hypot(a.std_error, b.std_error) + 1e-3);

  CHECK_THROWS_AS(mahler_nested(zp({0, 0, 1}), mp(2, {{{0, 1}, 1}}), o), InputError);
}

TEST_CASE("circle quadrature") {
  auto r = mahler_circle(mp(1, {{{1}, 1}, {{0}, -2}}));
  CHECK(r.estimate == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  const ZPoly lehmer = zp({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});
  r = mahler_circle(MPoly::from_univariate(lehmer, 1, 0));
  CHECK(std::abs(r.estimate - 0.162357612) < 1e-6);
  CHECK(std::abs(r.estimate - testing::classical_mahler(lehmer)) < 1e-9);
  r = mahler_circle(kOnePlusXPlusY, 4096);
  CHECK(std::abs(r.estimate - smyth_oracle()) < 1e-4);
  CHECK(std::abs(mahler_circle(MPoly::constant(2, Integer(-3))).estimate - std::log(3.0)) < 1e-15);
}

TEST_CASE("segment quadrature") {
  const MPoly x = mp(1, {{{1}, 1}});
  CHECK(std::abs(mahler_segment(x, -2.0, 2.0).estimate) < 1e-6);
  const MPoly x3 = mp(1, {{{1}, 1}, {{0}, -3}});
  CHECK(std::abs(mahler_segment(x3, -2.0, 2.0).estimate - std::log((3.0 + std::sqrt(5.0)) / 2.0)) < 1e-9);
  const MPoly x10 = mp(1, {{{1}, 1}, {{0}, -10}});
  CHECK(std::abs(mahler_segment(x10, -2.0, 2.0).estimate - testing::classical_mahler(zp({1, -10, 1}))) < 1e-9);
  // Segment [0, 4] is J of the Chebyshev map conjugated by z + 2.
  CHECK(std::abs(mahler_segment(mp(1, {{{1}, 1}, {{0}, -5}}), 0.0, 4.0).estimate -
                 mahler_segment(x3, -2.0, 2.0).estimate) < 1e-9);
  CHECK_THROWS_AS(mahler_segment(x, 1.0, 1.0), InputError);
}

TEST_CASE("Boyd-Lawton sequences") {
  for (const auto& t : boyd_lawton_sequence(zp({-1, 0, 1}), kXminusY, 5)) {
    CHECK(std::abs(t.result.estimate) < 1e-6);
  }
  for (const auto& t : boyd_lawton_sequence(zp({0, 0, 1}), mp(2, {{{1, 1}, 1}, {{0, 0}, -1}}), 6)) {
    CHECK(std::abs(t.result.estimate) < 1e-9);
  }
  const auto seq = boyd_lawton_sequence(zp({0, 0, 1}), kOnePlusXPlusY, 5);
  REQUIRE(seq.size() == 5);
  for (const auto& t : seq) {
    CHECK(t.specialized.degree() == (1 << t.n));
    CHECK(std::abs(t.result.estimate - testing::classical_mahler(t.specialized)) < 1e-6);
  }
  CHECK(std::abs(seq.back().result.estimate - smyth_oracle()) < 5e-3);
  CHECK_THROWS_AS(boyd_lawton_sequence(zp({0, 0, 1}), kOnePlusXPlusY, 13), DegreeCapError);
}

TEST_CASE("conjugation invariance of trees") {
  // f = z^2 - 2, L = z + 1: f^L = z^2 + 2z - 2, P = x - 3.
  const ZPoly f = zp({-2, 0, 1});
  const IntAffine L(Integer(1), Integer(1));
  const ZPoly fL = conjugate(f, L);
  const MPoly P = mp(1, {{{1}, 1}, {{0}, -3}});
  const MPoly PLinv = P.substitute(0, L.inverse().as_poly(), 0);
  const Complex w = 2.0;
  const auto a = mahler_tree(fL, P, 12, w - 1.0);
  const auto b = mahler_tree(f, PLinv, 12, w);
  CHECK(std::abs(a.estimate - b.estimate) < 1e-9);
}

TEST_CASE("estimates of primitive polynomials are not negative") {
  std::mt19937_64 rng(61);
  McOptions o;
  o.n_samples = 5000;
  for (int t = 0; t < 10; ++t) {
    MPoly P(2);
    for (int k = 0; k < 3; ++k) {
      P.add_term({static_cast<unsigned>(rng() % 3), static_cast<unsigned>(rng() % 3)},
                 Integer(static_cast<long>(rng() % 7) - 3));
    }
    if (P.is_zero()) continue;
    P = content_primitive(P).second;
    o.seed = t;
    const auto r = mahler_mc(zp({-1, 0, 1}), P, o);
    CHECK(r.estimate > -std::max(3.0 * r.std_error, 1e-3));
  }
}

}  // TEST_SUITE
