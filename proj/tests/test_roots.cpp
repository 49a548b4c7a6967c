#include <random>

#include "doctest.h"
#include "dynmahler/roots.hpp"
#include "support.hpp"

using namespace dynmahler;
using testing::zp;

TEST_SUITE("roots") {

TEST_CASE("small examples") {
  auto r = roots(to_complex(zp({-1, 0, 1}))).roots;
  CHECK(testing::multiset_distance(r, {1.0, -1.0}) < 1e-12);

  // Each root of z^3 + 2z^2 - z - 1 is on the neutral 3-cycle of z^2 + z - 2.
  const ZPoly g = zp({-2, 1, 1});
  const CPoly dg3 = to_complex(derivative(iterate(g, 3)));
  const auto c3 = roots(to_complex(zp({-1, -1, 2, 1}))).roots;
  REQUIRE(c3.size() == 3);
  for (const Complex& z : c3) {
    CHECK(std::abs(z.imag()) < 1e-12);
    CHECK(std::abs(dg3(z) - 1.0) < 1e-6);
  }
}

TEST_CASE("Lehmer polynomial has one root outside the unit circle") {
  const ZPoly lehmer = zp({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});
  const auto r = roots(to_complex(lehmer)).roots;
  REQUIRE(r.size() == 10);
  int outside = 0;
  double big = 0.0;
  for (const Complex& z : r) {
    if (std::abs(z) > 1.0 + 1e-9) {
      ++outside;
      big = std::abs(z);
    }
  }
  CHECK(outside == 1);
  CHECK(big == doctest::Approx(1.176280818).epsilon(1e-9));
}

TEST_CASE("agrees with the companion-matrix oracle") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 40; ++t) {
    const int deg = 1 + static_cast<int>(rng() % 12);
    std::vector<Complex> c(static_cast<std::size_t>(deg) + 1);
    for (auto& v : c) v = {nd(rng), nd(rng)};
    const CPoly p(c);
    const auto ours = roots(p).roots;
    const auto oracle = testing::eigen_roots(p);
    CHECK(testing::multiset_distance(ours, oracle) < 1e-6);
  }
}

TEST_CASE("reconstruction from well separated roots") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const int deg = 1 + static_cast<int>(rng() % 12);
    std::vector<Complex> rs;
    for (int k = 0; k < deg; ++k) {
      rs.push_back(std::polar(0.5 + u(rng), 2.0 * M_PI * (k + 0.3 * u(rng)) / deg));
    }
    const Complex lead(1.0 + u(rng), u(rng));
    CPoly P = CPoly::constant(lead);
    for (const Complex& z : rs) P = P * CPoly({-z, Complex(1.0)});
    const auto found = roots(P).roots;
    CPoly Q = CPoly::constant(lead);
    for (const Complex& z : found) Q = Q * CPoly({-z, Complex(1.0)});
    double scale = 0.0;
    for (const Complex& c : P.coeffs()) scale = std::max(scale, std::abs(c));
    for (int k = 0; k <= deg; ++k) {
      CHECK(std::abs(P.coeff(static_cast<std::size_t>(k)) - Q.coeff(static_cast<std::size_t>(k))) < 1e-8 * scale);
    }
  }
}

TEST_CASE("multiple roots are returned with multiplicity") {
  const ZPoly p = zp({-1, 1}) * zp({-1, 1}) * zp({-1, 1}) * zp({2, 1});
  const auto r = roots(to_complex(p), 1e-8).roots;
  REQUIRE(r.size() == 4);
  int near_one = 0;
  for (const Complex& z : r) near_one += std::abs(z - 1.0) < 1e-4;
  CHECK(near_one == 3);
}

TEST_CASE("residual contract") {
  const CPoly p = to_complex(zp({3, -2, 0, 5, 1, 1}));
  const RootSet rs = roots(p, 1e-10);
  double maxr = 0.0;
  for (const Complex& z : rs.roots) maxr = std::max(maxr, std::abs(z));
  CHECK(rs.residual <= 1e-10 * std::pow(1.0 + maxr, 5));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(roots(CPoly::constant(Complex(2.0))), InputError);
  RootOptions o;
  o.max_sweeps = 1;
  o.polish_steps = 0;
  std::vector<Complex> c(41, 0.0);
  c[0] = 1.0;
  c[40] = 1.0;
  c[17] = 3.0;
  try {
    roots(CPoly(c), 1e-15, o);
  } catch (const RootFindingError& e) {
    CHECK(e.best_residual() > 0.0);
  }
}

TEST_CASE("roots_of matches expanded roots for an iterate") {
  const ZPoly f = zp({-1, 0, 1});
  const ZPoly F = iterate(f, 3) - ZPoly::identity();
  const CPoly Fc = to_complex(F);
  const CPoly dF = derivative(Fc);
  auto step = [&](Complex z) {
    const Complex v = Fc(z);
    return NewtonStep{v / dF(z), std::abs(v), 1e-15 * (1.0 + std::pow(std::abs(z), 8))};
  };
  const auto a = roots_of(8, step, 3.0).roots;
  const auto b = testing::eigen_roots(F);
  CHECK(testing::multiset_distance(a, b) < 1e-7);
}

}  // TEST_SUITE
