#pragma once
// Test-only helpers and independent oracles. Nothing here calls into the
// numeric core it is used to check.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <utility>
#include <vector>

#include "dynmahler/mpoly.hpp"
#include "dynmahler/poly.hpp"

namespace testing {

using dynmahler::Complex;
using dynmahler::CPoly;
using dynmahler::Integer;
using dynmahler::MPoly;
using dynmahler::ZPoly;

inline ZPoly zp(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return ZPoly(std::move(v));
}

struct Term {
  std::vector<unsigned> exp;
  long coeff;
};

inline MPoly mp(std::size_t nvars, std::initializer_list<Term> terms) {
  MPoly p(nvars);
  for (const Term& t : terms) p.add_term(t.exp, Integer(t.coeff));
  return p;
}

// Companion-matrix eigenvalues.
inline std::vector<Complex> eigen_roots(const CPoly& p) {
  const int n = p.degree();
  std::vector<Complex> out;
  if (n < 1) return out;
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -p.coeffs()[static_cast<std::size_t>(i)] / p.lead();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

inline std::vector<Complex> eigen_roots(const ZPoly& p) {
  std::vector<Complex> c;
  for (const Integer& v : p.coeffs()) c.emplace_back(v.get_d(), 0.0);
  return eigen_roots(CPoly(std::move(c)));
}

// Classical Mahler measure by Jensen's formula on eigenvalue roots.
inline double classical_mahler(const ZPoly& p) {
  double m = std::log(std::abs(p.lead().get_d()));
  for (const Complex& r : eigen_roots(p)) m += std::log(std::max(1.0, std::abs(r)));
  return m;
}

// Greedy matching distance between two root multisets of equal size.
inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  double worst = 0.0;
  for (const Complex& x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](Complex u, Complex v) {
      return std::abs(u - x) < std::abs(v - x);
    });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

// lim 2^-n log|f^n(z)| by plain iteration in long double; enough for
// points that escape within a few dozen steps.
template <class F>
double brute_green(F f, Complex z, int d, int steps = 60) {
  std::complex<long double> w(z.real(), z.imag());
  long double scale = 1.0L;
  for (int n = 0; n < steps; ++n) {
    if (std::abs(w) > 1e200L) return static_cast<double>(std::log(std::abs(w)) * scale);
    w = f(w);
    scale /= d;
  }
  return static_cast<double>(std::log(std::max(1.0L, std::abs(w))) * scale);
}

}  // namespace testing
