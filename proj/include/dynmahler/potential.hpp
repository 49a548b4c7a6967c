#pragma once

#include <cstddef>

#include "dynmahler/dynamics.hpp"
#include "dynmahler/poly.hpp"

namespace dynmahler {

struct PotentialValue {
  double value = 0.0;
  // false only when the orbit neither escaped nor visibly cycled within
  // max_iter; value is then reported as 0.
  bool converged = true;
  int iterations_used = 0;
};

struct GreenOptions {
  int max_iter = 10000;
  double tol = 1e-16;        // stop the escape tail once a term drops below this
  double cycle_tol = 1e-9;   // bounded orbit returning this close counts as cyclic
};

// Escape-rate limit lim d^-n log|f^n(z)|.
PotentialValue green(const DynMap& f, Complex z, const GreenOptions& opts = {});

struct HeightValue {
  double value = 0.0;
  double error_bound = 0.0;
  int iterations = 0;
  bool preperiodic = false;
};

struct HeightOptions {
  double target_error = 1e-10;
  // Give up refining once numerator or denominator exceeds this many bits;
  // the returned error_bound then reflects how far we got.
  std::size_t max_bits = std::size_t{1} << 22;
};

// lim h(f^n(alpha)) / d^n with exact rational iteration. error_bound is a
// bound on |value - true height|: the truncated tail plus a rounding
// allowance for the logarithms.
HeightValue canonical_height(const ZPoly& f, const Rational& alpha, const HeightOptions& opts = {});

// log|lead(P)| + sum of green over the roots of P. Constants give log|P|.
double mahler_univariate_jensen(const DynMap& f, const CPoly& P, double tol = 1e-10,
                                const GreenOptions& opts = {});
double mahler_univariate_jensen(const DynMap& f, const ZPoly& P, double tol = 1e-10,
                                const GreenOptions& opts = {});

}  // namespace dynmahler
