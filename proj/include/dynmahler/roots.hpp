#pragma once

#include <functional>
#include <vector>

#include "dynmahler/poly.hpp"

namespace dynmahler {

// All roots of a polynomial with multiplicity. Near-coincident roots are
// reported separately, never merged.
struct RootSet {
  std::vector<Complex> roots;
  double residual = 0.0;  // max |P(r)| / |lead|
  Complex lead{1.0, 0.0};
  int sweeps = 0;
};

struct RootOptions {
  int max_sweeps = 500;
  int polish_steps = 3;
};

// Simultaneous Aberth-Ehrlich iteration started on the circle of radius
// 1 + max|c_i / c_d|. Succeeds when max|P(r)|/|lead| <= tol * (1 + max|r|)^deg,
// otherwise throws RootFindingError carrying the best residual.
RootSet roots(const CPoly& p, double tol = 1e-10, const RootOptions& opts = {});

// One Newton evaluation of an implicitly given monic function F at z.
struct NewtonStep {
  Complex ratio;       // F(z) / F'(z)
  double abs_value;    // |F(z)|, possibly +inf
  double noise;        // rounding-error level of |F(z)|
};

// Root-finding for monic functions of known degree that are cheaper or more
// stable to evaluate than to expand (iterates of a map, for instance).
// Initial guesses lie on the circle of the given radius.
RootSet roots_of(int degree, const std::function<NewtonStep(Complex)>& step, double radius,
                 double tol = 1e-10, const RootOptions& opts = {});

}  // namespace dynmahler
