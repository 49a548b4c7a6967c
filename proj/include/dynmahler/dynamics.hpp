#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dynmahler/poly.hpp"
#include "dynmahler/roots.hpp"

namespace dynmahler {

// max(2S, S + 2) with S = sum_{i<d} |c_i|. For monic f and |z| >= R this
// guarantees |f(z)| >= 2|z|, so any orbit point beyond R escapes.
double escape_radius(const ZPoly& f);

// A monic integer polynomial of degree >= 2 together with the floating-point
// data every numeric routine needs. Implicitly constructible from ZPoly.
class DynMap {
 public:
  DynMap(ZPoly f);  // NOLINT(google-explicit-constructor)

  const ZPoly& exact() const { return f_; }
  const CPoly& numeric() const { return c_; }
  int degree() const { return f_.degree(); }
  double escape_radius() const { return radius_; }

  Complex operator()(Complex z) const {
    Complex r = c_.lead();
    for (int i = degree() - 1; i >= 0; --i) r = r * z + c_.coeffs()[static_cast<std::size_t>(i)];
    return r;
  }
  Complex derivative(Complex z) const {
    Complex r = c_.lead() * static_cast<double>(degree());
    for (int i = degree() - 1; i >= 1; --i) {
      r = r * z + static_cast<double>(i) * c_.coeffs()[static_cast<std::size_t>(i)];
    }
    return r;
  }
  // f^n(z) and (f^n)'(z).
  std::pair<Complex, Complex> iterate_with_derivative(Complex z, unsigned n) const;

 private:
  ZPoly f_;
  CPoly c_;
  double radius_;
};

enum class OrbitStatus { Escaped, CycleDetected, Undetermined };

struct OrbitReport {
  std::vector<Complex> points;  // z_0, z_1, ..., last computed point
  OrbitStatus status = OrbitStatus::Undetermined;
  int escape_step = -1;  // Escaped: first index with |z| > escape radius
  int tail = -1;         // CycleDetected: |z_{tail+period} - z_tail| <= tol
  int period = -1;
};

// Forward orbit with Brent cycle detection (tolerance tol).
OrbitReport orbit(const DynMap& f, Complex z0, int max_iter, double tol);

struct ExactPreperiodicity {
  bool preperiodic = false;
  int tail = -1;
  int period = -1;
  // Wandering because the rational was not an integer (denominators grow
  // as q^(d^n) under a monic integer map).
  bool by_denominator = false;
  std::vector<Integer> orbit;  // integer orbit values examined
};

// Always terminates: integer orbits either repeat inside [-R, R] or leave it.
ExactPreperiodicity is_preperiodic_exact(const ZPoly& f, const Rational& alpha);

enum class PreperVerdict { Preperiodic, Wandering, Undetermined };
std::string to_string(PreperVerdict v);

struct NumericPreperiodicity {
  PreperVerdict verdict = PreperVerdict::Undetermined;
  int tail = -1;
  int period = -1;
  int steps = 0;
  // Wandering verdicts are rigorous (escape); Preperiodic ones are not,
  // since a tolerance cycle may be an attracting limit cycle.
  bool heuristic = false;
};

NumericPreperiodicity is_preperiodic_numeric(const DynMap& f, Complex z0, double tol = 1e-8,
                                             int max_iter = 1000);

struct PeriodicPointOptions {
  std::size_t degree_cap = 4096;
  double tol = 1e-10;
  // Return each point once (roots of the squarefree part of f^n(z) - z,
  // computed exactly), rather than with multiplicity.
  bool distinct = false;
};

// Roots of f^n(z) - z.
std::vector<Complex> periodic_points(const DynMap& f, unsigned n,
                                     const PeriodicPointOptions& opts = {});

enum class CycleClass { Superattracting, Attracting, Neutral, Repelling };
std::string to_string(CycleClass c);

struct ClassifyOptions {
  double neutral_band = 1e-6;
  double superattract_eps = 1e-9;
  double cycle_tol = 1e-6;  // allowed |f^p(z) - z| / max(1, |z|)
};

// Nearest p/q with q <= 12 to arg(lambda) / 2pi. A hint, never a claim
// that lambda is a root of unity.
struct TurnHint {
  long num = 0;
  long den = 1;
  double distance = 0.0;
};

struct CycleReport {
  std::vector<Complex> cycle;
  Complex multiplier;
  CycleClass cls = CycleClass::Repelling;
  double abs_multiplier = 0.0;
  double turn = 0.0;  // arg(multiplier) / 2pi in [0, 1)
  TurnHint hint;
};

CycleReport classify_cycle(const DynMap& f, Complex point, unsigned period,
                           const ClassifyOptions& opts = {});

std::vector<Complex> critical_points(const ZPoly& f);

// max_k |c_k| of the coefficients of L o f - f o L.
double commutator_residual(const ZPoly& f, const CAffine& L);

// Affine L = a z + b with L o f = f o L: a runs over the (d-1)-th roots of
// unity, b over the roots of f(x) - x - a c_0. Candidates are kept when
// |L(f(z)) - f(L(z))| < tol at 50 fixed pseudo-random samples of the unit disk.
std::vector<CAffine> find_linear_commuters(const ZPoly& f, double tol = 1e-8);

}  // namespace dynmahler
