#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <optional>
#include <string>

#include "dynmahler/dynamics.hpp"

namespace dynmahler {

using HighReal = boost::multiprecision::cpp_bin_float_50;

enum class Membership { Inside, Outside };

struct MultibrotMember {
  Membership status = Membership::Inside;  // Inside: bounded through max_iter
  int escape_step = -1;
};

// Critical orbit 0, c, c^d + c, ... with escape radius 2 max(2, |c|).
MultibrotMember multibrot_member(int d, Complex c, int max_iter = 10000);

struct RealInterval {
  HighReal lo;
  HighReal hi;
  std::string lo_formula;
  std::string hi_formula;
};

// The closed interval M_d intersected with the real line.
RealInterval multibrot_real_interval(int d);

struct QuadraticNormalForm {
  ZPoly form;   // z^2 + c or z^2 + z + c
  IntAffine L;  // conjugate(f, L) == form
};

// f = z^2 + a z + b. L = z - a1 with a = 2 a1 or a = 2 a1 + 1.
QuadraticNormalForm quadratic_normal_form(const ZPoly& f);

struct UnicriticalNormalForm {
  Integer c;    // conjugate(f, L) == z^d + c
  IntAffine L;  // z + gamma
};

// nullopt when f is not (z - gamma)^d + b with integral gamma.
std::optional<UnicriticalNormalForm> unicritical_normal_form(const ZPoly& f);

enum class Holds { Yes, No, Unknown };
enum class PreperReason {
  TotallyDisconnected,
  NeutralRootOfUnity,
  ChebyshevSegment,
  PowerMapBoundary,
  AttractingCycle,
  NotClassified,
};
std::string to_string(Holds h);
std::string to_string(PreperReason r);

struct PreperJuliaVerdict {
  Holds holds = Holds::Unknown;
  PreperReason reason = PreperReason::NotClassified;
  // The attracting cycle for No; the neutral cycle for NeutralRootOfUnity.
  // Points are in the coordinates of f, not of the normal form.
  std::optional<CycleReport> witness;
  std::string normal_form;
};

// Whether every preperiodic point of f lies in its Julia set. Only monic
// integral quadratics and unicritical maps are classified; the rest is
// Unknown.
PreperJuliaVerdict preper_in_julia(const ZPoly& f);

}  // namespace dynmahler
