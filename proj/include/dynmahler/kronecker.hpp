#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dynmahler/dynamics.hpp"
#include "dynmahler/mpoly.hpp"

namespace dynmahler {

enum class Verdict { CertifiedZero, PositiveEvidence, Undetermined };
std::string to_string(Verdict v);

struct RootWitness {
  Complex root;
  PreperVerdict verdict = PreperVerdict::Undetermined;
  int tail = -1;
  int period = -1;
};

// Hypotheses behind a factor f~^n(x) - L(f~^m(y)): f~ commutes with some
// iterate f^k (k <= 3), and L is a symmetry of the Julia set, i.e.
// f o L = L^(o d) o f.
struct FactorCheck {
  bool ftilde_commutes = false;
  bool l_is_symmetry = false;
};

struct KroneckerVerdict {
  Verdict verdict = Verdict::Undetermined;
  double estimate = 0.0;     // Jensen value (univariate path)
  double std_error = 0.0;
  bool heuristic = false;    // CertifiedZero rests on numeric cycle detection
  std::vector<RootWitness> roots;
  std::optional<MPoly> product;   // R = prod of the factors
  std::optional<MPoly> cofactor;  // R / P
  std::vector<FactorCheck> checks;
  std::string note;
};

KroneckerVerdict certify_zero_univariate(const DynMap& f, const ZPoly& P);

struct FactorSpec {
  std::variant<ZPoly, CPoly> ftilde;
  std::variant<RatAffine, CAffine> L = RatAffine::identity();
  unsigned n = 0;
  unsigned m = 0;

  // f~ = f, L = identity.
  static FactorSpec with_default(const ZPoly& f, unsigned n = 0, unsigned m = 0);
};

struct FactorProduct {
  std::optional<MPoly> product;  // nullopt: NotIntegral
  bool snapped = false;          // came from the complex path
  bool reverified = false;       // snapped result recomputed exactly and matched
  double max_snap_distance = 0.0;
};

// prod_j (f~_j^{n_j}(x) - L_j(f~_j^{m_j}(y))) in Z[x, y]. Exact when every
// f~ is integral and every L rational; otherwise complex arithmetic with
// coefficients snapped to integers within 1e-6.
FactorProduct build_factor_product(std::span<const FactorSpec> specs,
                                   std::size_t degree_cap = 1024);

// CertifiedZero when P divides the factor product and every factor passes
// its FactorCheck; Undetermined otherwise. Never PositiveEvidence.
KroneckerVerdict certify_zero_bivariate(const DynMap& f, const MPoly& P,
                                        std::span<const FactorSpec> specs,
                                        std::size_t degree_cap = 1024);

struct PreperiodicPairs {
  std::vector<std::pair<Complex, Complex>> pairs;
  std::vector<Complex> vertical_lines;  // alpha with P(alpha, .) == 0
};

// Candidates alpha are roots of f^n - f^m (n <= max_n, m < min(n, max_m + 1)),
// in (n, m, root) order; pairs keep the roots beta of P(alpha, .) that test
// preperiodic.
PreperiodicPairs find_preperiodic_pairs(const DynMap& f, const MPoly& P, unsigned max_n,
                                        unsigned max_m, std::size_t degree_cap = 1024);

}  // namespace dynmahler
