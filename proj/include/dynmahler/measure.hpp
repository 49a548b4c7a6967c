#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dynmahler/dynamics.hpp"
#include "dynmahler/mpoly.hpp"
#include "dynmahler/potential.hpp"

namespace dynmahler {

// Seed schedule. Every random stream is addressed by an index and derived
// from the master seed as splitmix64(master + (index + 1) * 0x9e3779b97f4a7c15).
// MC sampling uses index = block * nvars + var, so the numbers produced do
// not depend on how blocks are spread over threads.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index);

// Repelling fixed point with the smallest |f'| > 1 (ties: smaller real part,
// then smaller imaginary part); falls back to a repelling 2-periodic point.
Complex repelling_start_point(const DynMap& f);

// All d roots of f(z) = w, with multiplicity.
std::vector<Complex> preimages(const DynMap& f, Complex w);

// Random backward orbit: each step replaces the state by a uniformly chosen
// preimage. Single-threaded; use one instance per stream.
class MeasureSampler {
 public:
  MeasureSampler(DynMap f, std::uint64_t seed, int burn_in = 64);
  MeasureSampler(DynMap f, std::uint64_t seed, Complex start, int burn_in);

  Complex next();
  Complex state() const { return state_; }
  Complex start_point() const { return start_; }
  const DynMap& map() const { return f_; }

 private:
  DynMap f_;
  Complex start_;
  Complex state_;
  std::mt19937_64 rng_;
};

MeasureSampler new_sampler(const DynMap& f, std::uint64_t seed, int burn_in = 64);

// Every depth-fold preimage of w, with multiplicity (d^depth points).
std::vector<Complex> preimage_tree(const DynMap& f, Complex w, int depth,
                                   std::size_t cap = std::size_t{1} << 16);

enum class Method { MC, Tree, Nested, Circle, Segment, Jensen };
std::string to_string(Method m);

struct QuadratureResult {
  double estimate = 0.0;
  double std_error = 0.0;  // 0 for deterministic methods
  long long n_samples = 0;
  long long rejected = 0;  // |P| below the underflow floor, or failed root-finding
  Method method = Method::MC;
  int depth = 0;           // Tree only
  std::uint64_t seed = 0;
};

struct McOptions {
  long long n_samples = 100000;
  std::uint64_t seed = 0;
  int burn_in = 64;
  int steps_per_sample = 0;  // 0: ceil(6 / log2 d), to decorrelate successive draws
  unsigned threads = 0;
  int block_size = 1024;
  double underflow_floor = 1e-300;
  double max_reject_fraction = 0.01;
  GreenOptions green{};      // Nested only
};

QuadratureResult mahler_mc(const DynMap& f, const MPoly& P, const McOptions& opts = {});

// Same as mahler_mc for several polynomials in the same variables, evaluated
// on one shared stream of sample tuples. A tuple rejected by any polynomial
// is rejected for all.
std::vector<QuadratureResult> mahler_mc_shared(const DynMap& f, std::span<const MPoly> polys,
                                               const McOptions& opts = {});

// Average of log|P| over the product of depth-level preimage trees (one copy
// per variable) rooted at start, or at repelling_start_point(f).
QuadratureResult mahler_tree(const DynMap& f, const MPoly& P, int depth,
                             std::optional<Complex> start = std::nullopt,
                             std::size_t cap = std::size_t{1} << 16);

// m_f(a_d) + E[sum_j green(g_j(y))] where a_d(y) is the leading coefficient
// of P in x and g_j(y) the roots of P(., y). Two variables.
QuadratureResult mahler_nested(const DynMap& f, const MPoly& P, const McOptions& opts = {});

// Classical Mahler measure: root formula for univariate P, else midpoint
// tensor grid with grid_n points per circle.
QuadratureResult mahler_circle(const MPoly& P, int grid_n = 4096);

// Arcsine-weighted average over the segment [alpha, beta] in every variable:
// z = (beta - alpha)/2 cos(pi t) + (alpha + beta)/2, t on a midpoint grid.
QuadratureResult mahler_segment(const MPoly& P, Complex alpha, Complex beta, int grid_n = 4096);

struct BoydLawtonTerm {
  int n = 0;
  ZPoly specialized;  // P(x, f^n(x))
  QuadratureResult result;
};

// n = 1..n_max. P(x, f^0(x)) = P(x, x) is skipped: it degenerates (x - y
// becomes the zero polynomial).
std::vector<BoydLawtonTerm> boyd_lawton_sequence(const DynMap& f, const MPoly& P, int n_max,
                                                 std::size_t degree_cap = 4096);

}  // namespace dynmahler
