#include "dynmahler/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

#include "dynmahler/parallel.hpp"

namespace dynmahler {
namespace {

struct Partial {
  long long n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  // Chan et al. pairwise merge; callers merge in block order.
  void merge(const Partial& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double tot = static_cast<double>(n + o.n);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.n) / tot;
    m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / tot;
    n += o.n;
  }
  double std_error() const {
    if (n < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
  }
};

bool is_power_map_plus_constant(const CPoly& f) {
  for (int i = 1; i < f.degree(); ++i) {
    if (f.coeffs()[static_cast<std::size_t>(i)] != Complex(0.0)) return false;
  }
  return true;
}

int default_steps(int d) {
  return static_cast<int>(std::ceil(6.0 / std::log2(static_cast<double>(d))));
}

void check_mc_options(const McOptions& o) {
  if (o.n_samples < 1) throw InputError("n_samples must be >= 1");
  if (o.block_size < 1) throw InputError("block_size must be >= 1");
  if (o.burn_in < 0) throw InputError("burn_in must be >= 0");
}

struct BlockOut {
  std::vector<Partial> parts;
  long long rejected = 0;
};

// Runs the blocked MC schedule; sample_value(points, out) fills one value per
// output or returns false to reject the tuple.
template <class Eval>
std::vector<QuadratureResult> run_blocks(const DynMap& f, std::size_t nvars,
                                         const std::vector<std::size_t>& vars, std::size_t nout,
                                         const McOptions& opts, Method method, Eval&& sample_value) {
  check_mc_options(opts);
  const Complex start = repelling_start_point(f);
  const int steps = opts.steps_per_sample > 0 ? opts.steps_per_sample : default_steps(f.degree());
  const long long n = opts.n_samples;
  const long long bs = opts.block_size;
  const std::size_t nblocks = static_cast<std::size_t>((n + bs - 1) / bs);
  const long long reject_budget =
      static_cast<long long>(opts.max_reject_fraction * static_cast<double>(n));
  std::vector<BlockOut> blocks(nblocks);

  parallel_for(nblocks, opts.threads, [&](std::size_t b) {
    const long long count = std::min<long long>(bs, n - static_cast<long long>(b) * bs);
    std::vector<MeasureSampler> samplers;
    samplers.reserve(vars.size());
    for (std::size_t v : vars) {
      samplers.emplace_back(f, stream_seed(opts.seed, b * nvars + v), start, opts.burn_in);
    }
    BlockOut& out = blocks[b];
    out.parts.assign(nout, Partial{});
    std::vector<Complex> point(nvars, Complex(0.0));
    std::vector<double> values(nout);
    long long accepted = 0;
    while (accepted < count) {
      for (std::size_t k = 0; k < vars.size(); ++k) {
        Complex z{};
        for (int s = 0; s < steps; ++s) z = samplers[k].next();
        point[vars[k]] = z;
      }
      if (!sample_value(point, values)) {
        if (++out.rejected > reject_budget) {
          throw Error("rejection tally exceeded " + std::to_string(opts.max_reject_fraction * 100) +
                      "% of samples; P may vanish on the sampled set or the evaluation underflows");
        }
        continue;
      }
      for (std::size_t j = 0; j < nout; ++j) out.parts[j].add(values[j]);
      ++accepted;
    }
  });

  std::vector<Partial> total(nout);
  long long rejected = 0;
  for (const BlockOut& b : blocks) {
    for (std::size_t j = 0; j < nout; ++j) total[j].merge(b.parts[j]);
    rejected += b.rejected;
  }
  if (rejected > reject_budget) {
    throw Error("rejection tally " + std::to_string(rejected) + " exceeds " +
                std::to_string(opts.max_reject_fraction * 100) + "% of samples");
  }
  std::vector<QuadratureResult> res(nout);
  for (std::size_t j = 0; j < nout; ++j) {
    res[j].estimate = total[j].mean;
    res[j].std_error = total[j].std_error();
    res[j].n_samples = total[j].n;
    res[j].rejected = rejected;
    res[j].method = method;
    res[j].seed = opts.seed;
  }
  return res;
}

std::vector<std::size_t> active_vars(const MPoly& P) {
  std::vector<std::size_t> v;
  for (std::size_t k = 0; k < P.nvars(); ++k) {
    if (P.degree_in(k) > 0) v.push_back(k);
  }
  return v;
}

// Average of log|P| over the tensor grid of `nodes` in every active variable.
QuadratureResult grid_average(const MPoly& P, const std::vector<Complex>& nodes, Method method) {
  const std::vector<std::size_t> vars = active_vars(P);
  const std::size_t N = nodes.size();
  const std::size_t k = vars.size();
  if (k == 0) {
    QuadratureResult r;
    r.estimate = log_abs(P.terms().begin()->second);
    r.n_samples = 1;
    r.method = method;
    return r;
  }
  const double total = std::pow(static_cast<double>(N), static_cast<double>(k));
  if (total > static_cast<double>(std::size_t{1} << 28)) {
    throw DegreeCapError("quadrature grid of " + std::to_string(total) + " points is too large");
  }
  const MPolyEval ev(P);
  // Outer loop over the first active variable, partial sums reduced in order.
  std::vector<double> sums(N, 0.0);
  std::vector<long long> zeros(N, 0);
  const std::size_t inner = k <= 1 ? 1 : static_cast<std::size_t>(total) / N;
  parallel_for(N, 0, [&](std::size_t i0) {
    std::vector<Complex> point(P.nvars(), Complex(1.0));
    std::vector<std::size_t> idx(k, 0);
    point[vars[0]] = nodes[i0];
    double s = 0.0;
    for (std::size_t t = 0; t < inner; ++t) {
      std::size_t rest = t;
      for (std::size_t j = 1; j < k; ++j) {
        point[vars[j]] = nodes[rest % N];
        rest /= N;
      }
      const double a = std::abs(ev(point));
      if (a <= kZeroThreshold) {
        ++zeros[i0];
        continue;
      }
      s += std::log(a);
    }
    sums[i0] = s;
  });
  double s = 0.0;
  long long z = 0;
  for (std::size_t i = 0; i < N; ++i) {
    s += sums[i];
    z += zeros[i];
  }
  QuadratureResult r;
  r.n_samples = static_cast<long long>(total) - z;
  r.rejected = z;
  r.estimate = r.n_samples > 0 ? s / static_cast<double>(r.n_samples) : 0.0;
  r.method = method;
  return r;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

std::vector<Complex> preimages(const DynMap& f, Complex w) {
  const CPoly& c = f.numeric();
  const int d = f.degree();
  if (d == 2) {
    const Complex b = c.coeffs()[1];
    const Complex cc = c.coeffs()[0] - w;
    const Complex disc = std::sqrt(b * b - 4.0 * cc);
    if (b == Complex(0.0)) return {0.5 * disc, -0.5 * disc};
    const Complex s = (std::real(std::conj(b) * disc) >= 0.0) ? disc : -disc;
    const Complex q = -0.5 * (b + s);
    if (q == Complex(0.0)) return {Complex(0.0), Complex(0.0)};
    return {q, cc / q};
  }
  if (is_power_map_plus_constant(c)) {
    const Complex r = std::pow(w - c.coeffs()[0], 1.0 / d);
    std::vector<Complex> out;
    for (int k = 0; k < d; ++k) out.push_back(r * std::polar(1.0, 2.0 * std::numbers::pi * k / d));
    return out;
  }
  return roots(c - CPoly::constant(w)).roots;
}

Complex repelling_start_point(const DynMap& f) {
  auto pick = [](std::vector<std::pair<double, Complex>> cand) -> std::optional<Complex> {
    std::erase_if(cand, [](const auto& p) { return !(p.first > 1.0 + 1e-9); });
    if (cand.empty()) return std::nullopt;
    std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
      if (std::abs(a.first - b.first) > 1e-12) return a.first < b.first;
      if (a.second.real() != b.second.real()) return a.second.real() < b.second.real();
      return a.second.imag() < b.second.imag();
    });
    return cand.front().second;
  };
  auto refine = [&](Complex z, unsigned period) {
    for (int k = 0; k < 4; ++k) {
      auto [fz, dz] = f.iterate_with_derivative(z, period);
      const Complex den = dz - 1.0;
      if (den == Complex(0.0)) break;
      const Complex nz = z - (fz - z) / den;
      if (!(std::abs(f.iterate_with_derivative(nz, period).first - nz) < std::abs(fz - z))) break;
      z = nz;
    }
    return z;
  };

  const ZPoly g1 = squarefree_part(f.exact() - ZPoly::identity());
  std::vector<std::pair<double, Complex>> cand;
  for (Complex z : roots(to_complex(g1), 1e-12).roots) {
    z = refine(z, 1);
    if (std::abs(z.imag()) < 1e-14) z = {z.real(), 0.0};
    if (std::abs(f(z) - z) >= 1e-10) continue;
    cand.emplace_back(std::abs(f.derivative(z)), z);
  }
  if (auto w = pick(cand)) return *w;

  cand.clear();
  const ZPoly g2 = squarefree_part(iterate(f.exact(), 2) - ZPoly::identity());
  for (Complex z : roots(to_complex(g2), 1e-12).roots) {
    z = refine(z, 2);
    if (std::abs(f(z) - z) < 1e-8) continue;  // a fixed point
    auto [f2, d2] = f.iterate_with_derivative(z, 2);
    if (std::abs(f2 - z) >= 1e-10) continue;
    cand.emplace_back(std::abs(d2), z);
  }
  if (auto w = pick(cand)) return *w;
  throw Error("no repelling fixed point or 2-periodic point found");
}

MeasureSampler::MeasureSampler(DynMap f, std::uint64_t seed, int burn_in)
    : f_(std::move(f)), rng_(seed) {
  start_ = repelling_start_point(f_);
  state_ = start_;
  for (int i = 0; i < burn_in; ++i) next();
}

MeasureSampler::MeasureSampler(DynMap f, std::uint64_t seed, Complex start, int burn_in)
    : f_(std::move(f)), start_(start), state_(start), rng_(seed) {
  for (int i = 0; i < burn_in; ++i) next();
}

Complex MeasureSampler::next() {
  const std::vector<Complex> pre = preimages(f_, state_);
  std::uniform_int_distribution<std::size_t> pick(0, pre.size() - 1);
  state_ = pre[pick(rng_)];
  return state_;
}

MeasureSampler new_sampler(const DynMap& f, std::uint64_t seed, int burn_in) {
  return MeasureSampler(f, seed, burn_in);
}

std::vector<Complex> preimage_tree(const DynMap& f, Complex w, int depth, std::size_t cap) {
  if (depth < 0) throw InputError("preimage_tree: depth must be >= 0");
  const double count = std::pow(static_cast<double>(f.degree()), depth);
  if (count > static_cast<double>(cap)) {
    throw DegreeCapError("preimage_tree: " + std::to_string(static_cast<long long>(count)) +
                         " points exceed cap " + std::to_string(cap));
  }
  std::vector<Complex> level{w};
  for (int k = 0; k < depth; ++k) {
    std::vector<Complex> next;
    next.reserve(level.size() * static_cast<std::size_t>(f.degree()));
    for (const Complex& z : level) {
      for (const Complex& p : preimages(f, z)) next.push_back(p);
    }
    level = std::move(next);
  }
  return level;
}

std::string to_string(Method m) {
  switch (m) {
    case Method::MC: return "mc";
    case Method::Tree: return "tree";
    case Method::Nested: return "nested";
    case Method::Circle: return "circle";
    case Method::Segment: return "segment";
    case Method::Jensen: return "jensen";
  }
  return "?";
}

QuadratureResult mahler_mc(const DynMap& f, const MPoly& P, const McOptions& opts) {
  const MPoly polys[] = {P};
  return mahler_mc_shared(f, polys, opts).front();
}

std::vector<QuadratureResult> mahler_mc_shared(const DynMap& f, std::span<const MPoly> polys,
                                               const McOptions& opts) {
  if (polys.empty()) throw InputError("mahler_mc_shared: no polynomials");
  const std::size_t nvars = polys.front().nvars();
  std::vector<MPolyEval> evals;
  for (const MPoly& P : polys) {
    if (P.is_zero()) throw InputError("mahler measure of the zero polynomial");
    if (P.nvars() != nvars) throw InputError("mahler_mc_shared: variable counts differ");
    evals.emplace_back(P);
  }
  std::vector<std::size_t> vars(nvars);
  for (std::size_t k = 0; k < nvars; ++k) vars[k] = k;
  const double floor = opts.underflow_floor;
  return run_blocks(f, nvars, vars, evals.size(), opts, Method::MC,
                    [&](const std::vector<Complex>& pt, std::vector<double>& out) {
                      for (std::size_t j = 0; j < evals.size(); ++j) {
                        const double a = std::abs(evals[j](pt));
                        if (!(a >= floor) || !std::isfinite(a)) return false;
                        out[j] = std::log(a);
                      }
                      return true;
                    });
}

QuadratureResult mahler_tree(const DynMap& f, const MPoly& P, int depth,
                             std::optional<Complex> start, std::size_t cap) {
  if (P.is_zero()) throw InputError("mahler measure of the zero polynomial");
  const Complex w = start ? *start : repelling_start_point(f);
  const std::vector<Complex> nodes = preimage_tree(f, w, depth, cap);
  QuadratureResult r = grid_average(P, nodes, Method::Tree);
  r.depth = depth;
  return r;
}

QuadratureResult mahler_nested(const DynMap& f, const MPoly& P, const McOptions& opts) {
  if (P.nvars() != 2) throw InputError("mahler_nested: P must have exactly two variables");
  const int dx = P.degree_in(0);
  if (dx < 1) throw InputError("mahler_nested: P must have positive degree in the first variable");
  const ZPoly lead = *P.coefficients_in(0).back().as_univariate(1);
  const double m_lead = mahler_univariate_jensen(f, lead, 1e-10, opts.green);

  const std::vector<std::size_t> vars{1};
  auto res = run_blocks(f, 2, vars, 1, opts, Method::Nested,
                        [&](const std::vector<Complex>& pt, std::vector<double>& out) {
                          const CPoly px = P.specialize(0, pt);
                          if (px.degree() != dx) return false;
                          try {
                            double s = 0.0;
                            for (const Complex& r : roots(px).roots) s += green(f, r, opts.green).value;
                            out[0] = s;
                          } catch (const RootFindingError&) {
                            return false;
                          }
                          return true;
                        });
  res.front().estimate += m_lead;
  return res.front();
}

QuadratureResult mahler_circle(const MPoly& P, int grid_n) {
  if (P.is_zero()) throw InputError("mahler measure of the zero polynomial");
  if (grid_n < 1) throw InputError("grid_n must be >= 1");
  const std::vector<std::size_t> vars = active_vars(P);
  QuadratureResult r;
  r.method = Method::Circle;
  if (vars.size() <= 1) {
    const ZPoly u = vars.empty() ? ZPoly::constant(P.terms().begin()->second)
                                 : *P.as_univariate(vars.front());
    double m = log_abs(u.lead());
    if (u.degree() > 0) {
      for (const Complex& z : roots(to_complex(u)).roots) m += std::log(std::max(1.0, std::abs(z)));
    }
    r.estimate = m;
    return r;
  }
  std::vector<Complex> nodes(static_cast<std::size_t>(grid_n));
  for (int k = 0; k < grid_n; ++k) {
    nodes[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * (k + 0.5) / grid_n);
  }
  return grid_average(P, nodes, Method::Circle);
}

QuadratureResult mahler_segment(const MPoly& P, Complex alpha, Complex beta, int grid_n) {
  if (P.is_zero()) throw InputError("mahler measure of the zero polynomial");
  if (alpha == beta) throw InputError("mahler_segment: alpha must differ from beta");
  if (grid_n < 1) throw InputError("grid_n must be >= 1");
  const Complex half = 0.5 * (beta - alpha);
  const Complex mid = 0.5 * (alpha + beta);
  const std::vector<std::size_t> vars = active_vars(P);
  if (vars.size() <= 1) {
    // One variable: root formula for z^n P(half/2 (z + 1/z) + mid).
    QuadratureResult r;
    r.method = Method::Segment;
    const ZPoly u = vars.empty() ? ZPoly::constant(P.terms().begin()->second)
                                 : *P.as_univariate(vars.front());
    const int n = u.degree();
    const CPoly w({0.5 * half, mid, 0.5 * half});
    CPoly q;
    CPoly wk = CPoly::constant(Complex(1.0));
    for (int k = 0; k <= n; ++k) {
      const Complex ck = to_double(u.coeffs()[static_cast<std::size_t>(k)]);
      q = q + ck * wk * CPoly::monomial(Complex(1.0), static_cast<std::size_t>(n - k));
      wk = wk * w;
    }
    double m = std::log(std::abs(q.lead()));
    if (q.degree() > 0) {
      for (const Complex& z : roots(q).roots) m += std::log(std::max(1.0, std::abs(z)));
    }
    r.estimate = m;
    return r;
  }
  std::vector<Complex> nodes(static_cast<std::size_t>(grid_n));
  for (int k = 0; k < grid_n; ++k) {
    nodes[static_cast<std::size_t>(k)] = half * std::cos(std::numbers::pi * (k + 0.5) / grid_n) + mid;
  }
  return grid_average(P, nodes, Method::Segment);
}

std::vector<BoydLawtonTerm> boyd_lawton_sequence(const DynMap& f, const MPoly& P, int n_max,
                                                 std::size_t degree_cap) {
  if (P.nvars() != 2) throw InputError("boyd_lawton_sequence: P must have exactly two variables");
  const double deg = P.degree_in(0) + P.degree_in(1) * std::pow(f.degree(), n_max);
  if (deg > static_cast<double>(degree_cap)) {
    throw DegreeCapError("boyd_lawton_sequence: degree " + std::to_string(static_cast<long long>(deg)) +
                         " at n = " + std::to_string(n_max) + " exceeds cap " + std::to_string(degree_cap));
  }
  std::vector<BoydLawtonTerm> out;
  for (int n = 1; n <= n_max; ++n) {
    const ZPoly fn = iterate(f.exact(), static_cast<unsigned>(n));
    const ZPoly u = *P.substitute(1, fn, 0).as_univariate(0);
    if (u.is_zero()) {
      throw InputError("P(x, f^" + std::to_string(n) + "(x)) vanishes identically");
    }
    BoydLawtonTerm t;
    t.n = n;
    t.specialized = u;
    t.result.estimate = mahler_univariate_jensen(f, u);
    t.result.method = Method::Jensen;
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace dynmahler
