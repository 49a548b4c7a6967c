#include "dynmahler/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "dynmahler/dynamics.hpp"
#include "dynmahler/kronecker.hpp"
#include "dynmahler/measure.hpp"
#include "dynmahler/multibrot.hpp"
#include "dynmahler/potential.hpp"

namespace dynmahler::acceptance {
namespace {

constexpr double kLehmer = 0.162357612;

ZPoly zp(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return ZPoly(std::move(v));
}

ZPoly lehmer() { return zp({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1}); }

MPoly xy(std::initializer_list<std::tuple<unsigned, unsigned, long>> terms) {
  MPoly p(2);
  for (auto [i, j, c] : terms) p.add_term({i, j}, Integer(c));
  return p;
}

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Kolmogorov-Smirnov statistic of xs against the continuous CDF F.
double ks_stat(std::vector<double> xs, const std::function<double(double)>& F) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double D = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double c = F(xs[i]);
    D = std::max({D, (i + 1) / n - c, c - i / n});
  }
  return D;
}

double ks_critical_1pct(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

struct Outcome {
  bool passed;
  std::string detail;
};

Outcome c1(const Options&) {
  const auto t0 = std::chrono::steady_clock::now();
  const double m = mahler_circle(MPoly::from_univariate(lehmer(), 1, 0)).estimate;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::abs(m - kLehmer) <= 1e-6 && secs < 1.0,
          "m = " + fmt("%.10f", m) + ", " + fmt("%.4f s", secs)};
}

Outcome c2(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  McOptions mc;
  mc.n_samples = 100000;
  mc.seed = o.seed;
  mc.threads = o.threads;
  const QuadratureResult r = mahler_mc(DynMap(zp({0, 0, 1})), MPoly::from_univariate(lehmer(), 1, 0), mc);
  const double ref = mahler_circle(MPoly::from_univariate(lehmer(), 1, 0)).estimate;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double tol = std::max(3 * r.std_error, 5e-3);
  return {std::abs(r.estimate - ref) <= tol && secs < 30.0,
          "mc = " + fmt("%.6f", r.estimate) + " +- " + fmt("%.6f", r.std_error) + ", ref " +
              fmt("%.9f", ref) + ", " + fmt("%.2f s", secs)};
}

Outcome c3(const Options& o) {
  const MPoly P = xy({{1, 0, 1}, {0, 1, -1}});
  bool ok = true;
  std::string detail;
  for (const ZPoly& f : {zp({-1, 0, 1}), zp({-2, 0, 1}), zp({1, 0, 0, 1})}) {
    McOptions mc;
    mc.n_samples = 100000;
    mc.seed = o.seed;
    mc.threads = o.threads;
    const QuadratureResult r = mahler_mc(DynMap(f), P, mc);
    const bool pass = std::abs(r.estimate) <= std::max(3 * r.std_error, 1e-2);
    ok = ok && pass;
    detail += to_string(f) + ": " + fmt("%.5f", r.estimate) + " +- " + fmt("%.5f", r.std_error) + "; ";
  }
  return {ok, detail};
}

MPoly random_poly(std::mt19937_64& rng, int max_deg, int max_coef) {
  std::uniform_int_distribution<int> coef(-max_coef, max_coef);
  std::bernoulli_distribution keep(0.5);
  for (;;) {
    MPoly p(2);
    for (int i = 0; i <= max_deg; ++i) {
      for (int j = 0; i + j <= max_deg; ++j) {
        if (keep(rng)) p.add_term({static_cast<unsigned>(i), static_cast<unsigned>(j)}, coef(rng));
      }
    }
    if (!p.is_zero() && p.total_degree() >= 1) return content_primitive(p).second;
  }
}

Outcome c4(const Options& o) {
  std::mt19937_64 rng(o.seed ^ 0xadd1ULL);
  const DynMap f(zp({-1, 0, 1}));
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const MPoly P = random_poly(rng, 2, 4);
    const MPoly Q = random_poly(rng, 2, 4);
    const MPoly polys[] = {P * Q, P, Q};
    McOptions mc;
    mc.n_samples = 20000;
    mc.seed = o.seed + static_cast<std::uint64_t>(k);
    mc.threads = o.threads;
    const auto r = mahler_mc_shared(f, polys, mc);
    worst = std::max(worst, std::abs(r[0].estimate - r[1].estimate - r[2].estimate));
  }
  return {worst <= 1e-12, "max |e(PQ) - e(P) - e(Q)| = " + fmt("%.3e", worst)};
}

Outcome c5(const Options&) {
  const ZPoly f = zp({-2, 0, 1});
  const IntAffine L(1, 1);
  const ZPoly fL = conjugate(f, L);
  const MPoly P = MPoly::from_univariate(zp({-3, 1}), 1, 0);
  const MPoly PLinv = P.substitute(0, L.inverse().as_poly(), 0);
  const Complex w = repelling_start_point(DynMap(f));
  const Complex wL = to_complex(to_rational(L.inverse()))(w);
  const double a = mahler_tree(DynMap(fL), P, 12, wL).estimate;
  const double b = mahler_tree(DynMap(f), PLinv, 12, w).estimate;
  return {std::abs(a - b) <= 1e-9,
          "f^L = " + to_string(fL) + ", tree(f^L, P) = " + fmt("%.12f", a) + ", tree(f, P o L^-1) = " +
              fmt("%.12f", b)};
}

Outcome c6(const Options&) {
  const double seg = mahler_segment(MPoly::from_univariate(zp({-3, 1}), 1, 0), -2.0, 2.0).estimate;
  const double circ = mahler_circle(MPoly::from_univariate(zp({1, -3, 1}), 1, 0)).estimate;
  const double exact = std::log((3.0 + std::sqrt(5.0)) / 2.0);
  const bool ok = std::abs(seg - circ) <= 1e-6 && std::abs(seg - exact) <= 1e-6 &&
                  std::abs(circ - exact) <= 1e-6;
  return {ok, "segment " + fmt("%.10f", seg) + ", circle " + fmt("%.10f", circ) + ", log((3+sqrt5)/2) " +
                  fmt("%.10f", exact)};
}

std::vector<Complex> thinned(const ZPoly& f, std::uint64_t seed, std::size_t n) {
  MeasureSampler s(DynMap(f), seed);
  const int steps = static_cast<int>(std::ceil(6.0 / std::log2(static_cast<double>(f.degree()))));
  std::vector<Complex> out;
  for (std::size_t i = 0; i < n; ++i) {
    Complex z{};
    for (int k = 0; k < steps; ++k) z = s.next();
    out.push_back(z);
  }
  return out;
}

Outcome c7(const Options& o) {
  const std::size_t n = 10000;
  const double crit = ks_critical_1pct(n);
  const auto a = thinned(zp({0, 0, 1}), stream_seed(o.seed, 70), n);
  double maxdev = 0.0;
  std::vector<double> ang;
  for (const Complex& z : a) {
    maxdev = std::max(maxdev, std::abs(std::abs(z) - 1.0));
    double t = std::arg(z);
    if (t < 0) t += 2 * std::numbers::pi;
    ang.push_back(t);
  }
  const double D1 = ks_stat(ang, [](double t) { return t / (2 * std::numbers::pi); });
  const auto b = thinned(zp({-2, 0, 1}), stream_seed(o.seed, 71), n);
  std::vector<double> re;
  double maxim = 0.0;
  for (const Complex& z : b) {
    re.push_back(z.real());
    maxim = std::max(maxim, std::abs(z.imag()));
  }
  const double D2 = ks_stat(re, [](double x) {
    x = std::clamp(x, -2.0, 2.0);
    return 0.5 + std::asin(x / 2.0) / std::numbers::pi;
  });
  const bool ok = maxdev < 1e-9 && D1 < crit && D2 < crit;
  return {ok, "max||z|-1| = " + fmt("%.2e", maxdev) + ", KS angle " + fmt("%.4f", D1) + ", KS arcsine " +
                  fmt("%.4f", D2) + " (crit " + fmt("%.4f", crit) + "), max|Im| " + fmt("%.1e", maxim)};
}

Outcome c8(const Options&) {
  const KroneckerVerdict a = certify_zero_univariate(DynMap(zp({-1, 0, 1})), zp({0, 1, 1}));
  const KroneckerVerdict b = certify_zero_univariate(DynMap(zp({0, 0, 1})), zp({-2, 1}));
  const bool ok = a.verdict == Verdict::CertifiedZero && std::abs(a.estimate) < 1e-9 &&
                  b.verdict == Verdict::PositiveEvidence && std::abs(b.estimate - std::log(2.0)) <= 1e-9;
  return {ok, "(z^2-1, x^2+x): " + to_string(a.verdict) + " m = " + fmt("%.2e", a.estimate) +
                  "; (z^2, x-2): " + to_string(b.verdict) + " m = " + fmt("%.12f", b.estimate)};
}

Outcome c9(const Options& o) {
  const HeightValue h2 = canonical_height(zp({0, 0, 1}), Rational(2));
  bool ok = std::abs(h2.value - std::log(2.0)) <= 1e-9;
  std::string detail = "h_{z^2}(2) = " + fmt("%.12f", h2.value);

  const std::vector<ZPoly> maps = {zp({0, 0, 1}),     zp({-1, 0, 1}),    zp({-2, 0, 1}),
                                   zp({0, 1, 1}),     zp({-1, 1, 1}),    zp({-2, 1, 1}),
                                   zp({0, 0, 0, 1}),  zp({-1, 0, 0, 1}), zp({0, -1, 0, 1})};
  int panel = 0;
  bool zero_ok = true;
  for (const ZPoly& f : maps) {
    for (long a = -10; a <= 10 && panel < 20; ++a) {
      if (!is_preperiodic_exact(f, Rational(a)).preperiodic) continue;
      const HeightValue h = canonical_height(f, Rational(a));
      zero_ok = zero_ok && h.value == 0.0 && h.preperiodic;
      ++panel;
    }
  }
  ok = ok && zero_ok && panel == 20;
  detail += "; preperiodic panel " + std::to_string(panel) + (zero_ok ? " all exactly 0" : " NONZERO");

  std::mt19937_64 rng(o.seed ^ 0x6e19ULL);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 7);
  std::uniform_int_distribution<std::size_t> pick(0, maps.size() - 1);
  int wandering = 0;
  double worst_ratio = 0.0;
  HeightOptions ho;
  ho.max_bits = std::size_t{1} << 20;
  while (wandering < 20) {
    const ZPoly& f = maps[pick(rng)];
    Rational a(num(rng), den(rng));
    a.canonicalize();
    if (is_preperiodic_exact(f, a).preperiodic) continue;
    const HeightValue h = canonical_height(f, a, ho);
    const Rational fa = f(a);
    const HeightValue hf = canonical_height(f, fa, ho);
    const double d = f.degree();
    const double gap = std::abs(hf.value - d * h.value);
    const double allowed = hf.error_bound + d * h.error_bound;
    worst_ratio = std::max(worst_ratio, gap / allowed);
    ++wandering;
  }
  ok = ok && worst_ratio <= 1.0;
  detail += "; scaling worst |gap|/bound = " + fmt("%.3g", worst_ratio) + " over 20 wandering rationals";
  return {ok, detail};
}

Outcome c10(const Options&) {
  bool ok = true;
  std::string detail;
  auto check = [&](const ZPoly& f, Complex z, unsigned p, Complex lam, double tol, CycleClass cls) {
    const CycleReport r = classify_cycle(DynMap(f), z, p);
    const bool pass = std::abs(r.multiplier - lam) <= tol && r.cls == cls;
    ok = ok && pass;
    detail += to_string(f) + ": " + to_string(r.cls) + " lambda=" + fmt("%.3g", r.multiplier.real()) +
              fmt("%+.3gi", r.multiplier.imag()) + "; ";
  };
  check(zp({-1, 0, 1}), 0.0, 2, 0.0, 1e-9, CycleClass::Superattracting);
  check(zp({0, 1, 1}), 0.0, 1, 1.0, 1e-9, CycleClass::Neutral);
  check(zp({-1, 1, 1}), -1.0, 1, -1.0, 1e-9, CycleClass::Neutral);
  const DynMap g(zp({-2, 1, 1}));
  PeriodicPointOptions po;
  po.distinct = true;
  int found = 0;
  for (const Complex& z : periodic_points(g, 3, po)) {
    if (std::abs(g(z) - z) < 1e-6) continue;
    ++found;
    check(g.exact(), z, 3, 1.0, 1e-6, CycleClass::Neutral);
  }
  ok = ok && found == 3;
  return {ok, detail};
}

Outcome c11(const Options&) {
  int cases = 0;
  int agree = 0;
  std::string bad;
  const ZPoly z2 = zp({0, 0, 1});
  const ZPoly z2m1 = zp({-1, 0, 1});
  for (long a = -3; a <= 3; ++a) {
    for (long b = -3; b <= 3; ++b) {
      const ZPoly f = zp({b, a, 1});
      bool exceptional = false;
      for (long s : {1L, -1L}) {
        for (long k = -10; k <= 10 && !exceptional; ++k) {
          const ZPoly g = conjugate(f, IntAffine(s, k));
          exceptional = g == z2 || g == z2m1;
        }
      }
      const Holds expect = exceptional ? Holds::No : Holds::Yes;
      const PreperJuliaVerdict v = preper_in_julia(f);
      ++cases;
      if (v.holds == expect) ++agree;
      else bad += to_string(f) + " ";
    }
  }
  for (int d = 3; d <= 5; ++d) {
    for (long c = -3; c <= 3; ++c) {
      ZPoly f = ZPoly::monomial(1, static_cast<std::size_t>(d)) + ZPoly::constant(c);
      // Bounded critical orbit here means a superattracting cycle.
      double z = 0.0;
      bool bounded = true;
      for (int n = 0; n < 100 && bounded; ++n) {
        z = std::pow(z, d) + static_cast<double>(c);
        bounded = std::abs(z) <= 10.0;
      }
      const Holds expect = bounded ? Holds::No : Holds::Yes;
      const PreperJuliaVerdict v = preper_in_julia(f);
      ++cases;
      if (v.holds == expect) ++agree;
      else bad += to_string(f) + " ";
    }
  }
  return {agree == cases, std::to_string(agree) + "/" + std::to_string(cases) + " verdicts agree" +
                              (bad.empty() ? "" : "; mismatches: " + bad)};
}

Outcome c12(const Options&) {
  bool ok = true;
  std::string detail;
  for (int d : {3, 4, 5, 6, 7}) {
    std::vector<long> inside;
    for (long c = -3; c <= 3; ++c) {
      if (multibrot_member(d, static_cast<double>(c)).status == Membership::Inside) inside.push_back(c);
    }
    const std::vector<long> expect = d % 2 ? std::vector<long>{0} : std::vector<long>{-1, 0};
    ok = ok && inside == expect;
    detail += "d=" + std::to_string(d) + ": {";
    for (std::size_t i = 0; i < inside.size(); ++i) detail += (i ? "," : "") + std::to_string(inside[i]);
    detail += "} ";
  }
  return {ok, detail};
}

Outcome c13(const Options& o) {
  const DynMap f(zp({0, 0, 1}));
  const MPoly P = xy({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}});
  McOptions mc;
  mc.n_samples = 100000;
  mc.seed = o.seed;
  mc.threads = o.threads;
  const QuadratureResult ref = mahler_mc(f, P, mc);
  const double bound = ref.estimate + 3 * ref.std_error;
  bool ok = true;
  std::string detail = "m_hat = " + fmt("%.5f", ref.estimate) + " +- " + fmt("%.5f", ref.std_error) + "; terms:";
  for (const BoydLawtonTerm& t : boyd_lawton_sequence(f, P, 5)) {
    const bool pass = t.result.estimate <= bound;
    ok = ok && pass;
    detail += " n=" + std::to_string(t.n) + ":" + fmt("%.5f", t.result.estimate) + (pass ? "" : "(>bound)");
  }
  return {ok, detail};
}

Outcome c14(const Options& o) {
  std::mt19937_64 rng(o.seed ^ 0x14ULL);
  const DynMap f(zp({-1, 0, 1}));
  double worst = 0.0;
  int fails = 0;
  for (int k = 0; k < 100; ++k) {
    const MPoly P = random_poly(rng, 3, 5);
    McOptions mc;
    mc.n_samples = 20000;
    mc.seed = stream_seed(o.seed, 1400 + static_cast<std::uint64_t>(k));
    mc.threads = o.threads;
    const QuadratureResult r = mahler_mc(f, P, mc);
    const double margin = r.estimate + std::max(3 * r.std_error, 1e-3);
    worst = std::min(worst, r.estimate);
    if (!(margin > 0.0)) ++fails;
  }
  return {fails == 0, "100 polynomials, min estimate " + fmt("%.5f", worst) + ", violations " +
                          std::to_string(fails)};
}

struct Entry {
  const char* title;
  Outcome (*fn)(const Options&);
};

const Entry kEntries[kCriterionCount] = {
    {"Lehmer constant via root formula", c1},
    {"power map MC equals classical measure (Lehmer)", c2},
    {"m_f(x - y) = 0 by MC for three maps", c3},
    {"additivity on shared samples", c4},
    {"conjugation invariance of preimage trees", c5},
    {"Chebyshev segment reduction", c6},
    {"sampler laws (circle, arcsine)", c7},
    {"univariate Kronecker verdicts", c8},
    {"canonical heights", c9},
    {"cycle classifications", c10},
    {"PrePer in J_f classifier", c11},
    {"integer points of Multibrot sets", c12},
    {"Boyd-Lawton upper bound", c13},
    {"nonnegativity sweep", c14},
};

}  // namespace

CriterionResult run_criterion(int id, const Options& opts) {
  if (id < 1 || id > kCriterionCount) throw InputError("no acceptance criterion " + std::to_string(id));
  const Entry& e = kEntries[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = e.title;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Outcome o = e.fn(opts);
    r.passed = o.passed;
    r.detail = o.detail;
  } catch (const std::exception& ex) {
    r.passed = false;
    r.detail = std::string("error: ") + ex.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CriterionResult> run_all(const Options& opts) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, opts));
  return out;
}

std::string format_line(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "%s  %2d  %-48s [%7.2f s]  ", r.passed ? "PASS" : "FAIL", r.id,
                r.title.c_str(), r.seconds);
  return head + r.detail;
}

}  // namespace dynmahler::acceptance
