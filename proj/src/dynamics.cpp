#include "dynmahler/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

namespace dynmahler {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Integer lower_sum(const ZPoly& f) {
  Integer s = 0;
  for (int i = 0; i < f.degree(); ++i) s += abs(f.coeffs()[static_cast<std::size_t>(i)]);
  return s;
}

void require_monic(const ZPoly& f) {
  if (f.degree() < 2) throw InputError("map must have degree >= 2");
  if (f.lead() != 1) throw InputError("map must be monic");
}

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

// Snaps tiny real/imaginary parts and near-integers, for readable output.
Complex tidy(Complex z) {
  auto snap = [](double v) {
    const double r = std::round(v);
    return std::abs(v - r) < 1e-12 ? r : v;
  };
  return {snap(z.real()), snap(z.imag())};
}

}  // namespace

double escape_radius(const ZPoly& f) {
  require_monic(f);
  const double s = to_double(lower_sum(f));
  return std::max(2.0 * s, s + 2.0);
}

DynMap::DynMap(ZPoly f) : f_(std::move(f)) {
  require_monic(f_);
  c_ = to_complex(f_);
  radius_ = dynmahler::escape_radius(f_);
}

std::pair<Complex, Complex> DynMap::iterate_with_derivative(Complex z, unsigned n) const {
  Complex d = 1.0;
  for (unsigned k = 0; k < n; ++k) {
    d *= derivative(z);
    z = (*this)(z);
  }
  return {z, d};
}

OrbitReport orbit(const DynMap& f, Complex z0, int max_iter, double tol) {
  if (max_iter < 1) throw InputError("orbit: max_iter must be >= 1");
  OrbitReport rep;
  auto& pts = rep.points;
  pts.push_back(z0);
  const double R = f.escape_radius();
  if (std::abs(z0) > R) {
    rep.status = OrbitStatus::Escaped;
    rep.escape_step = 0;
    return rep;
  }
  // Brent: tortoise parks at power-of-two checkpoints.
  std::size_t tort = 0;
  int power = 1;
  int lam = 1;
  for (int step = 1; step <= max_iter; ++step) {
    const Complex z = f(pts.back());
    pts.push_back(z);
    if (!(std::abs(z) <= R)) {
      rep.status = OrbitStatus::Escaped;
      rep.escape_step = step;
      return rep;
    }
    if (close(pts[tort], z, tol)) {
      // lam may be a multiple of the true period when the orbit is still
      // converging; take the smallest divisor that closes anywhere.
      const std::size_t last = pts.size() - 1;
      for (int p = 1; p <= lam; ++p) {
        if (lam % p != 0) continue;
        for (std::size_t mu = 0; mu + static_cast<std::size_t>(p) <= last; ++mu) {
          if (close(pts[mu], pts[mu + static_cast<std::size_t>(p)], tol)) {
            rep.status = OrbitStatus::CycleDetected;
            rep.tail = static_cast<int>(mu);
            rep.period = p;
            return rep;
          }
        }
      }
    }
    if (lam == power) {
      tort = pts.size() - 1;
      power *= 2;
      lam = 0;
    }
    ++lam;
  }
  return rep;
}

ExactPreperiodicity is_preperiodic_exact(const ZPoly& f, const Rational& alpha) {
  require_monic(f);
  ExactPreperiodicity out;
  Rational a = alpha;
  a.canonicalize();
  if (a.get_den() != 1) {
    out.by_denominator = true;
    return out;
  }
  const Integer S = lower_sum(f);
  const Integer R = std::max(Integer(2 * S), Integer(S + 2));
  std::map<Integer, int> seen;
  Integer v = a.get_num();
  for (int idx = 0;; ++idx) {
    out.orbit.push_back(v);
    if (abs(v) > R) return out;
    auto [it, inserted] = seen.try_emplace(v, idx);
    if (!inserted) {
      out.preperiodic = true;
      out.tail = it->second;
      out.period = idx - it->second;
      out.orbit.pop_back();
      return out;
    }
    v = f(v);
  }
}

std::string to_string(PreperVerdict v) {
  switch (v) {
    case PreperVerdict::Preperiodic: return "Preperiodic";
    case PreperVerdict::Wandering: return "Wandering";
    case PreperVerdict::Undetermined: return "Undetermined";
  }
  return "?";
}

NumericPreperiodicity is_preperiodic_numeric(const DynMap& f, Complex z0, double tol,
                                             int max_iter) {
  if (!(tol > 0.0)) throw InputError("is_preperiodic_numeric: tol must be positive");
  const OrbitReport rep = orbit(f, z0, max_iter, tol);
  NumericPreperiodicity out;
  out.steps = static_cast<int>(rep.points.size()) - 1;
  switch (rep.status) {
    case OrbitStatus::Escaped:
      out.verdict = PreperVerdict::Wandering;
      break;
    case OrbitStatus::CycleDetected:
      out.verdict = PreperVerdict::Preperiodic;
      out.tail = rep.tail;
      out.period = rep.period;
      out.heuristic = true;
      break;
    case OrbitStatus::Undetermined:
      break;
  }
  return out;
}

std::vector<Complex> periodic_points(const DynMap& f, unsigned n, const PeriodicPointOptions& opts) {
  if (n < 1) throw InputError("periodic_points: n must be >= 1");
  const double deg = std::pow(static_cast<double>(f.degree()), static_cast<double>(n));
  if (deg > static_cast<double>(opts.degree_cap)) {
    throw DegreeCapError("periodic_points: degree " + std::to_string(static_cast<long long>(deg)) +
                         " exceeds cap " + std::to_string(opts.degree_cap));
  }
  const int D = static_cast<int>(deg);
  if (opts.distinct || D <= 64) {
    ZPoly g = iterate(f.exact(), n) - ZPoly::identity();
    if (opts.distinct) g = squarefree_part(g);
    return roots(to_complex(g), opts.tol).roots;
  }
  const double d = f.degree();
  std::vector<double> absc;
  for (const Complex& c : f.numeric().coeffs()) absc.push_back(std::abs(c));
  auto step = [&, absc](Complex z) -> NewtonStep {
    std::vector<Complex> dk(n);
    std::vector<double> bound(n);
    Complex x = z;
    Complex D1 = 1.0;
    for (unsigned k = 0; k < n; ++k) {
      if (std::abs(x) > 1e100) {
        // f^n(z) ~ x^(d^(n-k)), so F/F' ~ x / (d^(n-k) D_k).
        const Complex ratio = x / (D1 * std::pow(d, static_cast<double>(n - k)));
        return {ratio, std::numeric_limits<double>::infinity(), 0.0};
      }
      const double ax = std::abs(x);
      double b = 0.0;
      for (auto it = absc.rbegin(); it != absc.rend(); ++it) b = b * ax + *it;
      bound[k] = b;
      dk[k] = f.derivative(x);
      D1 *= dk[k];
      x = f(x);
    }
    // Rounding in step k is amplified by the derivatives of the later steps.
    double noise = kEps * std::abs(z);
    double amp = 1.0;
    for (unsigned k = n; k-- > 0;) {
      noise += 4.0 * kEps * (d + 1.0) * bound[k] * amp;
      amp *= std::abs(dk[k]);
    }
    const Complex F = x - z;
    const Complex dF = D1 - 1.0;
    return {F / dF, std::abs(F), noise};
  };
  return roots_of(D, step, f.escape_radius(), opts.tol).roots;
}

std::string to_string(CycleClass c) {
  switch (c) {
    case CycleClass::Superattracting: return "Superattracting";
    case CycleClass::Attracting: return "Attracting";
    case CycleClass::Neutral: return "Neutral";
    case CycleClass::Repelling: return "Repelling";
  }
  return "?";
}

CycleReport classify_cycle(const DynMap& f, Complex point, unsigned period,
                           const ClassifyOptions& opts) {
  if (period < 1) throw InputError("classify_cycle: period must be >= 1");
  CycleReport rep;
  Complex z = point;
  Complex lambda = 1.0;
  for (unsigned k = 0; k < period; ++k) {
    rep.cycle.push_back(z);
    lambda *= f.derivative(z);
    z = f(z);
  }
  const double resid = std::abs(z - point) / std::max(1.0, std::abs(point));
  if (!(resid <= opts.cycle_tol)) {
    throw InputError("classify_cycle: point is not on a cycle of period " +
                     std::to_string(period) + " (residual " + std::to_string(resid) + ")");
  }
  rep.multiplier = lambda;
  rep.abs_multiplier = std::abs(lambda);
  const double a = rep.abs_multiplier;
  if (a < opts.superattract_eps) {
    rep.cls = CycleClass::Superattracting;
  } else if (a < 1.0 - opts.neutral_band) {
    rep.cls = CycleClass::Attracting;
  } else if (std::abs(a - 1.0) <= opts.neutral_band) {
    rep.cls = CycleClass::Neutral;
  } else {
    rep.cls = CycleClass::Repelling;
  }
  double turn = a == 0.0 ? 0.0 : std::arg(lambda) / (2.0 * std::numbers::pi);
  if (turn < 0.0) turn += 1.0;
  if (turn >= 1.0) turn -= 1.0;
  turn += 0.0;  // no negative zero
  rep.turn = turn;
  rep.hint.distance = std::numeric_limits<double>::infinity();
  for (long q = 1; q <= 12; ++q) {
    const long p = std::lround(turn * static_cast<double>(q));
    const double dist = std::abs(turn - static_cast<double>(p) / static_cast<double>(q));
    if (dist < rep.hint.distance - 1e-15) {
      rep.hint = {p % q, q, dist};
    }
  }
  return rep;
}

std::vector<Complex> critical_points(const ZPoly& f) {
  if (f.degree() < 2) throw InputError("critical_points: degree must be >= 2");
  std::vector<Complex> out = roots(to_complex(derivative(f))).roots;
  for (Complex& z : out) z = tidy(z);
  return out;
}

double commutator_residual(const ZPoly& f, const CAffine& L) {
  const CPoly fc = to_complex(f);
  const CPoly l = L.as_poly();
  const CPoly diff = compose(l, fc) - compose(fc, l);
  double worst = 0.0;
  for (const Complex& c : diff.coeffs()) worst = std::max(worst, std::abs(c));
  return worst;
}

std::vector<CAffine> find_linear_commuters(const ZPoly& f, double tol) {
  const DynMap F(f);
  const int d = F.degree();
  const Complex c0 = F.numeric().coeff(0);

  std::mt19937_64 rng(0x6c696e636f6d6dULL);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Complex> samples;
  for (int i = 0; i < 50; ++i) {
    const double r = std::sqrt(unif(rng));
    samples.push_back(std::polar(r, 2.0 * std::numbers::pi * unif(rng)));
  }

  std::vector<CAffine> out;
  for (int k = 0; k < d - 1; ++k) {
    const Complex a = tidy(std::polar(1.0, 2.0 * std::numbers::pi * k / (d - 1)));
    const CPoly eq = F.numeric() - CPoly::identity() - CPoly::constant(a * c0);
    for (Complex b : roots(eq).roots) {
      b = tidy(b);
      const CAffine L(a, b);
      double worst = 0.0;
      for (const Complex& z : samples) worst = std::max(worst, std::abs(L(F(z)) - F(L(z))));
      if (!(worst < tol)) continue;
      const bool dup = std::any_of(out.begin(), out.end(), [&](const CAffine& M) {
        return std::abs(M.a() - a) + std::abs(M.b() - b) < 1e-6;
      });
      if (!dup) out.push_back(L);
    }
  }
  return out;
}

}  // namespace dynmahler
