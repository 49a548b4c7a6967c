#include "dynmahler/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace dynmahler {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Newton data for an explicit polynomial. Points outside the unit disk use
// the reversed polynomial so large degrees do not overflow; abs_value and
// noise are then both scaled by |z|^-deg, which keeps their ratio intact.
NewtonStep poly_step(std::span<const Complex> c, Complex z) {
  const int n = static_cast<int>(c.size()) - 1;
  if (std::abs(z) <= 1.0) {
    Complex p = c[n];
    Complex dp = 0.0;
    double bound = std::abs(c[n]);
    const double az = std::abs(z);
    for (int i = n - 1; i >= 0; --i) {
      dp = dp * z + p;
      p = p * z + c[i];
      bound = bound * az + std::abs(c[i]);
    }
    return {p / dp, std::abs(p), 4.0 * kEps * (n + 1) * bound};
  }
  const Complex w = 1.0 / z;
  const double aw = std::abs(w);
  Complex q = c[0];
  Complex dq = 0.0;
  double bound = std::abs(c[0]);
  for (int k = 1; k <= n; ++k) {
    dq = dq * w + q;
    q = q * w + c[k];
    bound = bound * aw + std::abs(c[k]);
  }
  // p(z) = z^n q(w);  p/p' = z / (n - w q'(w)/q(w)).
  const Complex ratio = z / (static_cast<double>(n) - w * dq / q);
  return {ratio, std::abs(q), 4.0 * kEps * (n + 1) * bound};
}

double log_residual_bound(double tol, const std::vector<Complex>& r, int deg) {
  double maxabs = 0.0;
  for (const Complex& z : r) maxabs = std::max(maxabs, std::abs(z));
  return std::log(tol) + deg * std::log1p(maxabs);
}

std::vector<Complex> circle_guesses(int n, double radius) {
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / n + 0.7;
    z[static_cast<std::size_t>(i)] = std::polar(radius, theta);
  }
  return z;
}

template <class Step>
int aberth(std::vector<Complex>& z, Step&& step, int max_sweeps) {
  const std::size_t n = z.size();
  std::vector<bool> done(n, false);
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    bool all_done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const NewtonStep s = step(z[i]);
      if (s.abs_value <= s.noise) {
        done[i] = true;
        continue;
      }
      all_done = false;
      Complex sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        Complex diff = z[i] - z[j];
        if (diff == Complex(0.0)) diff = Complex(kEps, kEps) * (1.0 + std::abs(z[i]));
        sum += 1.0 / diff;
      }
      Complex corr = s.ratio / (1.0 - s.ratio * sum);
      if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) {
        corr = std::isfinite(std::abs(s.ratio)) ? s.ratio : Complex(0.0);
        if (corr == Complex(0.0)) corr = Complex(1e-3, 1e-3) * (1.0 + std::abs(z[i]));
      }
      z[i] -= corr;
      if (std::abs(corr) <= 4.0 * kEps * std::max(1.0, std::abs(z[i]))) done[i] = true;
    }
    if (all_done) break;
  }
  return sweep;
}

template <class Step>
void polish(std::vector<Complex>& z, Step&& step, int steps) {
  for (Complex& r : z) {
    NewtonStep cur = step(r);
    for (int k = 0; k < steps; ++k) {
      if (cur.abs_value == 0.0 || !std::isfinite(std::abs(cur.ratio))) break;
      const Complex cand = r - cur.ratio;
      const NewtonStep next = step(cand);
      if (!(next.abs_value < cur.abs_value)) break;
      r = cand;
      cur = next;
    }
  }
}

// Residual max|P(r)|/|lead| evaluated in log space.
double log_residual(std::span<const Complex> c, const std::vector<Complex>& r) {
  const int n = static_cast<int>(c.size()) - 1;
  const double loglead = std::log(std::abs(c[n]));
  double worst = -std::numeric_limits<double>::infinity();
  for (const Complex& z : r) {
    double lv;
    if (std::abs(z) <= 1.0) {
      Complex p = c[n];
      for (int i = n - 1; i >= 0; --i) p = p * z + c[i];
      lv = std::log(std::abs(p));
    } else {
      const Complex w = 1.0 / z;
      Complex q = c[0];
      for (int k = 1; k <= n; ++k) q = q * w + c[k];
      lv = n * std::log(std::abs(z)) + std::log(std::abs(q));
    }
    worst = std::max(worst, lv - loglead);
  }
  return worst;
}

std::vector<Complex> closed_form(std::span<const Complex> c) {
  if (c.size() == 2) return {-c[0] / c[1]};
  // Cancellation-free quadratic formula.
  const Complex a = c[2];
  const Complex b = c[1];
  const Complex cc = c[0];
  const Complex disc = std::sqrt(b * b - 4.0 * a * cc);
  const Complex s = (std::real(std::conj(b) * disc) >= 0.0) ? disc : -disc;
  const Complex q = -0.5 * (b + s);
  if (q == Complex(0.0)) return {Complex(0.0), Complex(0.0)};
  return {q / a, cc / q};
}

}  // namespace

RootSet roots(const CPoly& p, double tol, const RootOptions& opts) {
  const int n = p.degree();
  if (n < 1) throw InputError("roots: polynomial must have degree >= 1");
  auto c = p.coeffs();
  RootSet out;
  out.lead = p.lead();
  auto step = [&](Complex z) { return poly_step(c, z); };
  if (n <= 2) {
    out.roots = closed_form(c);
    polish(out.roots, step, opts.polish_steps);
  } else {
    double radius = 0.0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i] / c[n]));
    radius += 1.0;
    out.roots = circle_guesses(n, radius);
    out.sweeps = aberth(out.roots, step, opts.max_sweeps);
    polish(out.roots, step, opts.polish_steps);
  }
  const double lres = log_residual(c, out.roots);
  out.residual = std::exp(lres);
  if (!(lres <= log_residual_bound(tol, out.roots, n))) {
    throw RootFindingError("roots: no convergence after " + std::to_string(out.sweeps) + " sweeps",
                           out.residual);
  }
  return out;
}

RootSet roots_of(int degree, const std::function<NewtonStep(Complex)>& step, double radius,
                 double tol, const RootOptions& opts) {
  if (degree < 1) throw InputError("roots_of: degree must be >= 1");
  RootSet out;
  out.roots = circle_guesses(degree, radius);
  out.sweeps = aberth(out.roots, step, opts.max_sweeps);
  polish(out.roots, step, opts.polish_steps);
  double worst = 0.0;
  for (const Complex& z : out.roots) worst = std::max(worst, step(z).abs_value);
  out.residual = worst;
  if (!(std::log(worst) <= log_residual_bound(tol, out.roots, degree))) {
    throw RootFindingError("roots_of: no convergence after " + std::to_string(out.sweeps) +
                               " sweeps",
                           worst);
  }
  return out;
}

}  // namespace dynmahler
