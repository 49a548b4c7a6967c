#include "dynmahler/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace dynmahler {

PotentialValue green(const DynMap& f, Complex z, const GreenOptions& opts) {
  const double R = f.escape_radius();
  const double d = f.degree();
  auto coeffs = f.numeric().coeffs();
  PotentialValue out;

  Complex saved = z;
  int power = 1;
  int lam = 0;
  int n = 0;
  for (; n < opts.max_iter; ++n) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error("green: non-finite orbit value");
    }
    if (std::abs(z) > R) break;
    z = f(z);
    ++lam;
    if (std::abs(z - saved) <= opts.cycle_tol * (1.0 + std::abs(saved))) {
      out.iterations_used = n + 1;
      return out;
    }
    if (lam == power) {
      saved = z;
      power *= 2;
      lam = 0;
    }
  }
  if (n == opts.max_iter && !(std::abs(z) > R)) {
    out.converged = false;
    out.iterations_used = n;
    return out;
  }

  // Tail in w = 1/z: f(z) = z^d (1 + h(w)), h(w) = sum_{i<d} c_i w^(d-i).
  const int deg = f.degree();
  Complex w = 1.0 / z;
  double sum = std::log(std::abs(z));
  double scale = 1.0;
  int k = 0;
  for (;; ++k) {
    Complex h = 0.0;
    for (int i = 0; i < deg; ++i) h = (h + coeffs[static_cast<std::size_t>(i)]) * w;
    scale /= d;
    const double inc = 0.5 * std::log1p(2.0 * h.real() + std::norm(h));
    sum += scale * inc;
    if (k >= 2 && std::abs(scale * inc) < opts.tol) break;
    if (k > 200) break;
    w = std::pow(w, deg) / (1.0 + h);
  }
  out.value = std::max(0.0, std::pow(d, -static_cast<double>(n)) * sum);
  out.iterations_used = n + k + 1;
  return out;
}

HeightValue canonical_height(const ZPoly& f, const Rational& alpha, const HeightOptions& opts) {
  HeightValue out;
  Rational a = alpha;
  a.canonicalize();
  const ExactPreperiodicity pre = is_preperiodic_exact(f, a);
  if (pre.preperiodic) {
    out.preperiodic = true;
    return out;
  }
  const int deg = f.degree();
  const double d = deg;
  Integer S = 0;
  for (int i = 0; i < deg; ++i) S += abs(f.coeffs()[static_cast<std::size_t>(i)]);
  const Integer R = std::max(Integer(2 * S), Integer(S + 2));

  // |h(f(x)) - d h(x)| <= C for x inside the escape disk.
  const double Rd = to_double(R);
  double m1 = std::pow(Rd, d);
  for (int i = 0; i < deg; ++i) m1 += std::abs(to_double(f.coeffs()[static_cast<std::size_t>(i)])) * std::pow(Rd, i);
  const double C = std::max(std::log(m1), std::log(2.0));
  const double Sd = to_double(S);

  Integer p = a.get_num();
  Integer q = a.get_den();
  std::vector<Integer> qpow(static_cast<std::size_t>(deg) + 1);
  double dN = 1.0;
  for (int N = 0;; ++N) {
    const double h = std::max(log_abs(p), log_abs(q));
    out.value = h / dN;
    out.iterations = N;
    const bool escaped = abs(p) > R * q;
    if (escaped) {
      const double s = Sd * std::exp(log_abs(q) - log_abs(p));
      out.error_bound = 2.0 * s / (dN * d);
    } else {
      out.error_bound = C / ((d - 1.0) * dN);
    }
    // log of a huge integer in double precision carries relative rounding.
    out.error_bound += 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, out.value);
    if (out.error_bound <= opts.target_error) break;
    const std::size_t bits = std::max(mpz_sizeinbase(p.get_mpz_t(), 2), mpz_sizeinbase(q.get_mpz_t(), 2));
    if (bits > opts.max_bits) break;

    // f(p/q) = H(p, q) / q^d with H the homogenised f; gcd(H, q^d) = 1.
    qpow[0] = 1;
    for (int k = 1; k <= deg; ++k) qpow[static_cast<std::size_t>(k)] = qpow[static_cast<std::size_t>(k - 1)] * q;
    Integer H = f.lead();
    for (int i = deg - 1; i >= 0; --i) {
      H = H * p + f.coeffs()[static_cast<std::size_t>(i)] * qpow[static_cast<std::size_t>(deg - i)];
    }
    p = std::move(H);
    q = qpow[static_cast<std::size_t>(deg)];
    dN *= d;
  }
  return out;
}

double mahler_univariate_jensen(const DynMap& f, const CPoly& P, double tol,
                                const GreenOptions& opts) {
  if (P.is_zero()) throw InputError("mahler measure of the zero polynomial");
  double m = std::log(std::abs(P.lead()));
  if (P.degree() == 0) return m;
  for (const Complex& r : roots(P, tol).roots) m += green(f, r, opts).value;
  return m;
}

double mahler_univariate_jensen(const DynMap& f, const ZPoly& P, double tol,
                                const GreenOptions& opts) {
  if (P.is_zero()) throw InputError("mahler measure of the zero polynomial");
  if (P.degree() == 0) return log_abs(P.lead());
  return log_abs(P.lead()) + mahler_univariate_jensen(f, (1.0 / to_double(P.lead())) * to_complex(P), tol, opts);
}

}  // namespace dynmahler
