#pragma once

// Dense univariate polynomials over exact integers, exact rationals and
// complex doubles, plus affine maps and conjugation.

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dynmahler/error.hpp"

namespace dynmahler {

using Integer = mpz_class;
using Rational = mpq_class;
using Complex = std::complex<double>;

// Complex coefficients at or below this modulus count as zero when trimming.
inline constexpr double kZeroThreshold = 1e-300;

namespace detail {
inline bool is_zero(const Integer& c) { return sgn(c) == 0; }
inline bool is_zero(const Rational& c) { return sgn(c) == 0; }
inline bool is_zero(const Complex& c) { return std::abs(c) <= kZeroThreshold; }
}  // namespace detail

template <class C>
class Poly {
 public:
  using coeff_type = C;

  Poly() = default;
  explicit Poly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<C> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(C value) { return Poly(std::vector<C>{std::move(value)}); }
  static Poly monomial(C coef, std::size_t k) {
    std::vector<C> c(k + 1, C(0));
    c[k] = std::move(coef);
    return Poly(std::move(c));
  }
  static Poly identity() { return monomial(C(1), 1); }

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const C& lead() const { return c_.back(); }
  std::span<const C> coeffs() const { return c_; }
  C coeff(std::size_t i) const { return i < c_.size() ? c_[i] : C(0); }

  template <class X>
  X operator()(const X& x) const {
    X r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      r = r * x;
      r = r + X(*it);
    }
    return r;
  }

  Poly operator-() const {
    std::vector<C> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return Poly(std::move(c));
  }
  friend Poly operator+(const Poly& p, const Poly& q) {
    std::vector<C> c(std::max(p.c_.size(), q.c_.size()), C(0));
    for (std::size_t i = 0; i < p.c_.size(); ++i) c[i] = c[i] + p.c_[i];
    for (std::size_t i = 0; i < q.c_.size(); ++i) c[i] = c[i] + q.c_[i];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& p, const Poly& q) { return p + (-q); }
  friend Poly operator*(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) return Poly();
    std::vector<C> c(p.c_.size() + q.c_.size() - 1, C(0));
    for (std::size_t i = 0; i < p.c_.size(); ++i) {
      if (detail::is_zero(p.c_[i])) continue;
      for (std::size_t j = 0; j < q.c_.size(); ++j) {
        c[i + j] = c[i + j] + p.c_[i] * q.c_[j];
      }
    }
    return Poly(std::move(c));
  }
  friend Poly operator*(const C& s, const Poly& p) {
    std::vector<C> c(p.c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = s * p.c_[i];
    return Poly(std::move(c));
  }
  friend bool operator==(const Poly& p, const Poly& q) { return p.c_ == q.c_; }

 private:
  void trim() {
    while (!c_.empty() && detail::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<C> c_;
};

using ZPoly = Poly<Integer>;
using QPoly = Poly<Rational>;
using CPoly = Poly<Complex>;

template <class C>
Poly<C> derivative(const Poly<C>& p) {
  if (p.degree() <= 0) return Poly<C>();
  std::vector<C> c(static_cast<std::size_t>(p.degree()));
  for (std::size_t i = 1; i < p.coeffs().size(); ++i) {
    c[i - 1] = C(static_cast<long>(i)) * p.coeffs()[i];
  }
  return Poly<C>(std::move(c));
}

template <>
inline CPoly derivative(const CPoly& p) {
  if (p.degree() <= 0) return CPoly();
  std::vector<Complex> c(static_cast<std::size_t>(p.degree()));
  for (std::size_t i = 1; i < p.coeffs().size(); ++i) {
    c[i - 1] = static_cast<double>(i) * p.coeffs()[i];
  }
  return CPoly(std::move(c));
}

// f(g(x)). Numeric compositions that overflow raise Error.
template <class C>
Poly<C> compose(const Poly<C>& f, const Poly<C>& g) {
  Poly<C> r;
  auto cs = f.coeffs();
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
    r = r * g + Poly<C>::constant(*it);
  }
  if constexpr (std::is_same_v<C, Complex>) {
    for (const Complex& c : r.coeffs()) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw Error("compose: non-finite coefficient");
      }
    }
  }
  return r;
}

// f^0 = z, f^n = f o f^(n-1).
template <class C>
Poly<C> iterate(const Poly<C>& f, unsigned n) {
  Poly<C> r = Poly<C>::identity();
  for (unsigned i = 0; i < n; ++i) r = compose(f, r);
  return r;
}

// L(z) = a z + b with a != 0.
template <class C>
class AffineMap {
 public:
  AffineMap() : a_(1), b_(0) {}
  AffineMap(C a, C b) : a_(std::move(a)), b_(std::move(b)) {
    if (detail::is_zero(a_)) throw InputError("affine map: a must be nonzero");
  }
  static AffineMap identity() { return AffineMap(); }

  const C& a() const { return a_; }
  const C& b() const { return b_; }

  template <class X>
  X operator()(const X& z) const {
    return X(a_) * z + X(b_);
  }

  // Exact for rationals and complex; integer maps need a = +-1.
  AffineMap inverse() const {
    if constexpr (std::is_same_v<C, Integer>) {
      if (a_ != 1 && a_ != -1) {
        throw Error("affine map: inverse not integral (a != +-1)");
      }
      C a = a_;  // a^-1 = a for a = +-1
      C b = -a_ * b_;
      return AffineMap(a, b);
    } else {
      C ainv = C(1) / a_;
      C b = -b_ * ainv;
      return AffineMap(ainv, b);
    }
  }
  Poly<C> as_poly() const { return Poly<C>(std::vector<C>{b_, a_}); }

  friend bool operator==(const AffineMap& l, const AffineMap& r) {
    return l.a_ == r.a_ && l.b_ == r.b_;
  }

 private:
  C a_;
  C b_;
};

using IntAffine = AffineMap<Integer>;
using RatAffine = AffineMap<Rational>;
using CAffine = AffineMap<Complex>;

// f^L = L^-1 o f o L.
template <class C>
Poly<C> conjugate(const Poly<C>& f, const AffineMap<C>& L) {
  return compose(L.inverse().as_poly(), compose(f, L.as_poly()));
}

CPoly to_complex(const ZPoly& p);
CPoly to_complex(const QPoly& p);
QPoly to_rational(const ZPoly& p);
// Integral image of a rational polynomial, or nullopt when some coefficient
// has a nontrivial denominator.
std::optional<ZPoly> to_integer(const QPoly& p);
CAffine to_complex(const RatAffine& L);
RatAffine to_rational(const IntAffine& L);

double to_double(const Integer& v);
double to_double(const Rational& v);

// Natural log of |v| for arbitrarily large v; -inf for zero.
double log_abs(const Integer& v);

// Monic T_d with T_d(z + 1/z) = z^d + z^-d.
ZPoly chebyshev(unsigned d);

// gcd of the coefficients (positive), and p / content. Zero input throws.
Integer content(const ZPoly& p);
ZPoly primitive_part(const ZPoly& p);

// Quotient and remainder over Q. Divisor must be nonzero.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
// Monic gcd over Q; gcd(0, 0) = 0.
QPoly gcd(const QPoly& a, const QPoly& b);
// Primitive squarefree part with positive leading coefficient: same roots as
// p, each of multiplicity one.
ZPoly squarefree_part(const ZPoly& p);

std::string to_string(const ZPoly& p, const std::string& var = "z");
std::string to_string(const QPoly& p, const std::string& var = "z");
std::string to_string(const CPoly& p, const std::string& var = "z");

inline std::ostream& operator<<(std::ostream& os, const ZPoly& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const QPoly& p) { return os << to_string(p); }

}  // namespace dynmahler
