#include "dynmahler/poly.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace dynmahler {

double to_double(const Integer& v) { return v.get_d(); }

double to_double(const Rational& v) { return v.get_d(); }

double log_abs(const Integer& v) {
  if (sgn(v) == 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(std::abs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

CPoly to_complex(const ZPoly& p) {
  std::vector<Complex> c;
  c.reserve(p.coeffs().size());
  for (const Integer& v : p.coeffs()) c.emplace_back(to_double(v), 0.0);
  return CPoly(std::move(c));
}

CPoly to_complex(const QPoly& p) {
  std::vector<Complex> c;
  c.reserve(p.coeffs().size());
  for (const Rational& v : p.coeffs()) c.emplace_back(to_double(v), 0.0);
  return CPoly(std::move(c));
}

QPoly to_rational(const ZPoly& p) {
  std::vector<Rational> c;
  c.reserve(p.coeffs().size());
  for (const Integer& v : p.coeffs()) c.emplace_back(v);
  return QPoly(std::move(c));
}

std::optional<ZPoly> to_integer(const QPoly& p) {
  std::vector<Integer> c;
  c.reserve(p.coeffs().size());
  for (const Rational& v : p.coeffs()) {
    if (v.get_den() != 1) return std::nullopt;
    c.push_back(v.get_num());
  }
  return ZPoly(std::move(c));
}

CAffine to_complex(const RatAffine& L) {
  return CAffine(Complex(to_double(L.a()), 0.0), Complex(to_double(L.b()), 0.0));
}

RatAffine to_rational(const IntAffine& L) { return RatAffine(Rational(L.a()), Rational(L.b())); }

ZPoly chebyshev(unsigned d) {
  if (d == 0) throw InputError("chebyshev: degree must be positive");
  ZPoly prev = ZPoly::constant(2);
  ZPoly cur = ZPoly::identity();
  const ZPoly z = ZPoly::identity();
  for (unsigned k = 1; k < d; ++k) {
    ZPoly next = z * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Integer content(const ZPoly& p) {
  if (p.is_zero()) throw InputError("content of the zero polynomial");
  Integer g = 0;
  for (const Integer& c : p.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  return g;
}

ZPoly primitive_part(const ZPoly& p) {
  Integer g = content(p);
  std::vector<Integer> c(p.coeffs().begin(), p.coeffs().end());
  for (Integer& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return ZPoly(std::move(c));
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw InputError("divmod: division by zero polynomial");
  std::vector<Rational> rem(a.coeffs().begin(), a.coeffs().end());
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {QPoly(), a};
  std::vector<Rational> quo(static_cast<std::size_t>(da - db + 1), Rational(0));
  const Rational& lb = b.lead();
  auto bc = b.coeffs();
  for (int k = da - db; k >= 0; --k) {
    Rational q = rem[static_cast<std::size_t>(k + db)] / lb;
    quo[static_cast<std::size_t>(k)] = q;
    if (sgn(q) == 0) continue;
    for (int j = 0; j <= db; ++j) {
      rem[static_cast<std::size_t>(k + j)] -= q * bc[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(db));
  return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a;
  QPoly y = b;
  while (!y.is_zero()) {
    QPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  Rational inv = Rational(1) / x.lead();
  return inv * x;
}

ZPoly squarefree_part(const ZPoly& p) {
  if (p.is_zero()) throw InputError("squarefree part of the zero polynomial");
  if (p.degree() <= 0) return ZPoly::constant(1);
  QPoly q = to_rational(p);
  QPoly g = gcd(q, derivative(q));
  QPoly s = divmod(q, g).first;
  // Clear denominators, then strip content.
  Integer den = 1;
  for (const Rational& c : s.coeffs()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  std::vector<Integer> c;
  for (const Rational& v : s.coeffs()) {
    Rational scaled = v * Rational(den);
    c.push_back(scaled.get_num());
  }
  ZPoly r = primitive_part(ZPoly(std::move(c)));
  if (sgn(r.lead()) < 0) r = -r;
  return r;
}

namespace {

template <class C, class Fmt>
std::string format_poly(const Poly<C>& p, const std::string& var, Fmt fmt) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const C& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (detail::is_zero(c)) continue;
    std::string s = fmt(c);
    bool neg = !s.empty() && s[0] == '-';
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    if (neg) s.erase(0, 1);
    if (i == 0 || s != "1") {
      os << s;
      if (i > 0) os << "*";
    }
    if (i >= 1) os << var;
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os.str();
}

}  // namespace

std::string to_string(const ZPoly& p, const std::string& var) {
  return format_poly(p, var, [](const Integer& c) { return c.get_str(); });
}

std::string to_string(const QPoly& p, const std::string& var) {
  return format_poly(p, var, [](const Rational& c) { return c.get_str(); });
}

std::string to_string(const CPoly& p, const std::string& var) {
  return format_poly(p, var, [](const Complex& c) {
    std::ostringstream os;
    os << std::setprecision(17) << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag()
       << "i)";
    return os.str();
  });
}

}  // namespace dynmahler
