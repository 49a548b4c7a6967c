#include "dynmahler/mpoly.hpp"

#include <algorithm>
#include <sstream>

namespace dynmahler {

MPoly::MPoly(std::size_t nvars) : nvars_(nvars) {
  if (nvars == 0) throw InputError("multivariate polynomial needs at least one variable");
}

MPoly MPoly::constant(std::size_t nvars, const Integer& c) {
  MPoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

MPoly MPoly::variable(std::size_t nvars, std::size_t var) {
  MPoly p(nvars);
  Exponent e(nvars, 0);
  e.at(var) = 1;
  p.add_term(e, 1);
  return p;
}

MPoly MPoly::from_univariate(const ZPoly& u, std::size_t nvars, std::size_t var) {
  MPoly p(nvars);
  Exponent e(nvars, 0);
  for (std::size_t k = 0; k < u.coeffs().size(); ++k) {
    e.at(var) = static_cast<unsigned>(k);
    p.add_term(e, u.coeffs()[k]);
  }
  return p;
}

void MPoly::add_term(const Exponent& e, const Integer& c) {
  if (e.size() != nvars_) throw InputError("exponent length does not match variable count");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

int MPoly::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e.at(var)));
  return d;
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (unsigned k : e) s += k;
    d = std::max(d, static_cast<int>(s));
  }
  return d;
}

Complex MPoly::operator()(std::span<const Complex> point) const {
  return MPolyEval(*this)(point);
}

void MPoly::check_same(const MPoly& other) const {
  if (other.nvars_ != nvars_) throw InputError("polynomials have different variable counts");
}

MPoly MPoly::operator-() const {
  MPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MPoly operator+(const MPoly& p, const MPoly& q) {
  p.check_same(q);
  MPoly r = p;
  for (const auto& [e, c] : q.terms_) r.add_term(e, c);
  return r;
}

MPoly operator-(const MPoly& p, const MPoly& q) { return p + (-q); }

MPoly operator*(const MPoly& p, const MPoly& q) {
  p.check_same(q);
  MPoly r(p.nvars_);
  Exponent e(p.nvars_);
  for (const auto& [ep, cp] : p.terms_) {
    for (const auto& [eq, cq] : q.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ep[k] + eq[k];
      r.add_term(e, cp * cq);
    }
  }
  return r;
}

MPoly operator*(const Integer& s, const MPoly& p) {
  MPoly r(p.nvars_);
  if (sgn(s) == 0) return r;
  for (const auto& [e, c] : p.terms_) r.terms_.emplace(e, s * c);
  return r;
}

std::vector<MPoly> MPoly::coefficients_in(std::size_t var) const {
  const int deg = degree_in(var);
  std::vector<MPoly> out(static_cast<std::size_t>(std::max(deg + 1, 0)), MPoly(nvars_));
  for (const auto& [e, c] : terms_) {
    Exponent rest = e;
    rest.at(var) = 0;
    out[e[var]].add_term(rest, c);
  }
  return out;
}

std::optional<ZPoly> MPoly::as_univariate(std::size_t var) const {
  std::vector<Integer> c(static_cast<std::size_t>(std::max(degree_in(var) + 1, 0)), Integer(0));
  for (const auto& [e, v] : terms_) {
    for (std::size_t k = 0; k < nvars_; ++k) {
      if (k != var && e[k] != 0) return std::nullopt;
    }
    c[e.at(var)] = v;
  }
  return ZPoly(std::move(c));
}

CPoly MPoly::specialize(std::size_t var, std::span<const Complex> point) const {
  std::vector<Complex> c(static_cast<std::size_t>(std::max(degree_in(var) + 1, 0)), Complex(0));
  for (const auto& [e, v] : terms_) {
    Complex t(to_double(v), 0.0);
    for (std::size_t k = 0; k < nvars_; ++k) {
      if (k == var || e[k] == 0) continue;
      t *= std::pow(point[k], static_cast<int>(e[k]));
    }
    c[e[var]] += t;
  }
  return CPoly(std::move(c));
}

MPoly MPoly::substitute(std::size_t var, const ZPoly& g, std::size_t in_var) const {
  const MPoly gm = from_univariate(g, nvars_, in_var);
  std::vector<MPoly> coeffs = coefficients_in(var);
  // Horner in the substituted variable.
  MPoly r(nvars_);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * gm + *it;
  return r;
}

MPolyEval::MPolyEval(const MPoly& p) : nvars_(p.nvars()), maxdeg_(p.nvars(), 0) {
  for (const auto& [e, c] : p.terms()) {
    coef_.push_back(to_double(c));
    for (std::size_t k = 0; k < nvars_; ++k) {
      exps_.push_back(e[k]);
      maxdeg_[k] = std::max(maxdeg_[k], e[k]);
    }
  }
  std::size_t off = 0;
  for (std::size_t k = 0; k < nvars_; ++k) {
    offset_.push_back(static_cast<unsigned>(off));
    off += maxdeg_[k] + 1;
  }
  table_size_ = off;
}

Complex MPolyEval::operator()(std::span<const Complex> point) const {
  if (point.size() < nvars_) throw InputError("evaluation point has too few coordinates");
  thread_local std::vector<Complex> pw;
  pw.resize(table_size_);
  for (std::size_t k = 0; k < nvars_; ++k) {
    Complex* row = pw.data() + offset_[k];
    row[0] = 1.0;
    for (unsigned j = 1; j <= maxdeg_[k]; ++j) row[j] = row[j - 1] * point[k];
  }
  Complex sum = 0.0;
  for (std::size_t t = 0; t < coef_.size(); ++t) {
    Complex term = coef_[t];
    for (std::size_t k = 0; k < nvars_; ++k) term *= pw[offset_[k] + exps_[t * nvars_ + k]];
    sum += term;
  }
  return sum;
}

std::pair<Integer, MPoly> content_primitive(const MPoly& p) {
  if (p.is_zero()) throw InputError("content of the zero polynomial");
  Integer g = 0;
  for (const auto& [e, c] : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  MPoly prim(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    prim.add_term(e, q);
  }
  return {g, prim};
}

std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw InputError("divide_exact: zero divisor");
  if (a.nvars() != b.nvars()) throw InputError("divide_exact: variable counts differ");
  const std::size_t n = a.nvars();
  // Leading terms in lexicographic order (the map's order).
  const auto& [lb_exp, lb_coef] = *b.terms().rbegin();
  MPoly rem = a;
  MPoly quo(n);
  while (!rem.is_zero()) {
    const auto& [lr_exp, lr_coef] = *rem.terms().rbegin();
    Exponent e(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (lr_exp[k] < lb_exp[k]) return std::nullopt;
      e[k] = lr_exp[k] - lb_exp[k];
    }
    if (!mpz_divisible_p(lr_coef.get_mpz_t(), lb_coef.get_mpz_t())) return std::nullopt;
    Integer c;
    mpz_divexact(c.get_mpz_t(), lr_coef.get_mpz_t(), lb_coef.get_mpz_t());
    MPoly term(n);
    term.add_term(e, c);
    quo.add_term(e, c);
    rem = rem - term * b;
  }
  return quo;
}

std::string to_string(const MPoly& p, const std::vector<std::string>& vars) {
  if (p.is_zero()) return "0";
  auto name = [&](std::size_t k) {
    return k < vars.size() ? vars[k] : "x" + std::to_string(k + 1);
  };
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::string s = c.get_str();
    const bool neg = s[0] == '-';
    if (neg) s.erase(0, 1);
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    bool constant = std::all_of(e.begin(), e.end(), [](unsigned k) { return k == 0; });
    bool need_star = false;
    if (constant || s != "1") {
      os << s;
      need_star = true;
    }
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (need_star) os << "*";
      os << name(k);
      if (e[k] > 1) os << "^" << e[k];
      need_star = true;
    }
    first = false;
  }
  return os.str();
}

}  // namespace dynmahler
