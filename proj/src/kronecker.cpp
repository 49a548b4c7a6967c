#include "dynmahler/kronecker.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dynmahler/potential.hpp"

namespace dynmahler {
namespace {

using CTerms = std::map<std::pair<unsigned, unsigned>, Complex>;

CTerms cmul(const CTerms& p, const CTerms& q) {
  CTerms r;
  for (const auto& [ep, cp] : p) {
    for (const auto& [eq, cq] : q) r[{ep.first + eq.first, ep.second + eq.second}] += cp * cq;
  }
  return r;
}

double max_abs(const CPoly& p) {
  double m = 0.0;
  for (const Complex& c : p.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

CPoly as_cpoly(const std::variant<ZPoly, CPoly>& v) {
  if (const auto* z = std::get_if<ZPoly>(&v)) return to_complex(*z);
  return std::get<CPoly>(v);
}

CAffine as_caffine(const std::variant<RatAffine, CAffine>& v) {
  if (const auto* r = std::get_if<RatAffine>(&v)) return to_complex(*r);
  return std::get<CAffine>(v);
}

int ftilde_degree(const FactorSpec& s) {
  return std::visit([](const auto& p) { return p.degree(); }, s.ftilde);
}

void check_caps(std::span<const FactorSpec> specs, std::size_t cap) {
  double dx = 0.0;
  double dy = 0.0;
  for (const FactorSpec& s : specs) {
    const int d = ftilde_degree(s);
    if (d < 2) throw InputError("factor spec: f~ must have degree >= 2");
    dx += std::pow(d, s.n);
    dy += std::pow(d, s.m);
  }
  if (dx > static_cast<double>(cap) || dy > static_cast<double>(cap)) {
    throw DegreeCapError("factor product degree exceeds cap " + std::to_string(cap));
  }
}

std::optional<MPoly> exact_product(std::span<const FactorSpec> specs) {
  MPoly prod = MPoly::constant(2, 1);
  Integer denom = 1;
  for (const FactorSpec& s : specs) {
    const ZPoly& ft = std::get<ZPoly>(s.ftilde);
    const RatAffine& L = std::get<RatAffine>(s.L);
    Integer D;
    mpz_lcm(D.get_mpz_t(), L.a().get_den_mpz_t(), L.b().get_den_mpz_t());
    const Rational Da = Rational(D) * L.a();
    const Rational Db = Rational(D) * L.b();
    const MPoly fx = MPoly::from_univariate(iterate(ft, s.n), 2, 0);
    const MPoly gy = MPoly::from_univariate(iterate(ft, s.m), 2, 1);
    // D f~^n(x) - (D a) f~^m(y) - D b, all integral.
    const MPoly factor = D * fx - Integer(Da.get_num()) * gy - MPoly::constant(2, Db.get_num());
    prod = prod * factor;
    denom *= D;
  }
  if (denom == 1) return prod;
  MPoly r(2);
  for (const auto& [e, c] : prod.terms()) {
    if (!mpz_divisible_p(c.get_mpz_t(), denom.get_mpz_t())) return std::nullopt;
    Integer q;
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), denom.get_mpz_t());
    r.add_term(e, q);
  }
  return r;
}

// f~ given as CPoly but with integer coefficients (within 1e-9).
std::optional<ZPoly> integral_ftilde(const std::variant<ZPoly, CPoly>& v) {
  if (const auto* z = std::get_if<ZPoly>(&v)) return *z;
  std::vector<Integer> c;
  for (const Complex& x : std::get<CPoly>(v).coeffs()) {
    const double r = std::round(x.real());
    if (std::abs(x.real() - r) > 1e-9 || std::abs(x.imag()) > 1e-9) return std::nullopt;
    c.emplace_back(r);
  }
  return ZPoly(std::move(c));
}

FactorCheck check_factor(const DynMap& f, const FactorSpec& s) {
  FactorCheck chk;
  const CPoly fc = f.numeric();
  const CPoly ft = as_cpoly(s.ftilde);
  CPoly fk = fc;
  for (int k = 1; k <= 3 && !chk.ftilde_commutes; ++k) {
    const CPoly diff = compose(ft, fk) - compose(fk, ft);
    const double scale = std::max({1.0, max_abs(compose(ft, fk)), max_abs(compose(fk, ft))});
    chk.ftilde_commutes = max_abs(diff) <= 1e-9 * scale;
    fk = compose(fc, fk);
  }
  const CAffine L = as_caffine(s.L);
  // L composed with itself d times.
  Complex a = 1.0;
  Complex b = 0.0;
  for (int k = 0; k < f.degree(); ++k) {
    b = L.a() * b + L.b();
    a *= L.a();
  }
  const CPoly lhs = compose(fc, L.as_poly());
  const CPoly rhs = compose(CAffine(a, b).as_poly(), fc);
  const double scale = std::max({1.0, max_abs(lhs), max_abs(rhs)});
  chk.l_is_symmetry = max_abs(lhs - rhs) <= 1e-9 * scale;
  return chk;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedZero: return "CertifiedZero";
    case Verdict::PositiveEvidence: return "PositiveEvidence";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "?";
}

FactorSpec FactorSpec::with_default(const ZPoly& f, unsigned n, unsigned m) {
  FactorSpec s;
  s.ftilde = f;
  s.n = n;
  s.m = m;
  return s;
}

KroneckerVerdict certify_zero_univariate(const DynMap& f, const ZPoly& P) {
  if (P.is_zero()) throw InputError("certify_zero_univariate: P must be nonzero");
  KroneckerVerdict out;
  out.estimate = mahler_univariate_jensen(f, P);
  if (abs(P.lead()) != 1 || content(P) != 1) {
    out.verdict = Verdict::PositiveEvidence;
    out.note = "leading coefficient or content is not 1";
    return out;
  }
  if (P.degree() == 0) {
    out.verdict = Verdict::CertifiedZero;
    return out;
  }
  bool all_pre = true;
  bool any_wander = false;
  for (const Complex& r : roots(to_complex(squarefree_part(P))).roots) {
    const NumericPreperiodicity np = is_preperiodic_numeric(f, r);
    out.roots.push_back({r, np.verdict, np.tail, np.period});
    all_pre = all_pre && np.verdict == PreperVerdict::Preperiodic;
    any_wander = any_wander || np.verdict == PreperVerdict::Wandering;
  }
  if (any_wander) {
    out.verdict = Verdict::PositiveEvidence;
    out.note = "a root escapes";
  } else if (all_pre) {
    out.verdict = Verdict::CertifiedZero;
    out.heuristic = true;
    out.note = "every root closes a numeric cycle";
  } else {
    out.note = "some root neither escaped nor cycled";
  }
  return out;
}

FactorProduct build_factor_product(std::span<const FactorSpec> specs, std::size_t degree_cap) {
  if (specs.empty()) throw InputError("build_factor_product: no factors");
  check_caps(specs, degree_cap);
  FactorProduct out;
  const bool all_exact = std::all_of(specs.begin(), specs.end(), [](const FactorSpec& s) {
    return std::holds_alternative<ZPoly>(s.ftilde) && std::holds_alternative<RatAffine>(s.L);
  });
  if (all_exact) {
    out.product = exact_product(specs);
    return out;
  }

  out.snapped = true;
  CTerms prod{{{0u, 0u}, Complex(1.0)}};
  for (const FactorSpec& s : specs) {
    const CPoly ft = as_cpoly(s.ftilde);
    const CAffine L = as_caffine(s.L);
    const CPoly fx = iterate(ft, s.n);
    const CPoly gy = iterate(ft, s.m);
    CTerms factor;
    for (std::size_t i = 0; i < fx.coeffs().size(); ++i) factor[{static_cast<unsigned>(i), 0u}] += fx.coeffs()[i];
    for (std::size_t j = 0; j < gy.coeffs().size(); ++j) factor[{0u, static_cast<unsigned>(j)}] -= L.a() * gy.coeffs()[j];
    factor[{0u, 0u}] -= L.b();
    prod = cmul(prod, factor);
  }
  MPoly r(2);
  for (const auto& [e, c] : prod) {
    const double re = std::round(c.real());
    const double dist = std::max(std::abs(c.real() - re), std::abs(c.imag()));
    out.max_snap_distance = std::max(out.max_snap_distance, dist);
    if (dist > 1e-6) return out;
    if (re != 0.0) r.add_term({e.first, e.second}, Integer(re));
  }
  out.product = r;

  // Exact re-verification when L is rational and f~ integral.
  std::vector<FactorSpec> exact;
  for (const FactorSpec& s : specs) {
    auto zi = integral_ftilde(s.ftilde);
    if (!zi || !std::holds_alternative<RatAffine>(s.L)) return out;
    FactorSpec e = s;
    e.ftilde = *zi;
    exact.push_back(std::move(e));
  }
  auto ex = exact_product(exact);
  out.reverified = ex.has_value() && *ex == r;
  if (!out.reverified) out.product = ex;
  return out;
}

KroneckerVerdict certify_zero_bivariate(const DynMap& f, const MPoly& P,
                                        std::span<const FactorSpec> specs, std::size_t degree_cap) {
  if (P.nvars() != 2) throw InputError("certify_zero_bivariate: P must have two variables");
  auto [cont, prim] = content_primitive(P);
  if (cont != 1) throw InputError("certify_zero_bivariate: P must be primitive (content " + cont.get_str() + ")");
  KroneckerVerdict out;
  bool hyp = true;
  for (const FactorSpec& s : specs) {
    out.checks.push_back(check_factor(f, s));
    hyp = hyp && out.checks.back().ftilde_commutes && out.checks.back().l_is_symmetry;
  }
  const FactorProduct fp = build_factor_product(specs, degree_cap);
  if (!fp.product) {
    out.note = "factor product is not integral";
    return out;
  }
  out.product = fp.product;
  out.cofactor = divide_exact(*fp.product, P);
  if (!out.cofactor) {
    out.note = "P does not divide the factor product";
    return out;
  }
  if (!hyp) {
    out.note = "P divides the product, but some factor fails its commuting/symmetry check";
    return out;
  }
  out.verdict = Verdict::CertifiedZero;
  out.heuristic = fp.snapped && !fp.reverified;
  out.note = "P divides the factor product";
  return out;
}

PreperiodicPairs find_preperiodic_pairs(const DynMap& f, const MPoly& P, unsigned max_n,
                                        unsigned max_m, std::size_t degree_cap) {
  if (P.nvars() != 2) throw InputError("find_preperiodic_pairs: P must have two variables");
  PreperiodicPairs out;
  std::vector<Complex> alphas;
  for (unsigned n = 1; n <= max_n; ++n) {
    if (std::pow(f.degree(), n) > static_cast<double>(degree_cap)) {
      throw DegreeCapError("find_preperiodic_pairs: degree of f^" + std::to_string(n) +
                           " exceeds cap " + std::to_string(degree_cap));
    }
    const ZPoly fn = iterate(f.exact(), n);
    for (unsigned m = 0; m < n && m <= max_m; ++m) {
      const ZPoly g = squarefree_part(fn - iterate(f.exact(), m));
      for (const Complex& a : roots(to_complex(g), 1e-12).roots) {
        const bool seen = std::any_of(alphas.begin(), alphas.end(),
                                      [&](Complex b) { return std::abs(a - b) < 1e-9; });
        if (!seen) alphas.push_back(a);
      }
    }
  }
  for (const Complex& a : alphas) {
    const Complex pt[2] = {a, Complex(0.0)};
    const CPoly py = P.specialize(1, pt);
    double scale = 0.0;
    for (const auto& [e, c] : P.terms()) scale = std::max(scale, std::abs(to_double(c)) * std::pow(std::max(1.0, std::abs(a)), e[0]));
    bool vanishes = true;
    for (const Complex& c : py.coeffs()) vanishes = vanishes && std::abs(c) <= 1e-9 * std::max(1.0, scale);
    if (vanishes) {
      out.vertical_lines.push_back(a);
      continue;
    }
    if (py.degree() < 1) continue;
    for (const Complex& b : roots(py).roots) {
      const Complex q[2] = {a, b};
      if (!(std::abs(P(q)) < 1e-8)) continue;
      if (is_preperiodic_numeric(f, b).verdict == PreperVerdict::Preperiodic) out.pairs.emplace_back(a, b);
    }
  }
  return out;
}

}  // namespace dynmahler
