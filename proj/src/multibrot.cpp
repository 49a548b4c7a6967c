#include "dynmahler/multibrot.hpp"

#include <algorithm>
#include <cmath>

namespace dynmahler {
namespace {

Integer floor_div(const Integer& a, unsigned long b) {
  Integer q;
  mpz_fdiv_q_ui(q.get_mpz_t(), a.get_mpz_t(), b);
  return q;
}

// Witness cycle of f through L(w), where w is on a cycle of the normal form.
CycleReport witness(const ZPoly& f, const IntAffine& L, Complex w, unsigned period) {
  const Complex z = Complex(to_double(L.a())) * w + Complex(to_double(L.b()));
  return classify_cycle(DynMap(f), z, period);
}

PreperJuliaVerdict quadratic_verdict(const ZPoly& f) {
  const QuadraticNormalForm nf = quadratic_normal_form(f);
  PreperJuliaVerdict v;
  v.normal_form = to_string(nf.form);
  const Integer c = nf.form.coeff(0);
  const bool linear = nf.form.coeff(1) != 0;
  v.holds = Holds::Yes;
  v.reason = PreperReason::TotallyDisconnected;
  if (!linear) {
    if (c == 0) {
      v.holds = Holds::No;
      v.reason = PreperReason::PowerMapBoundary;
      v.witness = witness(f, nf.L, 0.0, 1);
    } else if (c == -1) {
      v.holds = Holds::No;
      v.reason = PreperReason::AttractingCycle;
      v.witness = witness(f, nf.L, 0.0, 2);
    } else if (c == -2) {
      v.reason = PreperReason::ChebyshevSegment;
    }
    return v;
  }
  if (c == 0 || c == -1) {
    v.reason = PreperReason::NeutralRootOfUnity;
    v.witness = witness(f, nf.L, c == 0 ? 0.0 : -1.0, 1);
  } else if (c == -2) {
    // The 3-cycle: roots of z^3 + 2z^2 - z - 1.
    v.reason = PreperReason::NeutralRootOfUnity;
    const RootSet rs = roots(CPoly{Complex(-1), Complex(-1), Complex(2), Complex(1)}, 1e-14);
    Complex best = rs.roots.front();
    for (const Complex& r : rs.roots) {
      if (std::abs(r.imag()) < std::abs(best.imag())) best = r;
    }
    v.witness = witness(f, nf.L, {best.real(), 0.0}, 3);
  }
  return v;
}

}  // namespace

MultibrotMember multibrot_member(int d, Complex c, int max_iter) {
  if (d < 2) throw InputError("multibrot_member: d must be >= 2");
  const double R = 2.0 * std::max(2.0, std::abs(c));
  MultibrotMember out;
  Complex z = 0.0;
  for (int n = 1; n <= max_iter; ++n) {
    Complex p = z;
    for (int k = 1; k < d; ++k) p *= z;
    z = p + c;
    if (std::abs(z) > R) {
      out.status = Membership::Outside;
      out.escape_step = n;
      return out;
    }
  }
  return out;
}

RealInterval multibrot_real_interval(int d) {
  if (d < 2) throw InputError("multibrot_real_interval: d must be >= 2");
  using boost::multiprecision::pow;
  const HighReal hd(d);
  const HighReal hi = HighReal(d - 1) / pow(hd, hd / HighReal(d - 1));
  RealInterval out;
  out.hi = hi;
  const std::string ds = std::to_string(d);
  const std::string dm = std::to_string(d - 1);
  out.hi_formula = dm + "/" + ds + "^(" + ds + "/" + dm + ")";
  if (d % 2 == 1) {
    out.lo = -hi;
    out.lo_formula = "-" + out.hi_formula;
  } else {
    out.lo = -pow(HighReal(2), HighReal(1) / HighReal(d - 1));
    out.lo_formula = "-2^(1/" + dm + ")";
  }
  return out;
}

QuadraticNormalForm quadratic_normal_form(const ZPoly& f) {
  if (f.degree() != 2 || f.lead() != 1) throw InputError("quadratic_normal_form: f must be a monic quadratic");
  const Integer& a = f.coeffs()[1];
  const Integer& b = f.coeffs()[0];
  const Integer a1 = floor_div(a, 2);
  QuadraticNormalForm out;
  out.L = IntAffine(1, -a1);
  if (a - 2 * a1 == 0) {
    out.form = ZPoly{Integer(b - a1 * a1 + a1), Integer(0), Integer(1)};
  } else {
    out.form = ZPoly{Integer(b - a1 * a1), Integer(1), Integer(1)};
  }
  if (!(conjugate(f, out.L) == out.form)) throw Error("quadratic_normal_form: verification failed");
  return out;
}

std::optional<UnicriticalNormalForm> unicritical_normal_form(const ZPoly& f) {
  const int d = f.degree();
  if (d < 3 || f.lead() != 1) throw InputError("unicritical_normal_form: f must be monic of degree > 2");
  const Integer& cd1 = f.coeffs()[static_cast<std::size_t>(d - 1)];
  if (!mpz_divisible_ui_p(cd1.get_mpz_t(), static_cast<unsigned long>(d))) return std::nullopt;
  const Integer gamma = -cd1 / d;
  const Integer b = f(gamma);
  ZPoly shifted = ZPoly::constant(b);
  ZPoly lin{Integer(-gamma), Integer(1)};
  ZPoly pw = ZPoly::constant(1);
  for (int k = 0; k < d; ++k) pw = pw * lin;
  if (!(pw + shifted == f)) return std::nullopt;
  UnicriticalNormalForm out{b - gamma, IntAffine(1, gamma)};
  ZPoly form = ZPoly::monomial(1, static_cast<std::size_t>(d)) + ZPoly::constant(out.c);
  if (!(conjugate(f, out.L) == form)) throw Error("unicritical_normal_form: verification failed");
  return out;
}

std::string to_string(Holds h) {
  switch (h) {
    case Holds::Yes: return "Yes";
    case Holds::No: return "No";
    case Holds::Unknown: return "Unknown";
  }
  return "?";
}

std::string to_string(PreperReason r) {
  switch (r) {
    case PreperReason::TotallyDisconnected: return "TotallyDisconnected";
    case PreperReason::NeutralRootOfUnity: return "NeutralRootOfUnity";
    case PreperReason::ChebyshevSegment: return "ChebyshevSegment";
    case PreperReason::PowerMapBoundary: return "PowerMapBoundary";
    case PreperReason::AttractingCycle: return "AttractingCycle";
    case PreperReason::NotClassified: return "NotClassified";
  }
  return "?";
}

PreperJuliaVerdict preper_in_julia(const ZPoly& f) {
  if (f.degree() < 2 || f.lead() != 1) throw InputError("preper_in_julia: f must be monic of degree >= 2");
  if (f.degree() == 2) return quadratic_verdict(f);
  PreperJuliaVerdict v;
  const auto nf = unicritical_normal_form(f);
  if (!nf) return v;
  const int d = f.degree();
  v.normal_form = to_string(ZPoly::monomial(1, static_cast<std::size_t>(d)) + ZPoly::constant(nf->c));
  if (nf->c == 0) {
    v.holds = Holds::No;
    v.reason = PreperReason::PowerMapBoundary;
    v.witness = witness(f, nf->L, 0.0, 1);
  } else if (d % 2 == 0 && nf->c == -1) {
    v.holds = Holds::No;
    v.reason = PreperReason::AttractingCycle;
    v.witness = witness(f, nf->L, 0.0, 2);
  } else {
    v.holds = Holds::Yes;
    v.reason = PreperReason::TotallyDisconnected;
  }
  return v;
}

}  // namespace dynmahler
