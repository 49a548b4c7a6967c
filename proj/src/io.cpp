#include "dynmahler/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

namespace dynmahler {
namespace {

std::optional<Integer> parse_integer_text(const std::string& s) {
  static const std::regex re(R"(\s*[+-]?\d+\s*)");
  if (!std::regex_match(s, re)) return std::nullopt;
  std::string t;
  for (char ch : s) {
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '+') t.push_back(ch);
  }
  return Integer(t, 10);
}

Integer parse_integer(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()), 10);
  if (v.is_string()) {
    if (auto z = parse_integer_text(v.get<std::string>())) return *z;
  }
  throw SchemaError(where + ": expected an integer (decimal string)");
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + "." + key + ": missing");
  return *it;
}

double parse_real(const std::string& s) {
  if (auto q = parse_rational(s)) return to_double(*q);
  std::size_t idx = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &idx);
  } catch (const std::exception&) {
    throw SchemaError("not a number: '" + s + "'");
  }
  if (idx != s.size()) throw SchemaError("not a number: '" + s + "'");
  return v;
}

}  // namespace

json load_json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return json::parse(arg);
    std::ifstream is(arg);
    if (!is) throw SchemaError("cannot read '" + arg + "' (neither inline JSON nor a readable file)");
    return json::parse(is);
  } catch (const json::parse_error& e) {
    throw SchemaError("malformed JSON in '" + arg.substr(0, 60) + "': " + e.what());
  }
}

ZPoly parse_zpoly(const json& j, const std::string& where) {
  const json& cs = field(j, "coeffs", where);
  if (!cs.is_array() || cs.empty()) throw SchemaError(where + ".coeffs: expected a nonempty array");
  if (j.contains("var") && !j["var"].is_string()) throw SchemaError(where + ".var: expected a string");
  std::vector<Integer> c;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    c.push_back(parse_integer(cs[i], where + ".coeffs[" + std::to_string(i) + "]"));
  }
  return ZPoly(std::move(c));
}

json zpoly_to_json(const ZPoly& p, const std::string& var) {
  json cs = json::array();
  for (const Integer& c : p.coeffs()) cs.push_back(c.get_str());
  if (cs.empty()) cs.push_back("0");
  return {{"var", var}, {"coeffs", cs}};
}

MPoly parse_mpoly(const json& j, std::vector<std::string>* names, const std::string& where) {
  if (j.is_object() && j.contains("coeffs")) {
    const ZPoly u = parse_zpoly(j, where);
    if (names) *names = {j.value("var", std::string("x"))};
    return MPoly::from_univariate(u, 1, 0);
  }
  const json& vars = field(j, "vars", where);
  if (!vars.is_array() || vars.empty()) throw SchemaError(where + ".vars: expected a nonempty array");
  std::vector<std::string> vn;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (!vars[k].is_string()) throw SchemaError(where + ".vars[" + std::to_string(k) + "]: expected a string");
    vn.push_back(vars[k].get<std::string>());
  }
  const json& terms = field(j, "terms", where);
  if (!terms.is_array()) throw SchemaError(where + ".terms: expected an array");
  MPoly p(vn.size());
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string w = where + ".terms[" + std::to_string(t) + "]";
    const json& e = field(terms[t], "exp", w);
    if (!e.is_array() || e.size() != vn.size()) {
      throw SchemaError(w + ".exp: expected " + std::to_string(vn.size()) + " exponents");
    }
    Exponent ex;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (!e[k].is_number_integer() || e[k].get<long long>() < 0) {
        throw SchemaError(w + ".exp[" + std::to_string(k) + "]: expected a nonnegative integer");
      }
      ex.push_back(e[k].get<unsigned>());
    }
    p.add_term(ex, parse_integer(field(terms[t], "coeff", w), w + ".coeff"));
  }
  if (names) *names = vn;
  return p;
}

json mpoly_to_json(const MPoly& p, const std::vector<std::string>& vars) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exp", e}, {"coeff", c.get_str()}});
  return {{"vars", vars}, {"terms", terms}};
}

std::optional<Rational> parse_rational(const std::string& s) {
  static const std::regex re(R"(\s*([+-]?\d+)(\s*/\s*(\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) return std::nullopt;
  std::string num = m[1].str();
  if (num[0] == '+') num.erase(0, 1);
  Integer den = m[3].matched ? Integer(m[3].str(), 10) : Integer(1);
  if (den == 0) throw SchemaError("zero denominator in '" + s + "'");
  Rational q(Integer(num, 10), den);
  q.canonicalize();
  return q;
}

Complex parse_complex(const std::string& raw) {
  std::string s;
  for (char ch : raw) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw SchemaError("empty point");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s), 0.0};
  s.pop_back();
  // Split before the last sign that is not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  double im;
  if (im_part.empty() || im_part == "+") im = 1.0;
  else if (im_part == "-") im = -1.0;
  else im = parse_real(im_part[0] == '+' ? im_part.substr(1) : im_part);
  return {re_part.empty() ? 0.0 : parse_real(re_part), im};
}

std::vector<FactorSpec> parse_factor_specs(const json& j, const ZPoly& f) {
  const json& arr = (j.is_object() && j.contains("factors")) ? j["factors"] : j;
  if (!arr.is_array() || arr.empty()) throw SchemaError("factors: expected a nonempty array");
  std::vector<FactorSpec> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string w = "factors[" + std::to_string(i) + "]";
    const json& e = arr[i];
    if (!e.is_object()) throw SchemaError(w + ": expected an object");
    FactorSpec s = FactorSpec::with_default(f);
    if (e.contains("ftilde")) {
      const json& cs = field(e["ftilde"], "coeffs", w + ".ftilde");
      bool integral = cs.is_array();
      for (const json& c : cs) integral = integral && (c.is_number_integer() || (c.is_string() && parse_integer_text(c.get<std::string>())));
      if (integral) {
        s.ftilde = parse_zpoly(e["ftilde"], w + ".ftilde");
      } else {
        std::vector<Complex> cc;
        for (std::size_t k = 0; k < cs.size(); ++k) {
          if (!cs[k].is_string() && !cs[k].is_number()) throw SchemaError(w + ".ftilde.coeffs[" + std::to_string(k) + "]: expected a number");
          cc.push_back(cs[k].is_string() ? parse_complex(cs[k].get<std::string>()) : Complex(cs[k].get<double>()));
        }
        s.ftilde = CPoly(std::move(cc));
      }
    }
    if (e.contains("L")) {
      const json& L = e["L"];
      auto text = [&](const char* k, const char* dflt) -> std::string {
        if (!L.contains(k)) return dflt;
        if (L[k].is_string()) return L[k].get<std::string>();
        if (L[k].is_number()) return L[k].dump();
        throw SchemaError(w + ".L." + k + ": expected a number or string");
      };
      const std::string a = text("a", "1");
      const std::string b = text("b", "0");
      auto qa = parse_rational(a);
      auto qb = parse_rational(b);
      try {
        if (qa && qb) s.L = RatAffine(*qa, *qb);
        else s.L = CAffine(parse_complex(a), parse_complex(b));
      } catch (const InputError&) {
        throw SchemaError(w + ".L.a: must be nonzero");
      }
    }
    for (const char* k : {"n", "m"}) {
      if (!e.contains(k)) continue;
      if (!e[k].is_number_integer() || e[k].get<long long>() < 0) {
        throw SchemaError(w + "." + k + ": expected a nonnegative integer");
      }
      (k[0] == 'n' ? s.n : s.m) = e[k].get<unsigned>();
    }
    out.push_back(std::move(s));
  }
  return out;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const QuadratureResult& r) {
  json j = {{"estimate", r.estimate},   {"std_error", r.std_error}, {"n_samples", r.n_samples},
            {"rejected", r.rejected},   {"method", to_string(r.method)}, {"seed", r.seed}};
  if (r.method == Method::Tree) j["depth"] = r.depth;
  return j;
}

json to_json(const PotentialValue& v) {
  return {{"value", v.value}, {"converged", v.converged}, {"iterations_used", v.iterations_used}};
}

json to_json(const HeightValue& v) {
  return {{"value", v.value},
          {"error_bound", v.error_bound},
          {"iterations", v.iterations},
          {"preperiodic", v.preperiodic}};
}

json to_json(const CycleReport& c) {
  json cyc = json::array();
  for (const Complex& z : c.cycle) cyc.push_back(complex_to_json(z));
  return {{"cycle", cyc},
          {"multiplier", complex_to_json(c.multiplier)},
          {"abs_multiplier", c.abs_multiplier},
          {"class", to_string(c.cls)},
          {"turn", c.turn},
          {"turn_hint", {{"num", c.hint.num}, {"den", c.hint.den}, {"distance", c.hint.distance}}}};
}

json to_json(const KroneckerVerdict& v, const std::vector<std::string>& vars) {
  json j = {{"verdict", to_string(v.verdict)},
            {"estimate", v.estimate},
            {"heuristic", v.heuristic},
            {"note", v.note}};
  if (!v.roots.empty()) {
    json rs = json::array();
    for (const RootWitness& r : v.roots) {
      rs.push_back({{"root", complex_to_json(r.root)},
                    {"verdict", to_string(r.verdict)},
                    {"tail", r.tail},
                    {"period", r.period}});
    }
    j["roots"] = rs;
  }
  if (v.product) j["product"] = mpoly_to_json(*v.product, vars);
  if (v.cofactor) j["cofactor"] = mpoly_to_json(*v.cofactor, vars);
  if (!v.checks.empty()) {
    json cs = json::array();
    for (const FactorCheck& c : v.checks) {
      cs.push_back({{"ftilde_commutes", c.ftilde_commutes}, {"l_is_symmetry", c.l_is_symmetry}});
    }
    j["factor_checks"] = cs;
  }
  return j;
}

json to_json(const PreperJuliaVerdict& v) {
  json j = {{"holds", to_string(v.holds)}, {"reason", to_string(v.reason)}};
  if (!v.normal_form.empty()) j["normal_form"] = v.normal_form;
  if (v.witness) j["witness"] = to_json(*v.witness);
  return j;
}

}  // namespace dynmahler
