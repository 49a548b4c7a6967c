#pragma once

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

#include "dynmahler/dynamics.hpp"
#include "dynmahler/kronecker.hpp"
#include "dynmahler/measure.hpp"
#include "dynmahler/multibrot.hpp"
#include "dynmahler/mpoly.hpp"
#include "dynmahler/potential.hpp"

namespace dynmahler {

using json = nlohmann::json;

// Malformed input documents. The message names the offending field.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Inline JSON when the argument starts with '{' or '[', else a file path.
json load_json_arg(const std::string& arg);

// {"var":"z","coeffs":["c0","c1",...]}; integers may also be plain numbers.
ZPoly parse_zpoly(const json& j, const std::string& where = "poly");
json zpoly_to_json(const ZPoly& p, const std::string& var = "z");

// {"vars":["x","y"],"terms":[{"exp":[i,j],"coeff":"c"}]}, or the univariate
// schema (one variable). names receives the variable names.
MPoly parse_mpoly(const json& j, std::vector<std::string>* names = nullptr,
                  const std::string& where = "poly");
json mpoly_to_json(const MPoly& p, const std::vector<std::string>& vars);

// "3/4", "-2", "1.5+0.5i", "-i", "2e-3-1e-2i".
Complex parse_complex(const std::string& s);
// Exact rational when the text is an integer or p/q; nullopt otherwise.
std::optional<Rational> parse_rational(const std::string& s);

// [{"ftilde": <univariate poly>, "L": {"a": "-1", "b": "0"}, "n": 1, "m": 0}, ...]
// Missing ftilde defaults to f, missing L to the identity. Rational a and b
// stay exact; anything else becomes complex.
std::vector<FactorSpec> parse_factor_specs(const json& j, const ZPoly& f);

json complex_to_json(Complex z);
json to_json(const QuadratureResult& r);
json to_json(const PotentialValue& v);
json to_json(const HeightValue& v);
json to_json(const CycleReport& c);
json to_json(const KroneckerVerdict& v, const std::vector<std::string>& vars);
json to_json(const PreperJuliaVerdict& v);

}  // namespace dynmahler
