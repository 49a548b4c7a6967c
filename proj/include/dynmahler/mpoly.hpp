#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dynmahler/poly.hpp"

namespace dynmahler {

using Exponent = std::vector<unsigned>;

// Sparse polynomial in nvars variables with integer coefficients. No zero
// coefficient is ever stored; every exponent vector has length nvars.
class MPoly {
 public:
  explicit MPoly(std::size_t nvars = 1);

  static MPoly constant(std::size_t nvars, const Integer& c);
  static MPoly variable(std::size_t nvars, std::size_t var);
  static MPoly from_univariate(const ZPoly& p, std::size_t nvars, std::size_t var);

  // Adds c * x^e to the polynomial.
  void add_term(const Exponent& e, const Integer& c);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, Integer>& terms() const { return terms_; }
  int degree_in(std::size_t var) const;  // -1 for zero
  int total_degree() const;              // -1 for zero

  Complex operator()(std::span<const Complex> point) const;

  MPoly operator-() const;
  friend MPoly operator+(const MPoly& p, const MPoly& q);
  friend MPoly operator-(const MPoly& p, const MPoly& q);
  friend MPoly operator*(const MPoly& p, const MPoly& q);
  friend MPoly operator*(const Integer& s, const MPoly& p);
  friend bool operator==(const MPoly& p, const MPoly& q) {
    return p.nvars_ == q.nvars_ && p.terms_ == q.terms_;
  }

  // P = sum_k c_k * x_var^k; c_k do not involve x_var.
  std::vector<MPoly> coefficients_in(std::size_t var) const;
  // The polynomial as univariate in x_var, if no other variable appears.
  std::optional<ZPoly> as_univariate(std::size_t var) const;
  // Univariate complex polynomial in x_var with every other variable fixed
  // to point[j] (point[var] is ignored).
  CPoly specialize(std::size_t var, std::span<const Complex> point) const;
  // Replaces x_var by g(x_in_var).
  MPoly substitute(std::size_t var, const ZPoly& g, std::size_t in_var) const;

 private:
  void check_same(const MPoly& other) const;
  std::size_t nvars_;
  std::map<Exponent, Integer> terms_;
};

// Floating-point evaluator compiled once from an MPoly; cheap to call in
// sampling loops.
class MPolyEval {
 public:
  explicit MPolyEval(const MPoly& p);
  Complex operator()(std::span<const Complex> point) const;
  std::size_t nvars() const { return nvars_; }

 private:
  std::size_t nvars_;
  std::vector<double> coef_;
  std::vector<unsigned> exps_;  // row-major, nvars_ per term
  std::vector<unsigned> maxdeg_;
  std::vector<unsigned> offset_;
  std::size_t table_size_ = 0;
};

// Content (positive gcd of coefficients) and primitive part; zero throws.
std::pair<Integer, MPoly> content_primitive(const MPoly& p);

// Q with A = B * Q exactly over Z, or nullopt when B does not divide A.
std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b);

std::string to_string(const MPoly& p, const std::vector<std::string>& vars = {});

}  // namespace dynmahler
