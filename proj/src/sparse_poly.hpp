#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "rational.hpp"
#include "symbols.hpp"

namespace aee {

using NumericBindings = std::map<SymbolId, double>;
using ExactBindings = std::map<SymbolId, Rational>;

// Multivariate polynomial with exact rational coefficients over SymbolId
// monomials, kept in canonical sorted form with no zero coefficients.
class SparsePoly {
 public:
  SparsePoly() = default;
  explicit SparsePoly(const Rational& c);
  static SparsePoly constant(const Rational& c) { return SparsePoly(c); }
  static SparsePoly symbol(const SymbolId& s, int units = 1);
  static SparsePoly term(const Monomial& m, const Rational& c);

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly& operator*=(const Rational& c);
  SparsePoly operator-() const;
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(SparsePoly a, const Rational& c) { return a *= c; }
  friend SparsePoly operator*(const Rational& c, SparsePoly a) { return a *= c; }

  void add_term(const Monomial& m, const Rational& c);
  SparsePoly mul_monomial(const Monomial& m, const Rational& c = Rational(1)) const;

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant()
  size_t num_terms() const { return t_.size(); }
  bool operator==(const SparsePoly& o) const { return t_ == o.t_; }

  // sym^e replaced by value^e; A requires even half-exponents everywhere
  SparsePoly substitute(const SymbolId& sym, const Rational& value) const;
  // sym^e replaced by p^e; requires e >= 0 (A additionally even halves)
  SparsePoly substitute(const SymbolId& sym, const SparsePoly& p) const;
  // A^(h/2) replaced by s^h
  SparsePoly substitute_sqrt_A(const Rational& s) const;

  double eval(const NumericBindings& b) const;
  // exact evaluation; sqrt_a must be set if A occurs
  Rational eval_exact(const ExactBindings& b,
                      const std::optional<Rational>& sqrt_a = std::nullopt) const;

  void for_each_term(const std::function<void(const Monomial&, const Rational&)>& fn) const;
  Rational content() const;  // gcd of coefficients, 0 for the zero poly

  std::string str() const;  // canonical text, "0" when empty

 private:
  std::map<Monomial, Rational> t_;
};

SparsePoly pow(const SparsePoly& p, int e);  // e >= 0

}  // namespace aee
