#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace aee {

enum class Sample : uint8_t { X, Y };

// Kind order fixes the canonical monomial ordering.
enum class Sym : uint8_t {
  A,        // variance-adjustment constant; the only symbol allowed half-integer powers
  Bx,       // B (one-sample) or B_x
  By,
  bx,       // n/n_x size ratio
  by,
  Sigma2X,  // presentational sigma^2 before the mu_2 substitution
  Sigma2Y,
  MuX,      // central moment mu_{x,j}, j >= 2
  MuY,
  Lambda,   // standardized cumulant lambda_j, j >= 3 (lambda-form output only)
};

struct SymbolId {
  Sym kind;
  int order;  // moment/lambda order; 0 for orderless kinds

  auto operator<=>(const SymbolId&) const = default;
};

SymbolId sym_A();
SymbolId sym_B(Sample s);   // Bx / By
SymbolId sym_b(Sample s);   // bx / by
SymbolId sym_sigma2(Sample s);
SymbolId sym_mu(Sample s, int j);   // j >= 2
SymbolId sym_lambda(int j);         // j >= 3

std::string symbol_name(const SymbolId& s);  // "A", "B_x", "mu_x[3]", "l4", ...

// Product of symbol powers. Exponents are stored in whole units for every
// symbol except A, whose exponent counts halves (exp = 3 means A^(3/2)).
class Monomial {
 public:
  struct Factor {
    SymbolId sym;
    int exp;
    auto operator<=>(const Factor&) const = default;
  };

  Monomial() = default;

  Monomial& mul(const SymbolId& s, int units);  // A gets 2*units halves
  Monomial& mul_A_halves(int halves);
  Monomial mul(const Monomial& o) const;

  bool is_constant() const { return f_.empty(); }
  int exp_of(const SymbolId& s) const;  // units (halves for A); 0 if absent
  const std::vector<Factor>& factors() const { return f_; }

  auto operator<=>(const Monomial&) const = default;

  std::string str() const;  // "A^(-3/2)*B_x*mu_x[3]^2", "1" when constant

 private:
  void insert(const SymbolId& s, int exp_delta);
  std::vector<Factor> f_;  // sorted by sym, no zero exponents
};

}  // namespace aee
