#pragma once

#include <vector>

#include "k_table.hpp"
#include "sparse_poly.hpp"
#include "statistic_kind.hpp"
#include "unipoly.hpp"

namespace aee {

// One correction-polynomial term: coeff * r^(-r_pow) * He_he(x/r).
// he = r_pow - 1 always; both kept for clarity at evaluation sites.
struct QTerm {
  int he = 0;
  int r_pow = 1;
  SparsePoly coeff;
};

// K-term distribution-function correction: F(x) ~ Phi(x/r) + sum_k n^(-k/2) q_k(x;r) phi(x/r),
// q[i] holding q_{i+1} as a Hermite-basis term list over symbolic coefficients.
struct ExpansionSet {
  Arity arity = Arity::OneSample;
  int K = 0;
  SparsePoly r2;
  std::vector<std::vector<QTerm>> q;
};

// Assembles q_1..q_K from a cumulant-coefficient table: exponentiates the
// non-Gaussian part of the cumulant series and maps each u^m onto
// -r^(-m) He_{m-1}(x/r). Structural violations (constant terms, parity
// breaks in the exponential) are hard failures.
ExpansionSet build_q_polynomials(const KTable& kt);

// Derivation pipeline cached per (arity, K).
const ExpansionSet& expansion_set(Arity arity, int K);

// q_k with every symbol bound to a number.
struct NumericQTerm {
  int he = 0;
  int r_pow = 1;
  double coeff = 0.0;
};
struct NumericExpansion {
  int K = 0;
  double r2 = 1.0;
  std::vector<std::vector<NumericQTerm>> q;
};

// Binds all symbolic coefficients; requires every symbol present in the
// bindings and a strictly positive bound r^2.
NumericExpansion bind_expansion(const ExpansionSet& es, const NumericBindings& b);

// Phi(x/r) + sum_{k=1}^{terms} n^(-k/2) q_k(x;r) phi(x/r); 0 <= terms <= K.
double evaluate_cdf(const NumericExpansion& ne, double n, double x, int terms);
double evaluate_cdf(const NumericExpansion& ne, double n, double x);  // terms = K

// One-sample ordinary-t special case: q_k collapse to polynomials in
// y = x/r whose coefficients are rational combinations of standardized
// cumulants l3, l4, ... (biased: y = x since r = 1; unbiased: the same
// polynomials by the rescaling identity q_k(x; r) = q_k(x/r; 1)).
struct LambdaExpansion {
  int K = 0;
  std::vector<UniPoly<SparsePoly>> q;  // q[i] = q_{i+1}(y)
};

// Requires a one-sample set; the conversion itself proves applicability:
// any monomial whose sigma powers fail to cancel is a hard failure.
LambdaExpansion special_case_lambda_form(const ExpansionSet& es);

// Numeric lambda-form evaluation helper: value of q_k(y) given lambda_j values
// (lambda[j] bound via sym_lambda(j) in b).
double eval_lambda_poly(const UniPoly<SparsePoly>& q, const NumericBindings& b, double y);

}  // namespace aee
