#pragma once

#include <map>
#include <string>

#include "sparse_poly.hpp"

namespace aee {

// Polynomial in 1/n: sum over v of coeff(v) * n^(-v).
class MomentPolynomial {
 public:
  void add(int v, const SparsePoly& p);
  SparsePoly at(int v) const;
  const std::map<int, SparsePoly>& orders() const { return by_order_; }
  bool is_zero() const { return by_order_.empty(); }
  int max_order() const { return by_order_.empty() ? -1 : by_order_.rbegin()->first; }
  MomentPolynomial truncated(int vcap) const;

  Rational eval_exact(const ExactBindings& b, const Rational& n) const;
  double eval(const NumericBindings& b, double n) const;

  bool operator==(const MomentPolynomial& o) const { return by_order_ == o.by_order_; }
  std::string str() const;

 private:
  std::map<int, SparsePoly> by_order_;
};

// Slot budget for the partition enumeration, shared by nu and rho.
int moment_slot_cap();
void set_moment_slot_cap(int cap);  // 1..20

// nu(k,l) = E[Xbar^k (X2bar)^l] over mean-zero X: raw block moments, mu_1 = 0.
MomentPolynomial nu(int k, int l, Sample s);

// rho(i,j) = E[Xbar^i Xbars^j] where Xbars averages X^2 - sigma^2; canonical
// form has sigma^2 folded into mu_2.
MomentPolynomial rho(int i, int j, Sample s);

// Orders v > vcap dropped before any arithmetic; the enumeration prunes
// partitions with too few blocks to reach vcap.
MomentPolynomial rho_truncated(int i, int j, Sample s, int vcap);

}  // namespace aee
