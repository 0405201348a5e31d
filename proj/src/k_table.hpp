#pragma once

#include <map>
#include <utility>
#include <vector>

#include "power_series.hpp"
#include "statistic_kind.hpp"

namespace aee {

// Cumulant coefficient grid: kappa_j = n^(-(j-2)/2) (k_{j,1} + n^(-1) k_{j,2} + ...).
// Every (j,l) slot whose absolute power fits the expansion order is present,
// zeros included; (2,1) holds the symbolic r^2.
class KTable {
 public:
  KTable(Arity arity, int K);

  int order() const { return K_; }
  Arity arity() const { return arity_; }
  static int power_of(int j, int l) { return (j - 2) + 2 * (l - 1); }

  bool has(int j, int l) const;
  const SparsePoly& at(int j, int l) const;  // throws outside the grid
  void set(int j, int l, SparsePoly p);
  SparsePoly r2() const { return at(2, 1); }

  const std::map<std::pair<int, int>, SparsePoly>& entries() const { return e_; }

 private:
  Arity arity_;
  int K_;
  std::map<std::pair<int, int>, SparsePoly> e_;
};

// Reads k_{j,l} off cumulant series (cumulants[i] holds kappa_{i+1}, caps K).
// Any coefficient sitting where the power structure demands zero is a hard
// failure: below n^(-(j-2)/2), at off-parity powers, or k_{1,1} itself.
KTable extract_k_table(const std::vector<HalfPowerSeries>& cumulants, int K, Arity arity);

// Prop moments -> cumulant recursion -> extraction, cached per (arity, K).
const KTable& k_table(Arity arity, int K);

}  // namespace aee
