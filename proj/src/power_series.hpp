#pragma once

#include <cmath>
#include <map>
#include <stdexcept>

#include "rational.hpp"
#include "sparse_poly.hpp"
#include "unipoly.hpp"

namespace aee {

// Truncated series in n^(-p/2), p integer (negative allowed mid-derivation).
// Terms with p > cap are discarded on insertion; arithmetic requires equal
// caps so truncation semantics stay coherent.
template <class C>
class PowerSeries {
 public:
  explicit PowerSeries(int cap) : cap_(cap) {}

  static PowerSeries one(int cap, const C& unit) {
    PowerSeries s(cap);
    s.add(0, unit);
    return s;
  }

  int cap() const { return cap_; }
  const std::map<int, C>& terms() const { return c_; }

  C at(int p) const {
    auto it = c_.find(p);
    return it == c_.end() ? C{} : it->second;
  }

  void add(int p, const C& v) {
    if (p > cap_ || v.is_zero()) return;
    auto [it, fresh] = c_.emplace(p, v);
    if (!fresh) {
      it->second += v;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  void set(int p, C v) {
    c_.erase(p);
    add(p, std::move(v));
  }

  PowerSeries& operator+=(const PowerSeries& o) {
    check_cap(o);
    for (const auto& [p, v] : o.c_) add(p, v);
    return *this;
  }

  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }

  PowerSeries& operator-=(const PowerSeries& o) { return *this += o.scaled(Rational(-1)); }

  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    a.check_cap(b);
    PowerSeries r(a.cap_);
    for (const auto& [pa, va] : a.c_)
      for (const auto& [pb, vb] : b.c_) {
        if (pa + pb > a.cap_) continue;
        r.add(pa + pb, va * vb);
      }
    return r;
  }

  PowerSeries scaled(const Rational& c) const {
    PowerSeries r(cap_);
    for (const auto& [p, v] : c_) {
      C s = v;
      s = scale_coeff(s, c);
      r.add(p, s);
    }
    return r;
  }

  // multiply every power index by n^(-delta/2); entries past cap drop
  PowerSeries shifted(int delta) const {
    PowerSeries r(cap_);
    for (const auto& [p, v] : c_) r.add(p + delta, v);
    return r;
  }

  int min_p() const { return c_.empty() ? cap_ + 1 : c_.begin()->first; }
  bool is_zero() const { return c_.empty(); }

  bool operator==(const PowerSeries& o) const { return cap_ == o.cap_ && c_ == o.c_; }

 private:
  void check_cap(const PowerSeries& o) const {
    if (cap_ != o.cap_) throw std::invalid_argument("series: mismatched caps");
  }
  static C scale_coeff(const C& v, const Rational& c);
  int cap_;
  std::map<int, C> c_;
};

using HalfPowerSeries = PowerSeries<SparsePoly>;
using UniPolySeries = PowerSeries<UniPoly<SparsePoly>>;

template <>
inline SparsePoly PowerSeries<SparsePoly>::scale_coeff(const SparsePoly& v, const Rational& c) {
  return v * c;
}

template <>
inline UniPoly<SparsePoly> PowerSeries<UniPoly<SparsePoly>>::scale_coeff(
    const UniPoly<SparsePoly>& v, const Rational& c) {
  UniPoly<SparsePoly> r = v;
  r.scale(c);
  return r;
}

// exp of a series with no constant or negative-order part, truncated at cap
template <class C>
PowerSeries<C> series_exp(const PowerSeries<C>& s, const C& unit) {
  if (s.min_p() <= 0 && !s.is_zero())
    throw std::invalid_argument("series: exp needs strictly positive orders");
  PowerSeries<C> result = PowerSeries<C>::one(s.cap(), unit);
  PowerSeries<C> power = PowerSeries<C>::one(s.cap(), unit);
  for (int m = 1; m <= s.cap(); ++m) {
    power = power * s;
    if (power.is_zero()) break;
    result += power.scaled(factorial(m).inverse());
  }
  return result;
}

// Collapses the series at a concrete sample size: sum of at(p) * n^(-p/2).
inline double eval_series(const HalfPowerSeries& s, const NumericBindings& b, double n) {
  double total = 0.0;
  for (const auto& [p, poly] : s.terms()) total += poly.eval(b) * std::pow(n, -0.5 * p);
  return total;
}

inline HalfPowerSeries series_mul(const HalfPowerSeries& a, const HalfPowerSeries& b) {
  return a * b;
}

}  // namespace aee
