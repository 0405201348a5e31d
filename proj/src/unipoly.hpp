#pragma once

#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace aee {

// Dense polynomial in one formal variable (u for "it", y for x/r) whose
// coefficients live in C (Rational or SparsePoly). Trailing zeros trimmed.
template <class C>
class UniPoly {
 public:
  UniPoly() = default;

  static UniPoly monomial(int k, C coeff) {
    UniPoly p;
    p.set(k, std::move(coeff));
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  const C& operator[](int k) const {
    static const C zero{};
    if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
    return c_[k];
  }

  void set(int k, C v) {
    if (k < 0) throw std::invalid_argument("unipoly: negative power");
    if (v.is_zero() && k >= static_cast<int>(c_.size())) return;
    if (k >= static_cast<int>(c_.size())) c_.resize(k + 1);
    c_[k] = std::move(v);
    trim();
  }

  void add(int k, const C& v) {
    if (k < 0) throw std::invalid_argument("unipoly: negative power");
    if (k >= static_cast<int>(c_.size())) c_.resize(k + 1);
    c_[k] += v;
    trim();
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.resize(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }

  UniPoly& scale(const Rational& c) {
    for (auto& v : c_) v = v * c;
    trim();
    return *this;
  }

  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<C> c_;
};

inline double eval_unipoly(const UniPoly<Rational>& p, double x) {
  double acc = 0.0;
  for (int k = p.degree(); k >= 0; --k) acc = acc * x + p[k].to_double();
  return acc;
}

}  // namespace aee
