#include "hermite.hpp"

#include <stdexcept>

namespace aee {

UniPoly<Rational> hermite(int m) {
  if (m < 0) throw std::invalid_argument("hermite: negative index");
  UniPoly<Rational> prev = UniPoly<Rational>::monomial(0, Rational(1));
  if (m == 0) return prev;
  UniPoly<Rational> cur = UniPoly<Rational>::monomial(1, Rational(1));
  const UniPoly<Rational> x = cur;
  for (int k = 1; k < m; ++k) {
    UniPoly<Rational> next = x * cur;
    UniPoly<Rational> tail = prev;
    tail.scale(Rational(-k));
    next += tail;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double hermite_eval(int m, double x) {
  if (m < 0) throw std::invalid_argument("hermite: negative index");
  double prev = 1.0;
  if (m == 0) return prev;
  double cur = x;
  for (int k = 1; k < m; ++k) {
    double next = x * cur - static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace aee
