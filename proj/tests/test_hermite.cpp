#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hermite.hpp"

using namespace aee;

namespace {
UniPoly<Rational> up(std::initializer_list<std::pair<int, long>> coeffs) {
  UniPoly<Rational> p;
  for (const auto& [k, v] : coeffs) p.set(k, Rational(v));
  return p;
}
}  // namespace

TEST_CASE("low orders match the closed forms") {
  CHECK(hermite(0) == up({{0, 1}}));
  CHECK(hermite(1) == up({{1, 1}}));
  CHECK(hermite(2) == up({{2, 1}, {0, -1}}));
  CHECK(hermite(3) == up({{3, 1}, {1, -3}}));
  CHECK(hermite(4) == up({{4, 1}, {2, -6}, {0, 3}}));
  CHECK(hermite(5) == up({{5, 1}, {3, -10}, {1, 15}}));
  CHECK(hermite(6) == up({{6, 1}, {4, -15}, {2, 45}, {0, -15}}));
  CHECK_THROWS_AS(hermite(-1), std::invalid_argument);
}

TEST_CASE("recurrence holds at high order") {
  for (int m = 1; m <= 20; ++m) {
    UniPoly<Rational> lhs = hermite(m + 1);
    UniPoly<Rational> rhs = UniPoly<Rational>::monomial(1, Rational(1)) * hermite(m);
    UniPoly<Rational> tail = hermite(m - 1);
    tail.scale(Rational(-m));
    rhs += tail;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("parity and leading coefficient") {
  for (int m = 0; m <= 15; ++m) {
    UniPoly<Rational> h = hermite(m);
    CHECK(h.degree() == m);
    CHECK(h[m] == Rational(1));
    for (int k = 0; k <= m; ++k)
      if ((m - k) % 2 == 1) CHECK(h[k].is_zero());
  }
}

TEST_CASE("numeric evaluation agrees with exact coefficients") {
  for (int m = 0; m <= 12; ++m) {
    for (double x : {-2.5, -1.0, 0.0, 0.7, 3.2}) {
      CHECK(hermite_eval(m, x) == doctest::Approx(eval_unipoly(hermite(m), x)).epsilon(1e-12));
    }
  }
  CHECK(hermite_eval(3, 2.0) == doctest::Approx(2.0));  // 8 - 6
  CHECK_THROWS_AS(hermite_eval(-2, 0.0), std::invalid_argument);
}

TEST_CASE("derivative identity He_m' = m He_{m-1}") {
  for (int m = 1; m <= 10; ++m) {
    UniPoly<Rational> h = hermite(m);
    UniPoly<Rational> d;
    for (int k = 1; k <= h.degree(); ++k) d.set(k - 1, h[k] * Rational(k));
    UniPoly<Rational> expect = hermite(m - 1);
    expect.scale(Rational(m));
    CHECK(d == expect);
  }
}
