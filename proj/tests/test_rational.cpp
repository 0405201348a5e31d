#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "rational.hpp"

using aee::Rational;

TEST_CASE("construction and canonical form") {
  CHECK(Rational().is_zero());
  CHECK(Rational(7).is_integer());
  CHECK(Rational(4, 6) == Rational(2, 3));
  CHECK(Rational(-4, 6) == Rational(-2, 3));
  CHECK(Rational(4, -6) == Rational(-2, 3));  // sign moves to numerator
  CHECK(Rational(0, 5).is_zero());
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("parse") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::parse("12") == Rational(12));
  CHECK(Rational::parse("-6/4") == Rational(-3, 2));
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
}

TEST_CASE("arithmetic") {
  Rational a(1, 6), b(1, 10);
  CHECK(a + b == Rational(4, 15));
  CHECK(a - b == Rational(1, 15));
  CHECK(a * b == Rational(1, 60));
  CHECK(a / b == Rational(5, 3));
  CHECK(-a == Rational(-1, 6));
  CHECK_THROWS_AS(a / Rational(0), std::invalid_argument);

  Rational acc;
  for (int i = 1; i <= 10; ++i) acc += Rational(1, i);
  CHECK(acc == Rational(7381, 2520));  // harmonic H_10
}

TEST_CASE("ordering") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(2, 4) <= Rational(1, 2));
  CHECK(Rational(5) > Rational(9, 2));
}

TEST_CASE("pow, inverse, abs, sign") {
  CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  CHECK(Rational(5).pow(0) == Rational(1));
  CHECK(Rational(0).pow(4).is_zero());
  CHECK_THROWS_AS(Rational(0).pow(-1), std::invalid_argument);
  CHECK(Rational(-3, 7).inverse() == Rational(-7, 3));
  CHECK(Rational(-3, 7).abs() == Rational(3, 7));
  CHECK(Rational(-3, 7).sign() == -1);
  CHECK(Rational(0).sign() == 0);
  CHECK(Rational(3, 7).sign() == 1);
}

TEST_CASE("conversions and text") {
  CHECK(Rational(1, 8).to_double() == doctest::Approx(0.125));
  CHECK(Rational(-22).to_long() == -22);
  CHECK_THROWS_AS(Rational(1, 2).to_long(), std::invalid_argument);
  CHECK(Rational(22, 7).str() == "22/7");
  CHECK(Rational(-5).str() == "-5");
  CHECK(Rational(3, 4).num_str() == "3");
  CHECK(Rational(3, 4).den_str() == "4");
  std::ostringstream os;
  os << Rational(-1, 3);
  CHECK(os.str() == "-1/3");
}

TEST_CASE("big values stay exact") {
  // 100! / 98! = 9900 without overflow
  CHECK(aee::factorial(100) / aee::factorial(98) == Rational(9900));
  Rational p = Rational(10).pow(30);
  CHECK((p + Rational(1) - p) == Rational(1));
}

TEST_CASE("gcd") {
  using aee::rational_gcd;
  CHECK(rational_gcd(Rational(4, 9), Rational(2, 3)) == Rational(2, 9));
  CHECK(rational_gcd(Rational(-1, 6), Rational(1, 4)) == Rational(1, 12));
  CHECK(rational_gcd(Rational(0), Rational(-5, 7)) == Rational(5, 7));
  CHECK(rational_gcd(Rational(0), Rational(0)).is_zero());
}

TEST_CASE("factorial and binomial") {
  CHECK(aee::factorial(0) == Rational(1));
  CHECK(aee::factorial(6) == Rational(720));
  CHECK(aee::binomial(6, 2) == Rational(15));
  CHECK(aee::binomial(6, 0) == Rational(1));
  CHECK(aee::binomial(6, 7).is_zero());
  CHECK(aee::binomial(6, -1).is_zero());
  CHECK(aee::binomial(52, 5) == Rational(2598960));
}
