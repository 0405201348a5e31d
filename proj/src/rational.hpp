#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>

namespace aee {

// Exact rational on arbitrary-precision integers. Canonical at all times:
// gcd(num, den) == 1 and den > 0.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit on purpose, integer literals abound
  Rational(long n, long d);
  static Rational parse(const std::string& s);  // "p", "p/q", optional leading '-'

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);  // throws on division by zero

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  bool operator==(const Rational& o) const { return v_ == o.v_; }
  std::strong_ordering operator<=>(const Rational& o) const;

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  Rational abs() const;
  Rational inverse() const;
  Rational pow(long e) const;  // negative e allowed, 0^negative throws

  double to_double() const { return v_.get_d(); }
  long to_long() const;  // integer values that fit in long only

  std::string str() const;      // "p" or "p/q"
  std::string num_str() const { return v_.get_num().get_str(); }
  std::string den_str() const { return v_.get_den().get_str(); }

  friend Rational rational_gcd(const Rational& a, const Rational& b);
  friend Rational factorial(long n);
  friend Rational binomial(long n, long k);

 private:
  explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// gcd of |a|,|b| as rationals: gcd of numerators over lcm of denominators.
// gcd(0, x) == |x|.
Rational rational_gcd(const Rational& a, const Rational& b);

Rational factorial(long n);
Rational binomial(long n, long k);  // 0 outside 0 <= k <= n

}  // namespace aee
