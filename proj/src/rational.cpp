#include "rational.hpp"

#include <ostream>
#include <stdexcept>

namespace aee {

Rational::Rational(long n, long d) {
  if (d == 0) throw std::invalid_argument("rational: zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("rational: cannot parse '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("rational: zero denominator");
  q.canonicalize();
  return Rational(std::move(q));
}

Rational Rational::operator-() const { return Rational(mpq_class(-v_)); }

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::invalid_argument("rational: division by zero");
  v_ /= o.v_;
  return *this;
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  int c = cmp(v_, o.v_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(v_))); }

Rational Rational::inverse() const {
  if (is_zero()) throw std::invalid_argument("rational: inverse of zero");
  return Rational(mpq_class(1) / v_);
}

Rational Rational::pow(long e) const {
  if (e == 0) return Rational(1);
  bool neg = e < 0;
  auto k = static_cast<unsigned long>(neg ? -e : e);
  if (neg && is_zero()) throw std::invalid_argument("rational: negative power of zero");
  mpq_class r;
  mpz_pow_ui(r.get_num_mpz_t(), v_.get_num_mpz_t(), k);
  mpz_pow_ui(r.get_den_mpz_t(), v_.get_den_mpz_t(), k);
  r.canonicalize();
  Rational out{std::move(r)};
  return neg ? out.inverse() : out;
}

long Rational::to_long() const {
  if (!is_integer()) throw std::invalid_argument("rational: not an integer");
  if (!v_.get_num().fits_slong_p()) throw std::overflow_error("rational: does not fit long");
  return v_.get_num().get_si();
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational rational_gcd(const Rational& a, const Rational& b) {
  if (a.is_zero()) return b.abs();
  if (b.is_zero()) return a.abs();
  mpz_class g, l;
  mpz_gcd(g.get_mpz_t(), a.v_.get_num_mpz_t(), b.v_.get_num_mpz_t());
  mpz_lcm(l.get_mpz_t(), a.v_.get_den_mpz_t(), b.v_.get_den_mpz_t());
  return Rational(mpq_class(g, l));
}

Rational factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(mpq_class(f));
}

Rational binomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(mpq_class(b));
}

}  // namespace aee
