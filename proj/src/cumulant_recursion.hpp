#pragma once

#include <cmath>
#include <vector>

#include "power_series.hpp"
#include "rational.hpp"

namespace aee {

namespace detail {
inline Rational scale_by(const Rational& v, const Rational& c) { return v * c; }
inline double scale_by(double v, const Rational& c) { return v * c.to_double(); }
inline HalfPowerSeries scale_by(const HalfPowerSeries& v, const Rational& c) {
  return v.scaled(c);
}
inline SparsePoly scale_by(const SparsePoly& v, const Rational& c) { return v * c; }
inline Rational pow_of(const Rational& v, int e) { return v.pow(e); }
inline double pow_of(double v, int e) { return std::pow(v, e); }
}  // namespace detail

// kappa_M = mu'_M - sum_{i=1}^{M-1} C(M-1,i-1) kappa_i mu'_{M-i}.
// Input raw[i] holds mu'_{i+1}; output[i] holds kappa_{i+1}.
template <class T>
std::vector<T> raw_to_cumulants(const std::vector<T>& raw) {
  std::vector<T> kappa;
  kappa.reserve(raw.size());
  for (std::size_t m = 1; m <= raw.size(); ++m) {
    T k = raw[m - 1];
    for (std::size_t i = 1; i < m; ++i)
      k -= detail::scale_by(kappa[i - 1] * raw[m - i - 1], binomial(m - 1, i - 1));
    kappa.push_back(std::move(k));
  }
  return kappa;
}

// mu'_M = sum_{i=1}^{M} C(M-1,i-1) kappa_i mu'_{M-i}, mu'_0 = 1.
template <class T>
std::vector<T> cumulants_to_raw(const std::vector<T>& kappa) {
  std::vector<T> raw;
  raw.reserve(kappa.size());
  for (std::size_t m = 1; m <= kappa.size(); ++m) {
    T v = kappa[m - 1];
    for (std::size_t i = 1; i < m; ++i)
      v += detail::scale_by(kappa[i - 1] * raw[m - i - 1], binomial(m - 1, i - 1));
    raw.push_back(std::move(v));
  }
  return raw;
}

// mu_m = sum_j C(m,j) mu'_j (-mu'_1)^(m-j); input mu'_1..mu'_M, output mu_1..mu_M.
template <class T>
std::vector<T> raw_to_central(const std::vector<T>& raw) {
  std::vector<T> central;
  central.reserve(raw.size());
  for (std::size_t m = 1; m <= raw.size(); ++m) {
    T acc = detail::scale_by(detail::pow_of(raw[0], static_cast<int>(m)),
                             (m % 2 == 0) ? Rational(1) : Rational(-1));
    for (std::size_t j = 1; j <= m; ++j) {
      Rational c = binomial(m, j);
      if ((m - j) % 2 == 1) c = -c;
      acc += detail::scale_by(raw[j - 1] * detail::pow_of(raw[0], static_cast<int>(m - j)), c);
    }
    central.push_back(std::move(acc));
  }
  return central;
}

// mu'_m = sum_j C(m,j) mu_j mean^(m-j) with mu_0 = 1, mu_1 = 0.
template <class T>
std::vector<T> central_to_raw(const std::vector<T>& central, const T& mean) {
  std::vector<T> raw;
  raw.reserve(central.size());
  for (std::size_t m = 1; m <= central.size(); ++m) {
    T acc = detail::pow_of(mean, static_cast<int>(m));
    for (std::size_t j = 2; j <= m; ++j)
      acc += detail::scale_by(central[j - 1] * detail::pow_of(mean, static_cast<int>(m - j)),
                              binomial(m, j));
    raw.push_back(std::move(acc));
  }
  return raw;
}

// Standardized cumulants lambda_3..lambda_M from central moments mu_2..mu_M
// (central[i] holds mu_{i+2}): lambda_j = kappa_j / mu_2^(j/2).
std::vector<double> standardized_cumulants(const std::vector<double>& central);

}  // namespace aee
