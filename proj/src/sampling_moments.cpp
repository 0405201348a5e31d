#include "sampling_moments.hpp"

#include <stdexcept>

#include "moment_expectations.hpp"

namespace aee {

Rational a_mk(int m, int k) {
  if (m < 1 || k < 0) throw std::invalid_argument("a_mk: need m >= 1, k >= 0");
  Rational prod(1);
  for (int j = 0; j < k; ++j) prod *= Rational(m + 2 * j);
  if (k % 2 == 1) prod = -prod;
  return prod / (factorial(k) * Rational(2).pow(k));
}

namespace {

void validate_mk(int m, int K) {
  if (K < 0 || K > kHardMaxOrder) throw std::invalid_argument("moments: K out of range");
  if (m < 1 || m > K + 2) throw std::invalid_argument("moments: need 1 <= m <= K+2");
  const int slots = 2 * K + 2;  // worst case m + k over the whole derivation
  if (moment_slot_cap() < slots) set_moment_slot_cap(slots);
}

}  // namespace

HalfPowerSeries sampling_moment_one(int m, int K) {
  validate_mk(m, K);
  const int vcap = (m + K) / 2;
  HalfPowerSeries out(K);

  auto accumulate = [&](int u, int w, const Monomial& factor, const Rational& coef) {
    const MomentPolynomial rp = rho_truncated(u, w, Sample::X, vcap);
    for (const auto& [v, poly] : rp.orders()) {
      const int p = 2 * v - m;
      if (p > K) continue;
      out.add(p, poly.mul_monomial(factor, coef));
    }
  };

  Monomial lead;
  lead.mul_A_halves(-m);
  accumulate(m, 0, lead, Rational(1));
  for (int k = 1; k <= K; ++k) {
    for (int i = 0; 2 * i <= k; ++i) {
      Monomial f;
      f.mul_A_halves(-m - 2 * (k - i));
      f.mul(sym_B(Sample::X), k - i);
      Rational coef = a_mk(m, k - i) * binomial(k - i, i);
      if (i % 2 == 1) coef = -coef;
      accumulate(m + 2 * i, k - 2 * i, f, coef);
    }
  }
  return out;
}

HalfPowerSeries sampling_moment_two(int m, int K) {
  validate_mk(m, K);
  const int vcap = (m + K) / 2;
  HalfPowerSeries out(K);

  auto accumulate = [&](int ux, int wx, int uy, int wy, const Monomial& factor,
                        const Rational& coef) {
    const MomentPolynomial rx = rho_truncated(ux, wx, Sample::X, vcap);
    if (rx.is_zero()) return;
    const MomentPolynomial ry = rho_truncated(uy, wy, Sample::Y, vcap);
    for (const auto& [vx, px] : rx.orders()) {
      for (const auto& [vy, py] : ry.orders()) {
        const int p = 2 * (vx + vy) - m;
        if (p > K) continue;
        Monomial full = factor;
        if (vx > 0) full.mul(sym_b(Sample::X), vx);
        if (vy > 0) full.mul(sym_b(Sample::Y), vy);
        out.add(p, (px * py).mul_monomial(full, coef));
      }
    }
  };

  for (int j = 0; j <= m; ++j) {
    Rational cj = binomial(m, j);
    if (j % 2 == 1) cj = -cj;
    Monomial lead;
    lead.mul_A_halves(-m);
    accumulate(m - j, 0, j, 0, lead, cj);
    for (int k = 1; k <= K; ++k) {
      for (int i = 0; 2 * i <= k; ++i) {
        Rational base = cj * a_mk(m, k - i) * binomial(k - i, i);
        if (i % 2 == 1) base = -base;
        for (int u = 0; u <= k - 2 * i; ++u) {
          for (int v = 0; v <= i; ++v) {
            Monomial f;
            f.mul_A_halves(-m - 2 * (k - i));
            if ((k - i) - (u + v) > 0) f.mul(sym_B(Sample::X), (k - i) - (u + v));
            if (u + v > 0) f.mul(sym_B(Sample::Y), u + v);
            const Rational coef = base * binomial(k - 2 * i, u) * binomial(i, v);
            accumulate(m - j + 2 * (i - v), k - 2 * i - u, j + 2 * v, u, f, coef);
          }
        }
      }
    }
  }
  return out;
}

}  // namespace aee
