#pragma once

#include "power_series.hpp"
#include "statistic_kind.hpp"

namespace aee {

// Delivered expansion depth; order 6 works but the combinatorial cost jumps.
constexpr int kDefaultMaxOrder = 5;
constexpr int kHardMaxOrder = 6;

// (1/(k! 2^k)) (-1)^k prod_{j=0}^{k-1} (m + 2j)
Rational a_mk(int m, int k);

// E[theta^m] for the one-sample statistic sqrt(n) Xbar / s as a series in
// n^(-1/2) over symbols A, B, mu_x[j]; exact through p = K, remainder
// O(n^(-(K+1)/2)). Raises the moment slot cap to 2K+2 when needed.
HalfPowerSeries sampling_moment_one(int m, int K);

// Two-sample analog over A, B_x, B_y, b_x, b_y, mu_x[j], mu_y[j].
HalfPowerSeries sampling_moment_two(int m, int K);

}  // namespace aee
