#pragma once

#include <optional>
#include <vector>

#include "expansion.hpp"

namespace aee {

enum class Side { Left, Right };

// Evaluation grid for tail scans; must straddle zero.
struct GridSpec {
  double lo;
  double hi;
  double step;
};

// [-6r, 6r] with step 0.01.
GridSpec default_grid(const NumericExpansion& ne);

struct TermUsability {
  bool usable = true;
  std::optional<double> violation_x;  // first grid point in violation
};

// Per-side usability of each truncation 0..K plus the prefix-rule order:
// the largest k whose truncations 0..k are all usable on that side.
struct TailReport {
  double n = 0.0;
  GridSpec grid{};
  std::vector<TermUsability> left;
  std::vector<TermUsability> right;
  int usable_left = 0;
  int usable_right = 0;
};

// Scans every truncation on the grid. A side becomes unusable at the first
// violation of monotone nondecrease (tolerance 1e-12) or of the [0, 1] range;
// the left side covers grid points <= 0, the right side points >= 0.
TailReport tail_scan(const NumericExpansion& ne, double n, const GridSpec& grid);
TailReport tail_scan(const NumericExpansion& ne, double n);

int usable_order(const TailReport& report, Side side);

// Bisection solve of F(x) = p on the requested side's grid interval, to
// |F(x) - p| <= 1e-10. The truncation must be usable on that side and p
// attainable on the interval.
double invert_cdf(const NumericExpansion& ne, double n, double p, Side side, int terms,
                  const GridSpec& grid);
double invert_cdf(const NumericExpansion& ne, double n, double p, Side side, int terms);

}  // namespace aee
