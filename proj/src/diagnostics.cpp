#include "diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace aee {

namespace {

constexpr double kTol = 1e-12;

std::vector<double> grid_points(const GridSpec& g) {
  if (!(g.step > 0.0)) throw std::invalid_argument("tail scan: step must be positive");
  if (!(g.lo < 0.0 && g.hi > 0.0)) throw std::invalid_argument("tail scan: grid must straddle 0");
  std::vector<double> xs;
  long count = static_cast<long>(std::floor((g.hi - g.lo) / g.step + 1e-9)) + 1;
  xs.reserve(count);
  for (long i = 0; i < count; ++i) xs.push_back(g.lo + i * g.step);
  return xs;
}

// One side of the grid in ascending order.
std::vector<double> side_points(const std::vector<double>& xs, Side side) {
  std::vector<double> out;
  for (double x : xs) {
    if (side == Side::Left ? x <= 0.0 : x >= 0.0) out.push_back(x);
  }
  return out;
}

TermUsability scan_side(const NumericExpansion& ne, double n, const std::vector<double>& xs,
                        int terms) {
  TermUsability u;
  double prev = 0.0;
  bool have_prev = false;
  for (double x : xs) {
    double v = evaluate_cdf(ne, n, x, terms);
    if (v < -kTol || v > 1.0 + kTol) {
      u.usable = false;
      u.violation_x = x;
      return u;
    }
    if (have_prev && v < prev - kTol) {
      u.usable = false;
      u.violation_x = x;
      return u;
    }
    prev = v;
    have_prev = true;
  }
  return u;
}

}  // namespace

GridSpec default_grid(const NumericExpansion& ne) {
  double r = std::sqrt(ne.r2);
  return GridSpec{-6.0 * r, 6.0 * r, 0.01};
}

TailReport tail_scan(const NumericExpansion& ne, double n, const GridSpec& grid) {
  if (!(n > 0.0)) throw std::domain_error("tail scan: n must be positive");
  std::vector<double> xs = grid_points(grid);
  std::vector<double> lxs = side_points(xs, Side::Left);
  std::vector<double> rxs = side_points(xs, Side::Right);
  if (lxs.empty() || rxs.empty()) throw std::invalid_argument("tail scan: empty side");

  TailReport rep;
  rep.n = n;
  rep.grid = grid;
  for (int k = 0; k <= ne.K; ++k) {
    rep.left.push_back(scan_side(ne, n, lxs, k));
    rep.right.push_back(scan_side(ne, n, rxs, k));
  }
  rep.usable_left = usable_order(rep, Side::Left);
  rep.usable_right = usable_order(rep, Side::Right);
  return rep;
}

TailReport tail_scan(const NumericExpansion& ne, double n) {
  return tail_scan(ne, n, default_grid(ne));
}

// Prefix rule: an order counts only if every lower order is usable too.
int usable_order(const TailReport& report, Side side) {
  const std::vector<TermUsability>& flags = side == Side::Left ? report.left : report.right;
  int k = 0;
  while (k + 1 < static_cast<int>(flags.size()) && flags[k + 1].usable) ++k;
  return k;
}

double invert_cdf(const NumericExpansion& ne, double n, double p, Side side, int terms,
                  const GridSpec& grid) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("invert: p outside (0,1)");
  TailReport rep = tail_scan(ne, n, grid);
  const std::vector<TermUsability>& flags = side == Side::Left ? rep.left : rep.right;
  if (terms < 0 || terms >= static_cast<int>(flags.size()))
    throw std::invalid_argument("invert: terms outside [0, K]");
  if (!flags[terms].usable)
    throw std::invalid_argument("invert: truncation not usable on the requested side");

  double lo = side == Side::Left ? grid.lo : 0.0;
  double hi = side == Side::Left ? 0.0 : grid.hi;
  double flo = evaluate_cdf(ne, n, lo, terms);
  double fhi = evaluate_cdf(ne, n, hi, terms);
  if (p < flo - 1e-10 || p > fhi + 1e-10)
    throw std::domain_error("invert: p not attained on the usable range");

  for (int iter = 0; iter < 200; ++iter) {
    double mid = 0.5 * (lo + hi);
    double f = evaluate_cdf(ne, n, mid, terms);
    if (std::fabs(f - p) <= 1e-10) return mid;
    if (f < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double invert_cdf(const NumericExpansion& ne, double n, double p, Side side, int terms) {
  return invert_cdf(ne, n, p, side, terms, default_grid(ne));
}

}  // namespace aee
