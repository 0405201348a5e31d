#include "moment_expectations.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "partitions.hpp"

namespace aee {

void MomentPolynomial::add(int v, const SparsePoly& p) {
  if (p.is_zero()) return;
  auto [it, fresh] = by_order_.emplace(v, p);
  if (!fresh) {
    it->second += p;
    if (it->second.is_zero()) by_order_.erase(it);
  }
}

SparsePoly MomentPolynomial::at(int v) const {
  auto it = by_order_.find(v);
  return it == by_order_.end() ? SparsePoly() : it->second;
}

MomentPolynomial MomentPolynomial::truncated(int vcap) const {
  MomentPolynomial r;
  for (const auto& [v, p] : by_order_) {
    if (v > vcap) break;
    r.by_order_.emplace(v, p);
  }
  return r;
}

Rational MomentPolynomial::eval_exact(const ExactBindings& b, const Rational& n) const {
  Rational total;
  for (const auto& [v, p] : by_order_) total += p.eval_exact(b) * n.pow(-v);
  return total;
}

double MomentPolynomial::eval(const NumericBindings& b, double n) const {
  double total = 0.0;
  for (const auto& [v, p] : by_order_) total += p.eval(b) * std::pow(n, -v);
  return total;
}

std::string MomentPolynomial::str() const {
  if (by_order_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, p] : by_order_) {
    if (!first) os << " + ";
    first = false;
    if (v == 0) {
      os << p.str();
    } else {
      os << "(" << p.str() << ")*n^(-" << v << ")";
    }
  }
  return os.str();
}

namespace {

std::atomic<int> g_slot_cap{12};

// E[X^a (X^2 - sigma^2)^c] for centered, E[X^(a+2c)] raw; mu_1 = 0 throughout.
SparsePoly block_expectation(int a, int c, bool centered, Sample s) {
  if (!centered) {
    const int order = a + 2 * c;
    if (order == 1) return SparsePoly();
    return SparsePoly::symbol(sym_mu(s, order));
  }
  SparsePoly acc;
  for (int d = 0; d <= c; ++d) {
    const int order = a + 2 * d;
    if (order == 1) continue;
    Rational coef = binomial(c, d);
    if ((c - d) % 2 == 1) coef = -coef;
    Monomial m;
    if (c - d > 0) m.mul(sym_sigma2(s), c - d);
    if (order >= 2) m.mul(sym_mu(s, order), 1);
    acc.add_term(m, coef);
  }
  return acc;
}

struct MemoKey {
  int c1;
  int c2;
  int sample;
  bool centered;
  int vcap;
  auto operator<=>(const MemoKey&) const = default;
};

MomentPolynomial compute(int count1, int count2, bool centered, Sample s, int vcap) {
  const int slots = count1 + count2;
  const uint32_t mask1 = (count1 > 0) ? ((1u << count1) - 1u) : 0u;

  // Slots of equal weight are interchangeable: group leaves by the multiset
  // of block types (a = weight-1 members, c = weight-2 members).
  std::map<std::vector<std::pair<int, int>>, long long> leaf_counts;

  PartitionScan scan;
  scan.slots = slots;
  scan.min_blocks = slots - vcap > 0 ? slots - vcap : 0;
  scan.min_block_size = centered ? 2 : 1;
  scan.block_admissible = [&](uint32_t block) {
    if (std::popcount(block) != 1) return true;
    // weight-1 singleton: mu_1 = 0; centered weight-2 singleton: mu_2 - sigma^2
    return !centered && (block & mask1) == 0;
  };
  enumerate_partitions(scan, [&](const std::vector<uint32_t>& blocks) {
    std::vector<std::pair<int, int>> key;
    key.reserve(blocks.size());
    for (uint32_t b : blocks)
      key.emplace_back(std::popcount(b & mask1), std::popcount(b & ~mask1));
    std::sort(key.begin(), key.end());
    ++leaf_counts[key];
  });

  MomentPolynomial result;
  for (const auto& [key, count] : leaf_counts) {
    SparsePoly prod = SparsePoly::constant(Rational(1));
    for (const auto& [a, c] : key) prod = prod * block_expectation(a, c, centered, s);
    if (prod.is_zero()) continue;
    const int b = static_cast<int>(key.size());
    const std::vector<Rational>& str_row = stirling_first_row(b);
    for (int e = 0; e <= b; ++e) {
      if (str_row[e].is_zero()) continue;
      const int v = slots - e;
      if (v > vcap) continue;
      result.add(v, prod * (str_row[e] * Rational(count)));
    }
  }

  if (centered) {
    MomentPolynomial folded;
    for (const auto& [v, p] : result.orders())
      folded.add(v, p.substitute(sym_sigma2(s), SparsePoly::symbol(sym_mu(s, 2))));
    return folded;
  }
  return result;
}

MomentPolynomial memoized(int count1, int count2, bool centered, Sample s, int vcap) {
  if (count1 < 0 || count2 < 0) throw std::invalid_argument("moments: negative exponent");
  const int slots = count1 + count2;
  const int cap = moment_slot_cap();
  if (slots > cap) {
    std::ostringstream os;
    os << "moments: " << slots << " slots exceeds cap " << cap << " (Bell(" << slots
       << ") = " << bell_number(slots).str() << " partitions)";
    throw std::invalid_argument(os.str());
  }
  if (vcap > slots) vcap = slots;  // v never exceeds slots; normalizes memo keys

  static std::mutex mu;
  static std::map<MemoKey, MomentPolynomial> memo;
  const MemoKey key{count1, count2, static_cast<int>(s), centered, vcap};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  MomentPolynomial val = compute(count1, count2, centered, s, vcap);
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(key, std::move(val)).first->second;
}

}  // namespace

int moment_slot_cap() { return g_slot_cap.load(); }

void set_moment_slot_cap(int cap) {
  if (cap < 1 || cap > 20) throw std::invalid_argument("moments: cap must be 1..20");
  g_slot_cap.store(cap);
}

MomentPolynomial nu(int k, int l, Sample s) {
  return memoized(k, l, false, s, std::numeric_limits<int>::max());
}

MomentPolynomial rho(int i, int j, Sample s) {
  return memoized(i, j, true, s, std::numeric_limits<int>::max());
}

MomentPolynomial rho_truncated(int i, int j, Sample s, int vcap) {
  if (vcap < 0) throw std::invalid_argument("moments: negative order cap");
  return memoized(i, j, true, s, vcap);
}

}  // namespace aee
