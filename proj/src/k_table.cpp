#include "k_table.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

#include "cumulant_recursion.hpp"
#include "sampling_moments.hpp"

namespace aee {

KTable::KTable(Arity arity, int K) : arity_(arity), K_(K) {
  if (K < 0 || K > kHardMaxOrder) {
    throw std::invalid_argument("k-table: order out of range");
  }
  for (int j = 1; j <= K + 2; ++j) {
    for (int l = 1; power_of(j, l) <= K; ++l) {
      e_.emplace(std::make_pair(j, l), SparsePoly());
    }
  }
}

bool KTable::has(int j, int l) const { return e_.count({j, l}) != 0; }

const SparsePoly& KTable::at(int j, int l) const {
  auto it = e_.find({j, l});
  if (it == e_.end()) {
    std::ostringstream os;
    os << "k-table: (" << j << "," << l << ") outside order-" << K_ << " grid";
    throw std::out_of_range(os.str());
  }
  return it->second;
}

void KTable::set(int j, int l, SparsePoly p) {
  auto it = e_.find({j, l});
  if (it == e_.end()) {
    std::ostringstream os;
    os << "k-table: (" << j << "," << l << ") outside order-" << K_ << " grid";
    throw std::out_of_range(os.str());
  }
  it->second = std::move(p);
}

KTable extract_k_table(const std::vector<HalfPowerSeries>& cumulants, int K, Arity arity) {
  KTable out(arity, K);
  if (static_cast<int>(cumulants.size()) < K + 2) {
    throw std::invalid_argument("k-table: need cumulants through order K+2");
  }
  for (int j = 1; j <= K + 2; ++j) {
    const HalfPowerSeries& kappa = cumulants[j - 1];
    for (const auto& [p, poly] : kappa.terms()) {
      if (poly.is_zero()) continue;
      std::ostringstream os;
      if (p < j - 2) {
        os << "k-table: kappa_" << j << " has a term at n^(-" << p
           << "/2) below its leading order " << (j - 2);
        throw std::logic_error(os.str());
      }
      if (((p - (j - 2)) % 2) != 0) {
        os << "k-table: kappa_" << j << " has an off-parity term at n^(-" << p << "/2)";
        throw std::logic_error(os.str());
      }
      int l = (p - (j - 2)) / 2 + 1;
      if (j == 1 && l == 1) {
        throw std::logic_error("k-table: k_{1,1} must vanish, got a nonzero coefficient");
      }
      if (p > K) continue;
      out.set(j, l, poly);
    }
  }
  return out;
}

const KTable& k_table(Arity arity, int K) {
  static std::map<std::pair<int, int>, KTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<int>(arity), K);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<HalfPowerSeries> raw;
  raw.reserve(K + 2);
  for (int m = 1; m <= K + 2; ++m) {
    raw.push_back(arity == Arity::OneSample ? sampling_moment_one(m, K)
                                            : sampling_moment_two(m, K));
  }
  std::vector<HalfPowerSeries> kappa = raw_to_cumulants(raw);
  auto [pos, inserted] = cache.emplace(key, extract_k_table(kappa, K, arity));
  (void)inserted;
  return pos->second;
}

}  // namespace aee
