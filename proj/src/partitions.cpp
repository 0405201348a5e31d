#include "partitions.hpp"

#include <bit>
#include <deque>
#include <mutex>
#include <stdexcept>

namespace aee {

namespace {

constexpr int kMaxSlots = 20;

void recurse(uint32_t remaining, const PartitionScan& scan, std::vector<uint32_t>& blocks,
             const std::function<void(const std::vector<uint32_t>&)>& visit) {
  if (remaining == 0) {
    if (static_cast<int>(blocks.size()) >= scan.min_blocks) visit(blocks);
    return;
  }
  const int used = static_cast<int>(blocks.size());
  if (scan.max_blocks > 0 && used >= scan.max_blocks) return;
  const int mbs = scan.min_block_size > 1 ? scan.min_block_size : 1;
  const uint32_t low = remaining & (~remaining + 1u);
  const uint32_t others = remaining ^ low;
  uint32_t sub = others;
  while (true) {
    const uint32_t block = low | sub;
    const int size = std::popcount(block);
    const int rest = std::popcount(others ^ sub);
    // every future block needs at least mbs slots
    const bool reachable = used + 1 + rest / mbs >= scan.min_blocks;
    if (reachable && size >= mbs && (!scan.block_admissible || scan.block_admissible(block))) {
      blocks.push_back(block);
      recurse(remaining ^ block, scan, blocks, visit);
      blocks.pop_back();
    }
    if (sub == 0) break;
    sub = (sub - 1) & others;
  }
}

}  // namespace

void enumerate_partitions(const PartitionScan& scan,
                          const std::function<void(const std::vector<uint32_t>&)>& visit) {
  if (scan.slots < 0 || scan.slots > kMaxSlots)
    throw std::invalid_argument("partitions: slot count out of range");
  std::vector<uint32_t> blocks;
  if (scan.slots == 0) {
    if (scan.min_blocks <= 0) visit(blocks);
    return;
  }
  recurse((1u << scan.slots) - 1u, scan, blocks, visit);
}

void enumerate_partitions(int slots,
                          const std::function<void(const std::vector<uint32_t>&)>& visit) {
  PartitionScan scan;
  scan.slots = slots;
  enumerate_partitions(scan, visit);
}

const std::vector<Rational>& stirling_first_row(int b) {
  if (b < 0) throw std::invalid_argument("stirling: negative row");
  static std::mutex mu;
  static std::deque<std::vector<Rational>> rows;  // deque: refs survive growth
  std::lock_guard<std::mutex> lock(mu);
  if (rows.empty()) rows.push_back({Rational(1)});
  while (static_cast<int>(rows.size()) <= b) {
    const std::vector<Rational>& prev = rows.back();
    const long k = static_cast<long>(rows.size()) - 1;  // s(k+1,e) = s(k,e-1) - k*s(k,e)
    std::vector<Rational> next(prev.size() + 1);
    for (size_t e = 0; e < next.size(); ++e) {
      Rational v;
      if (e > 0) v += prev[e - 1];
      if (e < prev.size()) v -= Rational(k) * prev[e];
      next[e] = v;
    }
    rows.push_back(std::move(next));
  }
  return rows[b];
}

Rational bell_number(int n) {
  if (n < 0) throw std::invalid_argument("bell: negative index");
  // Bell triangle
  std::vector<Rational> row = {Rational(1)};
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> next;
    next.reserve(row.size() + 1);
    next.push_back(row.back());
    for (const Rational& v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

}  // namespace aee
