#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rational.hpp"

namespace aee {

// Set partitions of {0..slots-1}, visited as lists of block bitmasks ordered
// by each block's least element. Rejecting a candidate block prunes every
// partition that would contain it.
struct PartitionScan {
  int slots = 0;
  int min_blocks = 0;      // subtrees that cannot reach this count are cut
  int max_blocks = 0;      // 0 = unbounded
  int min_block_size = 1;  // also tightens the reachable-block bound
  std::function<bool(uint32_t)> block_admissible;  // null accepts everything
};

void enumerate_partitions(const PartitionScan& scan,
                          const std::function<void(const std::vector<uint32_t>&)>& visit);
void enumerate_partitions(int slots,
                          const std::function<void(const std::vector<uint32_t>&)>& visit);

// Signed Stirling numbers of the first kind, row b: (n)_b = sum_e s(b,e) n^e,
// entries e = 0..b. Reference stays valid across later calls.
const std::vector<Rational>& stirling_first_row(int b);

Rational bell_number(int n);

}  // namespace aee
