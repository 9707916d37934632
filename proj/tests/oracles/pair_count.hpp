#pragma once

// Rand index by its definition: walk every pair of observations and count
// the ones treated the same way by both partitions. O(T^2), no algebra.

#include "msfuzzy/types.hpp"

namespace oracle {

inline double rand_by_pair_counting(const msfuzzy::StatePath& a,
                                    const msfuzzy::StatePath& b) {
  const std::size_t T = a.size();
  std::size_t agree = 0, pairs = 0;
  for (std::size_t i = 0; i < T; ++i) {
    for (std::size_t j = i + 1; j < T; ++j) {
      const bool together_a = a[i] == a[j];
      const bool together_b = b[i] == b[j];
      agree += together_a == together_b;
      ++pairs;
    }
  }
  return static_cast<double>(agree) / static_cast<double>(pairs);
}

} // namespace oracle
