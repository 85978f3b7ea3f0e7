#pragma once

#include <cstdint>
#include <span>

namespace ssa {

// Smallest index j with sum(weights[0..j]) > r, for r in [0, sum). Channels
// with zero weight can never be returned. If float drift leaves r at or
// beyond the accumulated sum, the last positive-weight index is returned and
// `clamps` is incremented. `scanned` counts array elements examined.
inline int linear_select(std::span<const double> weights, double r, std::uint64_t& clamps,
                         std::uint64_t& scanned) {
  double acc = 0.0;
  int last_positive = -1;
  const int n = static_cast<int>(weights.size());
  for (int j = 0; j < n; ++j) {
    ++scanned;
    const double w = weights[j];
    if (w > 0.0) last_positive = j;
    acc += w;
    if (acc > r) return j;
  }
  ++clamps;
  return last_positive >= 0 ? last_positive : n - 1;
}

}  // namespace ssa
