#pragma once

#include <cstdint>
#include <string>

namespace ssa {

// Instrumentation accumulated over a run. All fields are monotone
// nondecreasing within a run.
struct StepCounters {
  std::uint64_t steps = 0;
  std::uint64_t bins_scanned = 0;     // bin emptiness checks (binned NRM)
  std::uint64_t entries_scanned = 0;  // linear-scan work in selections
  std::uint64_t rejections = 0;       // composition-rejection retries
  std::uint64_t heap_swaps = 0;
  std::uint64_t rebuilds = 0;
  std::uint64_t moved_entries = 0;    // bin-to-bin or stored/unstored moves
  std::uint64_t propensity_updates = 0;
  std::uint64_t clamps = 0;           // float-drift fallbacks in linear search

  StepCounters& operator+=(const StepCounters& o) {
    steps += o.steps;
    bins_scanned += o.bins_scanned;
    entries_scanned += o.entries_scanned;
    rejections += o.rejections;
    heap_swaps += o.heap_swaps;
    rebuilds += o.rebuilds;
    moved_entries += o.moved_entries;
    propensity_updates += o.propensity_updates;
    clamps += o.clamps;
    return *this;
  }

  void reset() { *this = StepCounters{}; }

  // Flat JSON object, one key per counter.
  std::string to_json() const;
};

}  // namespace ssa
