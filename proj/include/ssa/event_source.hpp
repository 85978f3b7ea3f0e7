#pragma once

#include <optional>

#include "ssa/counters.hpp"
#include "ssa/model.hpp"
#include "ssa/rng.hpp"

namespace ssa {

struct Event {
  double time = 0.0;  // absolute
  int channel = -1;
};

// Common contract for all next-event generators. Every implementation must
// sample (time, index) pairs from the same joint law; they differ only in
// data structure and therefore cost.
//
// Usage per simulation step: next_event() peeks the next firing; after the
// caller applies the state change it pushes the recomputed propensity of
// every dependent channel through on_update() (including the fired channel
// itself). The stream passed to initialize() must outlive the source.
class EventSource {
 public:
  virtual ~EventSource() = default;

  // Builds the structure from scratch at absolute time t0; counters reset.
  virtual void initialize(const PropensityVector& propensities, double t0, RngStream& rng) = 0;

  // Next (absolute time, channel), or nullopt when no channel can ever fire.
  virtual std::optional<Event> next_event(double now) = 0;

  virtual void on_update(int channel, double new_propensity, double now) = 0;

  // Recomputes internal aggregate sums from stored per-channel propensities,
  // discarding accumulated float drift.
  virtual void resync() {}

  const StepCounters& counters() const { return counters_; }

 protected:
  StepCounters counters_;
  RngStream* rng_ = nullptr;
};

}  // namespace ssa
