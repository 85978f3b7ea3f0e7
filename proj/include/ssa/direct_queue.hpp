#pragma once

#include <vector>

#include "ssa/event_source.hpp"
#include "ssa/select.hpp"

namespace ssa {

// The classic direct method: one flat propensity array, linear search for
// the next index, incremental propensity sum.
class DirectLinearQueue final : public EventSource {
 public:
  void initialize(const PropensityVector& propensities, double t0, RngStream& rng) override {
    props_ = propensities.values;
    total_ = propensities.sum;
    active_ = 0;
    for (double a : props_)
      if (a > 0.0) ++active_;
    rng_ = &rng;
    counters_.reset();
    (void)t0;
  }

  std::optional<Event> next_event(double now) override {
    if (active_ == 0) return std::nullopt;
    if (total_ <= 0.0) {
      resync();
      if (total_ <= 0.0) return std::nullopt;
    }
    const double tau = rng_->exponential(total_);
    const double r = rng_->uniform() * total_;
    const int j = linear_select(props_, r, counters_.clamps, counters_.entries_scanned);
    return Event{now + tau, j};
  }

  void on_update(int channel, double new_propensity, double /*now*/) override {
    const double old = props_[channel];
    if (old > 0.0 && new_propensity <= 0.0) --active_;
    if (old <= 0.0 && new_propensity > 0.0) ++active_;
    total_ += new_propensity - old;
    props_[channel] = new_propensity;
  }

  void resync() override {
    double s = 0.0;
    for (double a : props_) s += a;
    total_ = s;
  }

  double total_propensity() const { return total_; }

 private:
  std::vector<double> props_;
  double total_ = 0.0;
  std::uint64_t active_ = 0;
};

}  // namespace ssa
