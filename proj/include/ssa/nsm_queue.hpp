#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "ssa/event_source.hpp"
#include "ssa/heap_queue.hpp"
#include "ssa/select.hpp"

namespace ssa {

// Uniform flat-channel layout of a spatial model: each subvolume owns
// `local_reactions` reaction channels followed by `local_diffusion`
// diffusive-transfer channels. A well-mixed model is the degenerate case of
// one subvolume with no diffusion block.
struct SubvolumeLayout {
  int subvolumes = 1;
  int local_reactions = 0;
  int local_diffusion = 0;

  int stride() const { return local_reactions + local_diffusion; }
  int channel_count() const { return subvolumes * stride(); }
  int subvolume_of(int flat) const { return flat / stride(); }
  int base_of(int v) const { return v * stride(); }
};

// Next subvolume method: a binary min-heap selects the subvolume whose next
// event fires first; within it, one uniform splits reaction vs diffusion by
// group sums and the residual drives a linear search inside the chosen
// group. An event touches at most two subvolumes, so at most two heap keys
// are resampled per step. Touched subvolumes get their group sums
// recomputed from scratch, which costs the same order as the selection scan
// and keeps the sums exact.
class NsmQueue final : public EventSource {
 public:
  explicit NsmQueue(SubvolumeLayout layout) : layout_(layout) {}

  void initialize(const PropensityVector& propensities, double t0, RngStream& rng) override {
    rng_ = &rng;
    counters_.reset();
    props_ = propensities.values;
    const int ns = layout_.subvolumes;
    rx_sum_.assign(ns, 0.0);
    diff_sum_.assign(ns, 0.0);
    dirty_.clear();
    in_dirty_.assign(ns, 0);
    std::vector<double> times(ns);
    for (int v = 0; v < ns; ++v) {
      recompute_sums(v);
      times[v] = t0 + rng.exponential(rx_sum_[v] + diff_sum_[v]);
    }
    heap_.reset(times);
    heap_.reset_swap_count();
    max_dirty_per_step_ = 0;
  }

  std::optional<Event> next_event(double now) override {
    flush_dirty(now);
    if (heap_.empty()) return std::nullopt;
    const Event sub = heap_.top();
    if (!std::isfinite(sub.time)) return std::nullopt;
    const int v = sub.channel;
    const int base = layout_.base_of(v);
    const double rx = rx_sum_[v], diff = diff_sum_[v];
    double r = rng_->uniform() * (rx + diff);
    bool pick_reaction;
    if (diff <= 0.0)
      pick_reaction = true;
    else if (rx <= 0.0)
      pick_reaction = false;
    else
      pick_reaction = r < rx;
    int local;
    if (pick_reaction) {
      const std::span<const double> slice(props_.data() + base,
                                          static_cast<size_t>(layout_.local_reactions));
      local = linear_select(slice, std::min(r, rx), counters_.clamps, counters_.entries_scanned);
    } else {
      const std::span<const double> slice(props_.data() + base + layout_.local_reactions,
                                          static_cast<size_t>(layout_.local_diffusion));
      local = layout_.local_reactions +
              linear_select(slice, std::max(0.0, r - rx), counters_.clamps,
                            counters_.entries_scanned);
    }
    return Event{sub.time, base + local};
  }

  void on_update(int channel, double new_propensity, double /*now*/) override {
    props_[channel] = new_propensity;
    const int v = layout_.subvolume_of(channel);
    if (!in_dirty_[v]) {
      in_dirty_[v] = 1;
      dirty_.push_back(v);
    }
  }

  void resync() override {
    for (int v = 0; v < layout_.subvolumes; ++v) recompute_sums(v);
  }

  const BinaryMinHeap& heap() const { return heap_; }
  std::uint64_t max_dirty_per_step() const { return max_dirty_per_step_; }

 private:
  void recompute_sums(int v) {
    const int base = layout_.base_of(v);
    double rs = 0.0, ds = 0.0;
    for (int c = 0; c < layout_.local_reactions; ++c) rs += props_[base + c];
    for (int c = 0; c < layout_.local_diffusion; ++c)
      ds += props_[base + layout_.local_reactions + c];
    rx_sum_[v] = rs;
    diff_sum_[v] = ds;
  }

  // Subvolumes touched since the last selection get exact fresh sums and one
  // new next-event time each, sampled from `now`.
  void flush_dirty(double now) {
    if (dirty_.empty()) return;
    max_dirty_per_step_ = std::max<std::uint64_t>(max_dirty_per_step_, dirty_.size());
    const std::uint64_t before = heap_.swap_count();
    for (int v : dirty_) {
      in_dirty_[v] = 0;
      recompute_sums(v);
      heap_.update(v, now + rng_->exponential(rx_sum_[v] + diff_sum_[v]));
    }
    counters_.heap_swaps += heap_.swap_count() - before;
    dirty_.clear();
  }

  SubvolumeLayout layout_;
  std::vector<double> props_;
  std::vector<double> rx_sum_;
  std::vector<double> diff_sum_;
  std::vector<int> dirty_;
  std::vector<char> in_dirty_;
  BinaryMinHeap heap_;
  std::uint64_t max_dirty_per_step_ = 0;
};

}  // namespace ssa
