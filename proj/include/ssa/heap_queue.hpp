#pragma once

#include <cassert>
#include <limits>
#include <vector>

#include "ssa/event_source.hpp"

namespace ssa {

// Indexed binary min-heap over a fixed channel set keyed by absolute event
// time. Channels never leave the heap; a channel that cannot fire carries
// key +inf. `locator` maps channel -> node so updates are O(log M).
class BinaryMinHeap {
 public:
  void reset(const std::vector<double>& times) {
    const int m = static_cast<int>(times.size());
    nodes_.resize(m);
    pos_.resize(m);
    for (int j = 0; j < m; ++j) {
      nodes_[j] = Node{times[j], j};
      pos_[j] = j;
    }
    for (int i = m / 2 - 1; i >= 0; --i) sift_down(i);
  }

  bool empty() const { return nodes_.empty(); }
  int size() const { return static_cast<int>(nodes_.size()); }

  // Root without removal.
  Event top() const {
    assert(!nodes_.empty());
    return Event{nodes_[0].time, nodes_[0].channel};
  }

  double time_of(int channel) const { return nodes_[pos_[channel]].time; }

  void update(int channel, double new_time) {
    const int i = pos_[channel];
    const double old = nodes_[i].time;
    nodes_[i].time = new_time;
    if (new_time < old)
      sift_up(i);
    else
      sift_down(i);
  }

  std::uint64_t swap_count() const { return swaps_; }
  void reset_swap_count() { swaps_ = 0; }

  bool audit() const {
    for (int i = 1; i < size(); ++i) {
      if (nodes_[(i - 1) / 2].time > nodes_[i].time) return false;
    }
    for (int j = 0; j < size(); ++j) {
      if (nodes_[pos_[j]].channel != j) return false;
    }
    return true;
  }

 private:
  struct Node {
    double time;
    int channel;
  };

  void exchange(int a, int b) {
    std::swap(nodes_[a], nodes_[b]);
    pos_[nodes_[a].channel] = a;
    pos_[nodes_[b].channel] = b;
    ++swaps_;
  }

  void sift_up(int i) {
    while (i > 0) {
      const int parent = (i - 1) / 2;
      if (nodes_[parent].time <= nodes_[i].time) break;
      exchange(parent, i);
      i = parent;
    }
  }

  void sift_down(int i) {
    const int n = size();
    while (true) {
      const int l = 2 * i + 1, r = 2 * i + 2;
      int smallest = i;
      if (l < n && nodes_[l].time < nodes_[smallest].time) smallest = l;
      if (r < n && nodes_[r].time < nodes_[smallest].time) smallest = r;
      if (smallest == i) break;
      exchange(smallest, i);
      i = smallest;
    }
  }

  std::vector<Node> nodes_;
  std::vector<int> pos_;  // channel -> node index
  std::uint64_t swaps_ = 0;
};

// Gibson-Bruck style next reaction method with fresh exponentials on every
// update (no random-number recycling).
class NrmHeapQueue final : public EventSource {
 public:
  void initialize(const PropensityVector& propensities, double t0, RngStream& rng) override {
    rng_ = &rng;
    const int m = static_cast<int>(propensities.values.size());
    std::vector<double> times(m);
    for (int j = 0; j < m; ++j) times[j] = t0 + rng.exponential(propensities.values[j]);
    heap_.reset(times);
    heap_.reset_swap_count();
    counters_.reset();
  }

  std::optional<Event> next_event(double /*now*/) override {
    if (heap_.empty()) return std::nullopt;
    const Event ev = heap_.top();
    if (!std::isfinite(ev.time)) return std::nullopt;  // nothing can fire
    return ev;
  }

  void on_update(int channel, double new_propensity, double now) override {
    const std::uint64_t before = heap_.swap_count();
    heap_.update(channel, now + rng_->exponential(new_propensity));
    counters_.heap_swaps += heap_.swap_count() - before;
  }

  const BinaryMinHeap& heap() const { return heap_; }

 private:
  BinaryMinHeap heap_;
};

}  // namespace ssa
