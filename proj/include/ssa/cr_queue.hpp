#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "ssa/event_source.hpp"

namespace ssa {

// Composition-rejection direct method. Channels are partitioned by
// propensity magnitude: group g holds every channel with a_j in
// [2^g, 2^(g+1)), so a uniform proposal under the group ceiling is accepted
// with probability > 1/2 and selection costs O(1) trials on average.
// Zero-propensity channels are stored nowhere.
class CompositionRejectionQueue final : public EventSource {
 public:
  void initialize(const PropensityVector& propensities, double t0, RngStream& rng) override {
    (void)t0;
    props_ = propensities.values;
    loc_.assign(props_.size(), Loc{});
    groups_.clear();
    total_ = 0.0;
    active_ = 0;
    for (int j = 0; j < static_cast<int>(props_.size()); ++j) {
      if (props_[j] > 0.0) insert_channel(j, props_[j]);
      total_ += props_[j];
    }
    rng_ = &rng;
    counters_.reset();
    last_trials_ = 0;
  }

  std::optional<Event> next_event(double now) override {
    if (active_ == 0) return std::nullopt;
    const double tau = rng_->exponential(total_);
    const int j = select(*rng_);
    return Event{now + tau, j};
  }

  void on_update(int channel, double new_propensity, double /*now*/) override {
    update_propensity(channel, new_propensity);
  }

  void resync() override {
    total_ = 0.0;
    for (double a : props_) total_ += a;
    for (auto& [g, grp] : groups_) {
      grp.sum = 0.0;
      for (int j : grp.members) grp.sum += props_[j];
    }
  }

  // Exact-law selection; trial count of the last call is kept for
  // instrumentation.
  int select(RngStream& rng) {
    // group by linear search weighted by group sums, largest magnitudes first
    const double r = rng.uniform() * total_;
    double acc = 0.0;
    auto chosen = groups_.rbegin();
    for (auto it = groups_.rbegin(); it != groups_.rend(); ++it) {
      ++counters_.entries_scanned;
      acc += it->second.sum;
      chosen = it;
      if (acc > r) break;
    }
    const Group& grp = chosen->second;
    const double ceiling = std::ldexp(1.0, chosen->first + 1);
    std::uint64_t trials = 0;
    while (true) {
      ++trials;
      if (trials > kTrialCap)
        throw std::logic_error("composition-rejection: trial cap hit, table corrupt");
      const int j = grp.members[rng.uniform_index(grp.members.size())];
      const double r2 = rng.uniform() * ceiling;
      if (r2 < props_[j]) {
        last_trials_ = trials;
        counters_.rejections += trials - 1;
        return j;
      }
    }
  }

  void update_propensity(int j, double new_a) {
    const double old = props_[j];
    total_ += new_a - old;
    props_[j] = new_a;
    const bool was = loc_[j].stored;
    if (new_a <= 0.0) {
      if (was) remove_channel(j, old);
      return;
    }
    const int g = std::ilogb(new_a);
    if (was && loc_[j].group == g) {
      groups_[g].sum += new_a - old;
      return;
    }
    if (was) remove_channel(j, old);
    insert_channel(j, new_a);
  }

  std::uint64_t last_trial_count() const { return last_trials_; }
  double total_propensity() const { return total_; }
  std::uint64_t active_count() const { return active_; }

  // Audits group membership against floor(log2 a_j) and group sums against
  // recomputation; returns false with no side effects on any mismatch.
  bool audit(double rel_tol = 1e-9) const {
    std::uint64_t stored = 0;
    for (int j = 0; j < static_cast<int>(props_.size()); ++j) {
      if (props_[j] > 0.0) {
        if (!loc_[j].stored || loc_[j].group != std::ilogb(props_[j])) return false;
        auto it = groups_.find(loc_[j].group);
        if (it == groups_.end()) return false;
        const auto& mem = it->second.members;
        if (loc_[j].slot >= static_cast<int>(mem.size()) || mem[loc_[j].slot] != j) return false;
        ++stored;
      } else if (loc_[j].stored) {
        return false;
      }
    }
    if (stored != active_) return false;
    for (const auto& [g, grp] : groups_) {
      if (grp.members.empty()) return false;  // empty groups must be erased
      double s = 0.0;
      for (int j : grp.members) s += props_[j];
      if (std::abs(s - grp.sum) > rel_tol * std::max(1.0, s)) return false;
    }
    return true;
  }

 private:
  static constexpr std::uint64_t kTrialCap = 10000;

  struct Group {
    std::vector<int> members;
    double sum = 0.0;
  };
  struct Loc {
    int group = 0;
    int slot = 0;
    bool stored = false;
  };

  void insert_channel(int j, double a) {
    const int g = std::ilogb(a);
    Group& grp = groups_[g];
    loc_[j] = Loc{g, static_cast<int>(grp.members.size()), true};
    grp.members.push_back(j);
    grp.sum += a;
    ++active_;
  }

  void remove_channel(int j, double old_a) {
    Group& grp = groups_[loc_[j].group];
    const int slot = loc_[j].slot;
    const int moved = grp.members.back();
    grp.members[slot] = moved;
    loc_[moved].slot = slot;
    grp.members.pop_back();
    grp.sum -= old_a;
    loc_[j].stored = false;
    --active_;
    if (grp.members.empty()) groups_.erase(loc_[j].group);
  }

  std::vector<double> props_;
  std::vector<Loc> loc_;
  std::map<int, Group> groups_;  // exponent -> group
  double total_ = 0.0;
  std::uint64_t active_ = 0;
  std::uint64_t last_trials_ = 0;
};

}  // namespace ssa
