#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ssa/event_source.hpp"

namespace ssa {

// Overrides for the adaptive sizing rules, used by the benchmark sweeps.
// Widths are absolute seconds.
struct BinPolicy {
  std::optional<double> fixed_width;
  std::optional<int> fixed_bin_count;
};

// Calendar-style table of (event time, channel) entries. Bin i covers
// [lower_bound + i*W, lower_bound + (i+1)*W). A channel is stored iff its
// event time is finite and inside the window; channels that cannot fire
// (time +inf) or whose time falls past the last bin are tracked only in
// event_time. Extraction scans forward from min_bin; bins behind the cursor
// are always empty.
class BinnedEventTable {
 public:
  static constexpr int kOverflow = std::numeric_limits<int>::max();

  void attach_counters(StepCounters* counters) { counters_ = counters; }

  void reset(int channel_count, double lower_bound, double width, int bin_count) {
    lower_ = lower_bound;
    width_ = width;
    set_bin_count(bin_count);
    min_bin_ = 0;
    stored_ = 0;
    active_ = 0;
    event_time_.assign(channel_count, std::numeric_limits<double>::infinity());
    loc_.assign(channel_count, Slot{});
  }

  int compute_bin_index(double time) const {
    if (time < lower_)
      throw std::logic_error("binned table: event time precedes the window start");
    const double d = (time - lower_) / width_;
    if (!(d < static_cast<double>(nbins_))) return kOverflow;
    return static_cast<int>(d);
  }

  // First placement of a channel's event time (j must not be stored).
  void insert(int j, double time) {
    if (loc_[j].bin >= 0) throw std::logic_error("binned table: double insertion");
    if (std::isfinite(time)) ++active_;
    event_time_[j] = time;
    const int b = std::isfinite(time) ? compute_bin_index(time) : kOverflow;
    if (b != kOverflow) place(j, time, b);
  }

  // General reschedule: in-place overwrite when the bin is unchanged,
  // otherwise swap-remove + insert (overflow acts as a pseudo-bin).
  void update(int j, double new_time) {
    const bool was_active = std::isfinite(event_time_[j]);
    const bool now_active = std::isfinite(new_time);
    if (was_active && !now_active) --active_;
    if (!was_active && now_active) ++active_;
    event_time_[j] = new_time;
    const int old_bin = loc_[j].bin >= 0 ? loc_[j].bin : kOverflow;
    const int new_bin = now_active ? compute_bin_index(new_time) : kOverflow;
    if (new_bin == old_bin) {
      if (new_bin != kOverflow) bins_[new_bin][loc_[j].idx].time = new_time;
      return;
    }
    if (old_bin != kOverflow) remove_stored(j);
    if (new_bin != kOverflow) place(j, new_time, new_bin);
    if (counters_) ++counters_->moved_entries;
  }

  struct SelectOutcome {
    enum Kind { Found, Exhausted } kind = Exhausted;
    Event event{};
  };

  // Advances min_bin to the first nonempty bin and returns that bin's
  // minimum entry by a full scan (first encountered wins ties). Exhausted
  // means the cursor hit the end of the window; the owner decides whether
  // to rebuild. Does not remove the entry: the caller reschedules the fired
  // channel, which vacates it.
  SelectOutcome select_next() {
    while (min_bin_ < nbins_) {
      if (counters_) ++counters_->bins_scanned;
      const auto& bin = bins_[min_bin_];
      if (!bin.empty()) {
        if (counters_) counters_->entries_scanned += bin.size();
        const Entry* best = &bin[0];
        for (const Entry& e : bin)
          if (e.time < best->time) best = &e;
        return SelectOutcome{SelectOutcome::Found, Event{best->time, best->channel}};
      }
      ++min_bin_;
    }
    return SelectOutcome{};
  }

  // Rewindows the table at t_now with fresh geometry. Stored event times are
  // preserved exactly, never resampled.
  void rebuild(double t_now, double width, int bin_count) {
    lower_ = t_now;
    width_ = width;
    set_bin_count(bin_count);
    min_bin_ = 0;
    stored_ = 0;
    const int m = static_cast<int>(event_time_.size());
    for (int j = 0; j < m; ++j) {
      loc_[j] = Slot{};
      const double t = event_time_[j];
      if (!std::isfinite(t)) continue;
      const int b = compute_bin_index(t);
      if (b != kOverflow) place(j, t, b);
    }
    if (counters_) ++counters_->rebuilds;
  }

  double event_time(int j) const { return event_time_[j]; }
  bool stored(int j) const { return loc_[j].bin >= 0; }
  std::uint64_t active_count() const { return active_; }
  std::uint64_t stored_count() const { return stored_; }
  double lower_bound() const { return lower_; }
  double width() const { return width_; }
  int bin_count() const { return nbins_; }
  int min_bin() const { return min_bin_; }
  int channel_count() const { return static_cast<int>(event_time_.size()); }

  // Full consistency audit; used by property tests and `validate`.
  bool audit() const {
    std::uint64_t seen = 0;
    for (int b = 0; b < nbins_; ++b) {
      if (b < min_bin_ && !bins_[b].empty()) return false;
      for (int i = 0; i < static_cast<int>(bins_[b].size()); ++i) {
        const Entry& e = bins_[b][i];
        if (loc_[e.channel].bin != b || loc_[e.channel].idx != i) return false;
        if (e.time != event_time_[e.channel]) return false;
        if (compute_bin_index(e.time) != b) return false;
        ++seen;
      }
    }
    if (seen != stored_) return false;
    std::uint64_t active = 0, should_store = 0;
    for (int j = 0; j < channel_count(); ++j) {
      const double t = event_time_[j];
      const bool in_window = std::isfinite(t) && compute_bin_index(t) != kOverflow;
      if (std::isfinite(t)) ++active;
      if (in_window) ++should_store;
      if (in_window != (loc_[j].bin >= 0)) return false;
    }
    return active == active_ && should_store == stored_;
  }

 private:
  struct Entry {
    double time;
    int channel;
  };
  struct Slot {
    int bin = -1;
    int idx = -1;
  };

  void set_bin_count(int bin_count) {
    nbins_ = bin_count;
    if (static_cast<int>(bins_.size()) < nbins_) bins_.resize(nbins_);
    for (auto& b : bins_) b.clear();  // capacity retained across rebuilds
  }

  void place(int j, double time, int bin) {
    loc_[j] = Slot{bin, static_cast<int>(bins_[bin].size())};
    bins_[bin].push_back(Entry{time, j});
    ++stored_;
  }

  void remove_stored(int j) {
    const Slot s = loc_[j];
    auto& bin = bins_[s.bin];
    const Entry moved = bin.back();
    bin[s.idx] = moved;
    loc_[moved.channel].idx = s.idx;
    bin.pop_back();
    loc_[j] = Slot{};
    --stored_;
  }

  std::vector<std::vector<Entry>> bins_;
  std::vector<Slot> loc_;
  std::vector<double> event_time_;
  double lower_ = 0.0;
  double width_ = 1.0;
  int nbins_ = 0;
  int min_bin_ = 0;
  std::uint64_t stored_ = 0;
  std::uint64_t active_ = 0;
  StepCounters* counters_ = nullptr;
};

// Sizing actually applied at a (re)build.
struct RebuildPlan {
  double width = 1.0;
  int bin_count = 1;
  double mean_step = 1.0;
};

// Bin count rule: 20*sqrt(active channels), at least one bin.
inline int bins_for_active(std::uint64_t active) {
  const double k = std::ceil(20.0 * std::sqrt(static_cast<double>(active)));
  return std::max(1, static_cast<int>(k));
}

// Width rule: 16x the trailing mean step when at least 100 steps of history
// exist since the last rebuild, else 16/a0 with a0 summed exactly.
inline RebuildPlan plan_rebuild(double now, double last_rebuild_time, std::uint64_t steps_since,
                                double exact_total, std::uint64_t active,
                                const BinPolicy& policy) {
  RebuildPlan plan;
  if (steps_since >= 100 && now > last_rebuild_time) {
    plan.mean_step = (now - last_rebuild_time) / static_cast<double>(steps_since);
  } else {
    plan.mean_step = exact_total > 0.0 ? 1.0 / exact_total : 1.0;
  }
  plan.width = policy.fixed_width ? *policy.fixed_width : 16.0 * plan.mean_step;
  plan.bin_count = policy.fixed_bin_count ? *policy.fixed_bin_count : bins_for_active(active);
  return plan;
}

// Constant-complexity next reaction method: the priority queue behind the
// NRM is the binned table above. Every update draws a fresh exponential.
class NrmBinnedQueue final : public EventSource {
 public:
  explicit NrmBinnedQueue(BinPolicy policy = {}) : policy_(policy) {
    table_.attach_counters(&counters_);
  }

  void initialize(const PropensityVector& propensities, double t0, RngStream& rng) override {
    rng_ = &rng;
    counters_.reset();
    props_ = propensities.values;
    total_ = propensities.sum;
    std::uint64_t active = 0;
    for (double a : props_)
      if (a > 0.0) ++active;
    last_plan_ = plan_rebuild(t0, t0, 0, total_, active, policy_);
    table_.reset(static_cast<int>(props_.size()), t0, last_plan_.width, last_plan_.bin_count);
    for (int j = 0; j < static_cast<int>(props_.size()); ++j)
      table_.insert(j, props_[j] > 0.0 ? t0 + rng.exponential(props_[j])
                                       : std::numeric_limits<double>::infinity());
    steps_since_rebuild_ = 0;
    rebuild_t0_ = t0;
  }

  std::optional<Event> next_event(double now) override {
    if (table_.active_count() == 0) return std::nullopt;
    double stretch = 1.0;
    while (true) {
      const auto out = table_.select_next();
      if (out.kind == BinnedEventTable::SelectOutcome::Found) {
        ++steps_since_rebuild_;
        return out.event;
      }
      rebuild_at(now, stretch);
      // All pending events can still fall past a freshly sized window when
      // the step-size estimate is stale; widen geometrically until the
      // earliest one lands inside.
      if (table_.stored_count() == 0) stretch *= 16.0;
    }
  }

  void on_update(int channel, double new_propensity, double now) override {
    total_ += new_propensity - props_[channel];
    props_[channel] = new_propensity;
    table_.update(channel, new_propensity > 0.0
                               ? now + rng_->exponential(new_propensity)
                               : std::numeric_limits<double>::infinity());
  }

  void resync() override { total_ = exact_total(); }

  const BinnedEventTable& table() const { return table_; }
  RebuildPlan last_plan() const { return last_plan_; }
  std::uint64_t steps_since_rebuild() const { return steps_since_rebuild_; }

 private:
  double exact_total() const {
    double s = 0.0;
    for (double a : props_) s += a;
    return s;
  }

  void rebuild_at(double now, double stretch) {
    last_plan_ = plan_rebuild(now, rebuild_t0_, steps_since_rebuild_, exact_total(),
                              table_.active_count(), policy_);
    last_plan_.width *= stretch;
    table_.rebuild(now, last_plan_.width, last_plan_.bin_count);
    steps_since_rebuild_ = 0;
    rebuild_t0_ = now;
    total_ = exact_total();
  }

  BinPolicy policy_;
  BinnedEventTable table_;
  std::vector<double> props_;
  double total_ = 0.0;
  RebuildPlan last_plan_;
  std::uint64_t steps_since_rebuild_ = 0;
  double rebuild_t0_ = 0.0;
};

}  // namespace ssa
