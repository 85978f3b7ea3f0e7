#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "ssa/event_source.hpp"
#include "ssa/select.hpp"

namespace ssa {

// Direct method with a static contiguous partition of the channels into
// ceil(M^(1/depth))-sized groups, recursively for depth 3. Selection walks
// group sums level by level with a fresh uniform per level, which reproduces
// the flat selection law with O(M^(1/depth)) scans per level.
class GroupedDirectQueue final : public EventSource {
 public:
  explicit GroupedDirectQueue(int depth) : depth_(depth) {}

  void initialize(const PropensityVector& propensities, double t0, RngStream& rng) override {
    (void)t0;
    props_ = propensities.values;
    const int m = static_cast<int>(props_.size());
    leaf_size_ = ceil_root(m, depth_);
    leaf_sums_.assign((m + leaf_size_ - 1) / leaf_size_, 0.0);
    if (depth_ == 3) {
      mid_span_ = leaf_size_ * leaf_size_;
      mid_sums_.assign((m + mid_span_ - 1) / mid_span_, 0.0);
    } else {
      mid_span_ = 0;
      mid_sums_.clear();
    }
    total_ = 0.0;
    active_ = 0;
    for (int j = 0; j < m; ++j) {
      const double a = props_[j];
      leaf_sums_[j / leaf_size_] += a;
      if (depth_ == 3) mid_sums_[j / mid_span_] += a;
      total_ += a;
      if (a > 0.0) ++active_;
    }
    rng_ = &rng;
    counters_.reset();
  }

  std::optional<Event> next_event(double now) override {
    if (active_ == 0) return std::nullopt;
    const double tau = rng_->exponential(total_);
    const int m = static_cast<int>(props_.size());
    int lo = 0, hi = m;  // channel range of the group chosen so far
    if (depth_ == 3) {
      const double r = rng_->uniform() * total_;
      const int g = linear_select(mid_sums_, r, counters_.clamps, counters_.entries_scanned);
      lo = g * mid_span_;
      hi = std::min(m, lo + mid_span_);
    }
    {
      const int first_leaf = lo / leaf_size_;
      const int last_leaf = (hi + leaf_size_ - 1) / leaf_size_;
      const std::span<const double> sums(leaf_sums_.data() + first_leaf,
                                         static_cast<size_t>(last_leaf - first_leaf));
      const double scale = depth_ == 3 ? mid_sums_[lo / mid_span_] : total_;
      const double r = rng_->uniform() * scale;
      const int g =
          first_leaf + linear_select(sums, r, counters_.clamps, counters_.entries_scanned);
      lo = g * leaf_size_;
      hi = std::min(m, lo + leaf_size_);
    }
    const std::span<const double> slice(props_.data() + lo, static_cast<size_t>(hi - lo));
    const double r = rng_->uniform() * leaf_sums_[lo / leaf_size_];
    const int j = lo + linear_select(slice, r, counters_.clamps, counters_.entries_scanned);
    return Event{now + tau, j};
  }

  void on_update(int channel, double new_propensity, double /*now*/) override {
    const double old = props_[channel];
    const double delta = new_propensity - old;
    if (old > 0.0 && new_propensity <= 0.0) --active_;
    if (old <= 0.0 && new_propensity > 0.0) ++active_;
    props_[channel] = new_propensity;
    leaf_sums_[channel / leaf_size_] += delta;
    if (depth_ == 3) mid_sums_[channel / mid_span_] += delta;
    total_ += delta;
  }

  void resync() override {
    std::fill(leaf_sums_.begin(), leaf_sums_.end(), 0.0);
    std::fill(mid_sums_.begin(), mid_sums_.end(), 0.0);
    total_ = 0.0;
    for (int j = 0; j < static_cast<int>(props_.size()); ++j) {
      leaf_sums_[j / leaf_size_] += props_[j];
      if (depth_ == 3) mid_sums_[j / mid_span_] += props_[j];
      total_ += props_[j];
    }
  }

  int leaf_group_size() const { return leaf_size_; }
  int leaf_group_count() const { return static_cast<int>(leaf_sums_.size()); }
  double total_propensity() const { return total_; }

  // Largest absolute deviation between a stored group sum and its
  // recomputation, for drift audits.
  double max_group_sum_error() const {
    std::vector<double> leaf(leaf_sums_.size(), 0.0), mid(mid_sums_.size(), 0.0);
    for (int j = 0; j < static_cast<int>(props_.size()); ++j) {
      leaf[j / leaf_size_] += props_[j];
      if (depth_ == 3) mid[j / mid_span_] += props_[j];
    }
    double err = 0.0;
    for (size_t i = 0; i < leaf.size(); ++i) err = std::max(err, std::abs(leaf[i] - leaf_sums_[i]));
    for (size_t i = 0; i < mid.size(); ++i) err = std::max(err, std::abs(mid[i] - mid_sums_[i]));
    return err;
  }

 private:
  // Smallest k with k^depth >= m (integer-exact, no float cube-root slop).
  static int ceil_root(int m, int depth) {
    if (m <= 1) return 1;
    auto ipow = [depth](long long k) {
      long long p = k * k;
      return depth == 3 ? p * k : p;
    };
    long long k = depth == 3 ? static_cast<long long>(std::cbrt(static_cast<double>(m)))
                             : static_cast<long long>(std::sqrt(static_cast<double>(m)));
    if (k < 1) k = 1;
    while (ipow(k) < m) ++k;
    while (k > 1 && ipow(k - 1) >= m) --k;
    return static_cast<int>(k);
  }

  int depth_;
  int leaf_size_ = 1;
  int mid_span_ = 0;  // channels per top-level group (depth 3 only)
  std::vector<double> props_;
  std::vector<double> leaf_sums_;
  std::vector<double> mid_sums_;
  double total_ = 0.0;
  std::uint64_t active_ = 0;
};

}  // namespace ssa
