#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace ssa {

// Inverse-CDF exponential waiting time. rate <= 0 means the event never
// happens; callers treat +inf as "not scheduled".
inline double sample_exponential(double rate, double u) {
  if (rate <= 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(u) / rate;
}

// Deterministic seeded stream. uniform() is in (0,1], open at zero so that
// log(u) is always finite.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  double uniform() {
    // 53 random bits, shifted into (0,1]
    return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
  }

  double exponential(double rate) { return sample_exponential(rate, uniform()); }

  std::uint64_t next_u64() { return gen_(); }

  // Uniform index in {0, ..., n-1}, n >= 1.
  std::size_t uniform_index(std::size_t n) {
    const auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return k >= n ? n - 1 : k;
  }

 private:
  std::mt19937_64 gen_;
};

// splitmix64 finalizer; the exact bit-mixing rule used to derive per-
// realization seeds so ensembles reproduce across platforms. Realization k
// of a run seeded with s uses derive_stream_seed(s, k).
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + (k + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace ssa
