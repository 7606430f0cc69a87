#pragma once

#include <complex>
#include <cstdint>

namespace lrange {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed for the index-th independent stream derived from a parent seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(seed ^ mix64(index + 0x632BE59BD9B4E019ULL));
}

/// Counter-based generator: the k-th draw is a pure function of (key, k), so
/// streams are reproducible across platforms and can be split without sharing
/// state. Normals use Box-Muller.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) noexcept : key_(mix64(seed)) {}

  std::uint64_t next_u64() noexcept {
    return mix64(key_ + 0x9E3779B97F4A7C15ULL * counter_++);
  }

  /// Uniform in [0, 1).
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Standard normal.
  double normal() noexcept;

  /// Standard complex normal, E|z|^2 = 1.
  std::complex<double> complex_normal() noexcept;

  CounterRng split(std::uint64_t index) const noexcept { return CounterRng(derive_seed(key_, index)); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace lrange
