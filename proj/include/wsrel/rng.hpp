#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace wsrel {

/// Counter-based generator: output k of stream s under seed is a fixed
/// SplitMix64-style hash of (seed, s, k), so every trial can own an
/// independent, reproducible substream regardless of execution order.
/// Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(mix(seed + kGolden) ^ (stream * kStreamMul + kStreamAdd))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + (++counter_) * kGolden); }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniformOpen() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Exponential with the given mean, by inversion; strictly positive.
  double exponential(double mean) { return -std::log(uniformOpen()) * mean; }

  std::uint64_t counter() const noexcept { return counter_; }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kStreamMul = 0xD1B54A32D192ED03ULL;
  static constexpr std::uint64_t kStreamAdd = 0x8CB92BA72F3D8DD7ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace wsrel
