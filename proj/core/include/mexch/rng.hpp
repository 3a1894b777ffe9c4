#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "mexch/types.hpp"

namespace mexch {

/// SplitMix64 finalizer:
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   z =  z ^ (z >> 31)
std::uint64_t mix64(std::uint64_t z);

/// SplitMix64 generator. Each call adds 0x9E3779B97F4A7C15 to the state and
/// returns mix64 of the new state. Satisfies UniformRandomBitGenerator.
///
/// Derived values are defined on the raw 64-bit output x:
///   uniform01       = (x >> 11) * 2^-53
///   bernoulli(p)    = uniform01 < p
///   uniform_below(b) rejects x < (2^64 - b) mod b, then returns x mod b
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next(); }
  result_type next() {
    state_ += kGamma;
    return mix64(state_);
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform01() < p; }
  std::uint64_t uniform_below(std::uint64_t bound);

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

/// Seed of substream `index` of `seed`: mix64(seed ^ mix64(index + kGamma)).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

inline SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(derive_seed(seed, index));
}

/// Exact inverse-CDF sampling of a rational probability vector from one raw
/// 64-bit draw x: returns the first j with x < ceil(2^64 * (p_0 + ... + p_j)).
class CategoricalSampler {
 public:
  explicit CategoricalSampler(std::span<const Rational> probabilities);

  std::size_t operator()(SplitMix64& rng) const { return index_for(rng.next()); }
  std::size_t index_for(std::uint64_t draw) const;
  std::size_t size() const { return count_; }

 private:
  // Thresholds below 2^64; every outcome from index `full_` on has threshold 2^64.
  std::vector<std::uint64_t> thresholds_;
  std::size_t full_ = 0;
  std::size_t count_ = 0;
};

}  // namespace mexch
