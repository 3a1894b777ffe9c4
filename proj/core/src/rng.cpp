#include "mexch/rng.hpp"

#include <algorithm>

namespace mexch {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below needs a positive bound");
  const std::uint64_t reject_below = (0 - bound) % bound;
  while (true) {
    const auto x = next();
    if (x >= reject_below) return x % bound;
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + SplitMix64::kGamma));
}

CategoricalSampler::CategoricalSampler(std::span<const Rational> probabilities) {
  if (probabilities.empty()) throw std::invalid_argument("categorical sampler needs outcomes");
  const BigInt scale = BigInt(1) << 64;
  Rational cumulative = 0;
  count_ = probabilities.size();
  full_ = count_;
  for (const auto& p : probabilities) {
    if (p < 0) throw std::invalid_argument("negative probability " + to_string(p));
    cumulative += p;
    if (full_ != count_) continue;
    const Rational scaled = cumulative * scale;
    const auto& num = boost::multiprecision::numerator(scaled);
    const auto& den = boost::multiprecision::denominator(scaled);
    BigInt t = num / den;
    if (t * den != num) ++t;
    if (t >= scale) {
      full_ = thresholds_.size();
    } else {
      thresholds_.push_back(static_cast<std::uint64_t>(t));
    }
  }
  if (cumulative != 1) throw std::invalid_argument("probabilities sum to " + to_string(cumulative));
}

std::size_t CategoricalSampler::index_for(std::uint64_t draw) const {
  const auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(), draw);
  // Past the finite thresholds, outcome full_ has threshold 2^64 > draw.
  return it == thresholds_.end() ? full_ : static_cast<std::size_t>(it - thresholds_.begin());
}

}  // namespace mexch
