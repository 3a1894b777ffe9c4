#pragma once

#include <vector>

#include "mexch/joint_law.hpp"
#include "mexch/rng.hpp"

namespace mexch {

/// Finitely supported mixture of i.i.d. regimes. Component c draws every
/// class-i particle independently from `components[c].class_freqs[i]`.
struct MixtureSpec {
  struct Component {
    Rational weight;
    std::vector<std::vector<Rational>> class_freqs;
  };
  std::vector<Component> components;

  /// Throws std::invalid_argument unless weights are non-negative and sum to
  /// one and every frequency vector is a probability vector on its alphabet.
  void validate(const SystemShape& shape) const;
};

/// weight(c) = sum_m w_m prod_{i,n} p_{m,i}(c_{n,i}).
JointLaw mixture_joint_law(const MixtureSpec& spec, const SystemShape& shape,
                           std::uint64_t cap = kDefaultEnumerationCap);

/// Integer weights drawn uniformly from {0..2^16} per configuration in
/// enumeration order from SplitMix64(seed), normalized, then symmetrized.
/// An all-zero draw is redrawn from the same stream.
JointLaw random_multi_exchangeable_law(const SystemShape& shape, std::uint64_t seed,
                                       std::uint64_t cap = kDefaultEnumerationCap,
                                       std::uint64_t perm_cap = kDefaultPermutationCap);

/// Sample j inverts the CDF over the law's support (lexicographic) with one
/// draw from derive_stream(seed, j).
std::vector<Configuration> sample_configurations(const JointLaw& law, std::size_t count,
                                                 std::uint64_t seed);

struct MixtureDraw {
  std::size_t component = 0;
  Configuration config;
};

/// Sample j uses derive_stream(seed, j): one draw picks the component, then
/// one draw per particle, class-major, picks its state.
std::vector<MixtureDraw> sample_mixture(const MixtureSpec& spec, const SystemShape& shape,
                                        std::size_t count, std::uint64_t seed);

std::vector<Configuration> sample_configurations(const MixtureSpec& spec, const SystemShape& shape,
                                                 std::size_t count, std::uint64_t seed);

}  // namespace mexch
