#pragma once

#include <span>
#include <vector>

#include "mexch/system.hpp"
#include "mexch/types.hpp"

namespace mexch {

/// Per-class symbol frequencies of a configuration, as exact rationals.
/// `freqs[i][s]` is the fraction of class-i particles in state s.
class EmpiricalMeasureVector {
 public:
  /// Throws unless every class vector has the alphabet's length, sums to one,
  /// and has entries that are non-negative multiples of 1/N_i.
  EmpiricalMeasureVector(SystemShape shape, std::vector<std::vector<Rational>> freqs);

  const SystemShape& shape() const { return shape_; }
  const std::vector<std::vector<Rational>>& freqs() const { return freqs_; }
  const std::vector<Rational>& of(std::size_t i) const { return freqs_.at(i); }

  /// Atom multiplicities N_i * freqs[i][s].
  std::vector<std::vector<std::size_t>> counts() const;

  bool operator==(const EmpiricalMeasureVector& o) const { return freqs_ == o.freqs_ && shape_ == o.shape_; }
  /// Orders by frequencies only; keys of one table always share a shape.
  bool operator<(const EmpiricalMeasureVector& o) const { return freqs_ < o.freqs_; }

 private:
  SystemShape shape_;
  std::vector<std::vector<Rational>> freqs_;
};

EmpiricalMeasureVector empirical_measure_vector(const SystemShape& shape,
                                                const Configuration& config);

/// Frequency vector of a finite prefix of one class's sample path.
/// Throws std::invalid_argument on an empty prefix or an out-of-range state.
std::vector<Rational> estimate_directing_measure(std::span<const State> prefix,
                                                 std::size_t alphabet_size);

/// Same as above in floating point, for long Monte Carlo prefixes.
std::vector<double> estimate_directing_measure_fp(std::span<const State> prefix,
                                                  std::size_t alphabet_size);

}  // namespace mexch
