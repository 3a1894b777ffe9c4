#pragma once

#include <vector>

#include "mexch/types.hpp"

namespace mexch {

/// Exact measure on an explicit finite space of tuples. Weights may be
/// signed (differences) or sub-probability; points are distinct.
class FiniteMeasure {
 public:
  FiniteMeasure(std::vector<Tuple> space, std::vector<Rational> weights);

  /// Zero measure on all tuples in {0..A_1-1} x ... x {0..A_m-1}, lexicographic.
  static FiniteMeasure zero_on_product(const std::vector<std::size_t>& alphabet_sizes);

  const std::vector<Tuple>& space() const { return space_; }
  const std::vector<Rational>& weights() const { return weights_; }
  std::size_t size() const { return space_.size(); }

  /// Throws std::out_of_range for a point outside the space.
  const Rational& weight(const Tuple& point) const;
  Rational& weight(const Tuple& point);

  Rational total_mass() const;

  bool operator==(const FiniteMeasure& o) const { return space_ == o.space_ && weights_ == o.weights_; }

 private:
  std::size_t index_of(const Tuple& point) const;

  std::vector<Tuple> space_;
  std::vector<Rational> weights_;
  bool lexicographic_;
};

}  // namespace mexch
