#pragma once

#include <map>

#include "mexch/system.hpp"
#include "mexch/types.hpp"

namespace mexch {

/// Exact probability distribution over the configurations of one shape.
/// Only configurations with positive mass are stored; the weights always
/// sum to exactly one.
class JointLaw {
 public:
  using Weights = std::map<Configuration, Rational>;

  /// Throws std::invalid_argument on a negative weight, a configuration of
  /// another shape, or a total different from one.
  JointLaw(SystemShape shape, Weights weights);

  /// Scales non-negative weights so they sum to one. Throws on a zero total.
  static JointLaw normalized(SystemShape shape, Weights weights);

  static JointLaw point_mass(SystemShape shape, Configuration config);

  const SystemShape& shape() const { return shape_; }
  const Weights& weights() const { return weights_; }
  std::size_t support_size() const { return weights_.size(); }

  /// Zero for configurations outside the support.
  Rational probability(const Configuration& config) const;

  /// Law of the image under a fixed within-class permutation.
  JointLaw permuted(const ClassPermutationVector& perms) const;

  bool operator==(const JointLaw&) const = default;

 private:
  JointLaw(SystemShape shape, Weights weights, bool trusted);

  SystemShape shape_;
  Weights weights_;
};

/// Sum over the union of supports of |p(c) - q(c)|. Shapes must agree.
Rational l1_distance(const JointLaw& p, const JointLaw& q);

}  // namespace mexch
