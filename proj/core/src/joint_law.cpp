#include "mexch/joint_law.hpp"

#include <string>

namespace mexch {

namespace {

JointLaw::Weights drop_zeros(JointLaw::Weights weights) {
  std::erase_if(weights, [](const auto& kv) { return kv.second == 0; });
  return weights;
}

void check_entries(const SystemShape& shape, const JointLaw::Weights& weights) {
  for (const auto& [config, w] : weights) {
    validate(shape, config);
    if (w < 0) throw std::invalid_argument("negative weight " + to_string(w));
  }
}

}  // namespace

JointLaw::JointLaw(SystemShape shape, Weights weights, bool)
    : shape_(std::move(shape)), weights_(std::move(weights)) {}

JointLaw::JointLaw(SystemShape shape, Weights weights)
    : shape_(std::move(shape)), weights_(drop_zeros(std::move(weights))) {
  check_entries(shape_, weights_);
  Rational total = 0;
  for (const auto& kv : weights_) total += kv.second;
  if (total != 1) throw std::invalid_argument("weights sum to " + to_string(total) + ", not 1");
}

JointLaw JointLaw::normalized(SystemShape shape, Weights weights) {
  weights = drop_zeros(std::move(weights));
  check_entries(shape, weights);
  Rational total = 0;
  for (const auto& kv : weights) total += kv.second;
  if (total == 0) throw std::invalid_argument("cannot normalize a law with zero total mass");
  for (auto& kv : weights) kv.second /= total;
  return JointLaw(std::move(shape), std::move(weights), true);
}

JointLaw JointLaw::point_mass(SystemShape shape, Configuration config) {
  validate(shape, config);
  Weights w;
  w.emplace(std::move(config), Rational(1));
  return JointLaw(std::move(shape), std::move(w), true);
}

Rational JointLaw::probability(const Configuration& config) const {
  const auto it = weights_.find(config);
  return it == weights_.end() ? Rational(0) : it->second;
}

JointLaw JointLaw::permuted(const ClassPermutationVector& perms) const {
  // If Y = sigma . X then P(Y = c) = P(X = sigma^{-1} . c); pushing each
  // atom forward gives the same map without inverting.
  Weights out;
  for (const auto& [config, w] : weights_) {
    out.emplace(permute_within_classes(config, perms), w);
  }
  return JointLaw(shape_, std::move(out), true);
}

Rational l1_distance(const JointLaw& p, const JointLaw& q) {
  if (!(p.shape() == q.shape())) throw std::invalid_argument("laws have different shapes");
  Rational total = 0;
  for (const auto& [config, w] : p.weights()) total += abs(w - q.probability(config));
  for (const auto& [config, w] : q.weights()) {
    if (!p.weights().contains(config)) total += w;
  }
  return total;
}

}  // namespace mexch
