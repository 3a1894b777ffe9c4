#include "mexch/generators.hpp"

#include <string>

#include "mexch/exact.hpp"

namespace mexch {

void MixtureSpec::validate(const SystemShape& shape) const {
  if (components.empty()) throw std::invalid_argument("mixture needs at least one component");
  Rational total = 0;
  for (std::size_t m = 0; m < components.size(); ++m) {
    const auto& comp = components[m];
    if (comp.weight < 0) throw std::invalid_argument("negative mixture weight");
    total += comp.weight;
    if (comp.class_freqs.size() != shape.class_count()) {
      throw std::invalid_argument("component " + std::to_string(m) + " has the wrong class count");
    }
    for (std::size_t i = 0; i < shape.class_count(); ++i) {
      const auto& p = comp.class_freqs[i];
      if (p.size() != shape.alphabet_size(i)) {
        throw std::invalid_argument("component " + std::to_string(m) + " class " +
                                    std::to_string(i) + " frequency vector has the wrong length");
      }
      Rational mass = 0;
      for (const auto& x : p) {
        if (x < 0) throw std::invalid_argument("negative frequency in mixture component");
        mass += x;
      }
      if (mass != 1) {
        throw std::invalid_argument("component " + std::to_string(m) + " class " +
                                    std::to_string(i) + " frequencies sum to " + to_string(mass));
      }
    }
  }
  if (total != 1) throw std::invalid_argument("mixture weights sum to " + to_string(total));
}

JointLaw mixture_joint_law(const MixtureSpec& spec, const SystemShape& shape, std::uint64_t cap) {
  spec.validate(shape);
  JointLaw::Weights weights;
  for (auto& config : enumerate_configurations(shape, cap)) {
    Rational total = 0;
    for (const auto& comp : spec.components) {
      Rational term = comp.weight;
      for (std::size_t i = 0; i < shape.class_count() && term != 0; ++i) {
        for (const auto s : config.classes[i]) term *= comp.class_freqs[i][s];
      }
      total += term;
    }
    if (total != 0) weights.emplace(std::move(config), std::move(total));
  }
  return JointLaw(shape, std::move(weights));
}

JointLaw random_multi_exchangeable_law(const SystemShape& shape, std::uint64_t seed,
                                       std::uint64_t cap, std::uint64_t perm_cap) {
  if (shape.permutation_count() > perm_cap) {
    throw CapExceeded("too many permutation tuples: prod N_i! = " +
                      std::to_string(shape.permutation_count()) + " exceeds the permutation cap of " +
                      std::to_string(perm_cap));
  }
  constexpr std::uint64_t kWeightRange = (1u << 16) + 1;
  const auto configs = enumerate_configurations(shape, cap);
  SplitMix64 rng(seed);
  while (true) {
    JointLaw::Weights weights;
    for (const auto& config : configs) {
      const auto w = rng.uniform_below(kWeightRange);
      if (w != 0) weights.emplace(config, Rational(w));
    }
    if (!weights.empty()) return symmetrize(JointLaw::normalized(shape, std::move(weights)), perm_cap);
  }
}

std::vector<Configuration> sample_configurations(const JointLaw& law, std::size_t count,
                                                 std::uint64_t seed) {
  std::vector<const Configuration*> atoms;
  std::vector<Rational> probs;
  for (const auto& [config, w] : law.weights()) {
    atoms.push_back(&config);
    probs.push_back(w);
  }
  const CategoricalSampler pick(probs);
  std::vector<Configuration> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    auto rng = derive_stream(seed, j);
    out.push_back(*atoms[pick(rng)]);
  }
  return out;
}

std::vector<MixtureDraw> sample_mixture(const MixtureSpec& spec, const SystemShape& shape,
                                        std::size_t count, std::uint64_t seed) {
  spec.validate(shape);
  std::vector<Rational> weights;
  std::vector<std::vector<CategoricalSampler>> per_class;
  for (const auto& comp : spec.components) {
    weights.push_back(comp.weight);
    auto& samplers = per_class.emplace_back();
    for (const auto& p : comp.class_freqs) samplers.emplace_back(p);
  }
  const CategoricalSampler pick_component(weights);

  std::vector<MixtureDraw> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    auto rng = derive_stream(seed, j);
    MixtureDraw draw;
    draw.component = pick_component(rng);
    const auto& samplers = per_class[draw.component];
    for (std::size_t i = 0; i < shape.class_count(); ++i) {
      Tuple states(shape.size(i));
      for (auto& s : states) s = static_cast<State>(samplers[i](rng));
      draw.config.classes.push_back(std::move(states));
    }
    out.push_back(std::move(draw));
  }
  return out;
}

std::vector<Configuration> sample_configurations(const MixtureSpec& spec, const SystemShape& shape,
                                                 std::size_t count, std::uint64_t seed) {
  auto draws = sample_mixture(spec, shape, count, seed);
  std::vector<Configuration> out;
  out.reserve(draws.size());
  for (auto& d : draws) out.push_back(std::move(d.config));
  return out;
}

}  // namespace mexch
