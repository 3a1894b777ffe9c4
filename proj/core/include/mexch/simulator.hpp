#pragma once

#include <cstdint>
#include <vector>

#include "mexch/joint_law.hpp"
#include "mexch/rng.hpp"

namespace mexch {

/// Binary-state mean-field dynamics. At each step particle n of class i keeps
/// its state with probability 1 - rho_i, otherwise redraws it as
/// Bernoulli(clamp(a_i + sum_j b_ij m_j, 0, 1)), where m_j is the pre-step
/// fraction of class j in state 1. Initial states are i.i.d. Bernoulli(q_i).
struct ModelSpec {
  std::size_t classes = 0;
  std::vector<double> a;
  std::vector<std::vector<double>> b;
  std::vector<double> rho;
  std::vector<double> q;
  std::size_t steps = 0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// clamp(a_i + sum_j b_ij m_j, 0, 1).
  double update_probability(std::size_t i, const std::vector<double>& ones_fraction) const;
};

/// C=2, a=(0.2,0.6), b=[[0.3,0.4],[-0.2,0.1]], rho=(0.7,0.9), q=(0.5,0.5), T=50.
ModelSpec default_coupled_model();

/// The default model with b = 0 and rho = 1: particles are exactly
/// independent Bernoulli(a_i) after the first step.
ModelSpec decoupled_model();

inline constexpr std::size_t kDefaultTaggedParticles = 4;

/// Per class, the particle states (0 or 1).
using ParticleStates = std::vector<std::vector<std::uint8_t>>;

/// Synchronous update. For each class i, then each particle in order: one
/// draw decides refresh (uniform01 < rho_i); a refresh takes one more draw
/// for the new state (uniform01 < p_i).
ParticleStates step(const ParticleStates& states, const ModelSpec& model, SplitMix64& rng);

/// Class-major, one draw per particle: uniform01 < q_i.
ParticleStates initial_states(const ModelSpec& model, const std::vector<std::size_t>& class_sizes,
                              SplitMix64& rng);

struct StepSnapshot {
  /// freqs[i][s]: fraction of class i in state s.
  std::vector<std::vector<double>> freqs;
  /// tagged[i][n]: state of particle n of class i, n < tagged count.
  std::vector<Tuple> tagged;
};

struct TrajectoryRecord {
  std::uint64_t seed = 0;
  std::size_t replication = 0;
  std::vector<std::size_t> class_sizes;
  /// steps[t] is the state after t updates; steps[0] is the initial condition.
  std::vector<StepSnapshot> steps;

  bool operator==(const TrajectoryRecord&) const = default;
};

inline bool operator==(const StepSnapshot& x, const StepSnapshot& y) {
  return x.freqs == y.freqs && x.tagged == y.tagged;
}

struct RunOptions {
  std::size_t tagged = kDefaultTaggedParticles;
  /// Worker threads for replications; 0 means hardware concurrency.
  std::size_t threads = 1;
};

/// Replication r runs on derive_stream(seed, r). Records are ordered by
/// replication and do not depend on the thread count.
std::vector<TrajectoryRecord> run(const ModelSpec& model, const std::vector<std::size_t>& class_sizes,
                                  std::size_t steps, std::size_t replications, std::uint64_t seed,
                                  const RunOptions& options = {});

/// The same dynamics with rational parameters, for exact pushforwards.
struct ExactModel {
  std::vector<Rational> a;
  std::vector<std::vector<Rational>> b;
  std::vector<Rational> rho;

  std::size_t classes() const { return a.size(); }
  void validate() const;
  /// Exact rational images of the floating-point parameters.
  static ExactModel from(const ModelSpec& model);
};

/// Law after `steps` synchronous updates started from `initial`. The shape
/// must have binary alphabets and as many classes as the model.
JointLaw exact_kernel_law(const ExactModel& model, const JointLaw& initial, std::size_t steps,
                          std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace mexch
