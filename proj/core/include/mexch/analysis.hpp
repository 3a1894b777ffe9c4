#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mexch/simulator.hpp"

namespace mexch {

/// A point estimate with its jackknife standard error. With exactly two
/// replications the jackknife is undefined and std_error is +infinity.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t replications = 0;
};

struct ClassPair {
  std::size_t first = 0;
  std::size_t second = 0;
};

struct ParticlePair {
  std::size_t first = 0;
  std::size_t second = 0;
};

/// Sample covariance (denominator R-1) across replications of
/// 1{tagged particle `particles.first` of class `classes.first` is in state 1}
/// and the same indicator for the second particle/class, at `step`.
/// Throws std::invalid_argument with fewer than two replications.
Estimate covariance_estimate(std::span<const TrajectoryRecord> records, ClassPair classes,
                             ParticlePair particles, std::size_t step);

/// Across-replication sample standard deviation of m_class (the fraction of
/// the class in state 1) at `step`.
Estimate emv_concentration(std::span<const TrajectoryRecord> records, std::size_t cls,
                           std::size_t step);

inline constexpr const char* kWithinCov = "within_cov";
inline constexpr const char* kCrossCov = "cross_cov";
inline constexpr const char* kEmvSd = "emv_sd";

struct ReportRow {
  std::size_t n = 0;
  std::string statistic;
  std::size_t class_i = 0;
  std::size_t class_j = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t replications = 0;
};

/// Per sweep size N and class i: within_cov (tagged particles 0 and 1 of
/// class i), emv_sd (class i); per class pair i < j: cross_cov (tagged
/// particle 0 of each). All at the final recorded step.
struct ChaosReport {
  std::vector<std::size_t> sweep;
  std::size_t classes = 0;
  std::vector<ReportRow> rows;

  const ReportRow& row(std::size_t n, const std::string& statistic, std::size_t i,
                       std::size_t j) const;
};

/// Pure function of the records. Keys are the sweep sizes N.
ChaosReport build_report(const std::map<std::size_t, std::vector<TrajectoryRecord>>& runs);

/// Runs the simulator at every N (all classes of size N) with the same seed
/// and the model's horizon, then builds the report. N_list must be strictly
/// increasing.
ChaosReport chaos_sweep(const ModelSpec& model, const std::vector<std::size_t>& n_list,
                        std::size_t replications, std::uint64_t seed,
                        const RunOptions& options = {});

struct Flag {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// For the decoupled model: every covariance within 4 standard errors of 0
/// and every emv_sd within a factor 2 of sqrt(p_i (1 - p_i) / N).
std::vector<Flag> independence_flags(const ChaosReport& report, const std::vector<double>& limit_p);

/// Between the smallest and largest N: |cross_cov| and |within_cov| drop by
/// more than 2 combined standard errors; emv_sd strictly decreases across the
/// whole sweep. Empty for a single-N sweep.
std::vector<Flag> decay_flags(const ChaosReport& report);

/// The model has b = 0 and rho = 1, so particles are exactly independent.
bool is_decoupled(const ModelSpec& model);

/// Law of one particle of each class at the final step of a decoupled run.
std::vector<double> decoupled_limit(const ModelSpec& model, std::size_t steps);

}  // namespace mexch
