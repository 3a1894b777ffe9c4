#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "mexch/analysis.hpp"
#include "mexch/joint_law.hpp"
#include "mexch/simulator.hpp"

namespace mexch::cli {

/// Bad user input: malformed files, schema violations, missing paths.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// printf "%.17g".
std::string format_double(double x);

nlohmann::json shape_to_json(const SystemShape& shape);
/// {"shape": ..., "weights": [{"config": [[...], ...], "p": "a/b"}, ...]}
nlohmann::json law_to_json(const JointLaw& law);

/// Schema: {"classes": int, "a": [C], "b": [C][C], "rho": [C], "q": [C],
/// "steps": int}. Throws InputError naming the missing or invalid field.
ModelSpec model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const ModelSpec& model);
ModelSpec read_model_file(const std::filesystem::path& path);

/// Per-N file names inside a simulation output directory.
std::string trajectory_file_name(std::size_t n);
std::string tagged_file_name(std::size_t n);
inline constexpr const char* kConfigFileName = "config.json";

/// "# mexch <kind> seed=S sizes=N1,N2 replications=R steps=T" then the
/// header and rows (replication, step, class, symbol, frequency).
void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRecord>& records);
/// Same preamble; rows (replication, step, class, particle, state).
void write_tagged_csv(std::ostream& out, const std::vector<TrajectoryRecord>& records);

/// Rebuilds records from the two CSVs. Throws InputError on any mismatch.
std::vector<TrajectoryRecord> read_records(std::istream& trajectory, std::istream& tagged);

/// Header: N,statistic,class_i,class_j,estimate,stderr,replications.
void write_report_csv(std::ostream& out, const ChaosReport& report, std::uint64_t seed);

nlohmann::json report_summary(const ChaosReport& report, const std::vector<Flag>& flags,
                              std::uint64_t seed, const std::string& model_kind);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace mexch::cli
