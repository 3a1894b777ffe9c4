#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mexch/types.hpp"

namespace mexch::cli {

enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitUsage = 2 };

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "MEXCH_OUTPUT_DIR";

/// 0 means "draw from std::random_device"; the resolved value is echoed.
std::uint64_t resolve_seed(std::uint64_t seed);

/// --out if given, else $MEXCH_OUTPUT_DIR, else `fallback`.
std::filesystem::path resolve_output_dir(const std::optional<std::filesystem::path>& given,
                                         const std::filesystem::path& fallback);

struct VerifyOracleArgs {
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> alphabets;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  std::uint64_t permutation_cap = kDefaultPermutationCap;
  bool json = false;
};

/// Trial t checks verify_suffstat on random_multi_exchangeable_law(shape,
/// derive_seed(seed, t)).
int cmd_verify_oracle(const VerifyOracleArgs& args, std::ostream& out, std::ostream& err);

struct TvBoundArgs {
  std::size_t max_n = 6;
  std::size_t max_k = 3;
  std::size_t alphabet = 2;
};

/// CSV on `out`: N,k,worst_tv,intermediate_bound,final_bound.
int cmd_tv_bound(const TvBoundArgs& args, std::ostream& out, std::ostream& err);

struct SimulateArgs {
  std::optional<std::filesystem::path> model_file;  ///< default coupled model when empty
  std::vector<std::size_t> n_list;
  std::optional<std::size_t> steps;  ///< overrides the model's horizon
  std::size_t replications = 200;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;
  std::size_t threads = 1;
};

/// Writes trajectory_N<n>.csv, tagged_N<n>.csv and config.json into out_dir
/// and echoes the resolved config on `out`.
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);

struct ChaosReportArgs {
  std::filesystem::path in_dir;
  /// Report CSV path; the summary goes next to it with a .json extension.
  std::filesystem::path out_path;
};

int cmd_chaos_report(const ChaosReportArgs& args, std::ostream& out, std::ostream& err);

}  // namespace mexch::cli
