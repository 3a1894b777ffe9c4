#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/io.hpp"
#include "mexch/analysis.hpp"

using namespace mexch;
using namespace mexch::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kGolden = MEXCH_GOLDEN_DIR;

// Fresh directory per test, removed on exit.
class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() / (std::string("mexch_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& leaf) const { return path_ / leaf; }

 private:
  fs::path path_;
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

template <typename Args, typename Cmd>
Result call(Cmd cmd, const Args& args) {
  std::ostringstream out, err;
  const int code = cmd(args, out, err);
  return {code, out.str(), err.str()};
}

SimulateArgs golden_simulation(const fs::path& out_dir) {
  SimulateArgs args;
  args.n_list = {10};
  args.replications = 2;
  args.seed = 1;
  args.out_dir = out_dir;
  return args;
}

}  // namespace

// --- verify-oracle ---------------------------------------------------------

TEST(VerifyOracle, HundredTrialsPass) {
  const auto r = call(cmd_verify_oracle, VerifyOracleArgs{{2, 2}, {2, 2}, 100, 7});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("passed 100/100"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("seed=7"), std::string::npos);
}

TEST(VerifyOracle, ZeroTrials) {
  VerifyOracleArgs args{{3}, {3}, 0, 7};
  args.json = true;
  const auto r = call(cmd_verify_oracle, args);
  EXPECT_EQ(r.code, kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("trials"), 0);
  EXPECT_EQ(j.at("passed"), 0);
  EXPECT_EQ(j.at("all_passed"), true);
  EXPECT_TRUE(j.at("counterexamples").empty());
}

TEST(VerifyOracle, CapExceeded) {
  const auto r = call(cmd_verify_oracle, VerifyOracleArgs{{16}, {3}, 1, 7});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("state space too large"), std::string::npos) << r.err;
  VerifyOracleArgs perms{{10}, {1}, 1, 7};  // 10! tuples, one configuration
  EXPECT_EQ(call(cmd_verify_oracle, perms).code, kExitUsage);
}

TEST(VerifyOracle, MalformedShape) {
  EXPECT_EQ(call(cmd_verify_oracle, VerifyOracleArgs{{2, 2}, {2}, 1, 7}).code, kExitUsage);
  EXPECT_EQ(call(cmd_verify_oracle, VerifyOracleArgs{{0}, {2}, 1, 7}).code, kExitUsage);
}

TEST(VerifyOracle, ZeroSeedIsResolvedAndEchoed) {
  VerifyOracleArgs args{{2}, {2}, 1, 0};
  args.json = true;
  const auto j = nlohmann::json::parse(call(cmd_verify_oracle, args).out);
  EXPECT_NE(j.at("seed").get<std::uint64_t>(), 0u);
}

// --- tv-bound --------------------------------------------------------------

TEST(TvBound, ThreeSymbolTable) {
  const auto r = call(cmd_tv_bound, TvBoundArgs{6, 3, 3});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("N,k,worst_tv,intermediate_bound,final_bound\n", 0), 0u);
  EXPECT_NE(r.out.find("\n2,2,1,1,1\n"), std::string::npos);
  // Three distinct atoms reach the bound at N=3.
  EXPECT_NE(r.out.find("\n3,2,2/3,2/3,2/3\n"), std::string::npos);
  EXPECT_NE(r.out.find("\n6,3,22/45,"), std::string::npos);
}

TEST(TvBound, BinaryTable) {
  const auto r = call(cmd_tv_bound, TvBoundArgs{3, 2, 2});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out,
            "N,k,worst_tv,intermediate_bound,final_bound\n"
            "1,1,0,0,0\n2,1,0,0,0\n2,2,1,1,1\n3,1,0,0,0\n3,2,4/9,2/3,2/3\n");
}

TEST(TvBound, KOneOnly) {
  const auto r = call(cmd_tv_bound, TvBoundArgs{5, 1, 3});
  EXPECT_EQ(r.code, kExitOk);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_EQ(line.substr(line.find(",1,") + 3), "0,0,0");
  }
  EXPECT_EQ(rows, 5);
}

TEST(TvBound, BadRanges) {
  EXPECT_EQ(call(cmd_tv_bound, TvBoundArgs{2, 3, 2}).code, kExitUsage);
  EXPECT_EQ(call(cmd_tv_bound, TvBoundArgs{0, 0, 2}).code, kExitUsage);
  EXPECT_EQ(call(cmd_tv_bound, TvBoundArgs{3, 2, 0}).code, kExitUsage);
}

// --- simulate --------------------------------------------------------------

TEST(Simulate, GoldenFiles) {
  TempDir dir;
  const auto r = call(cmd_simulate, golden_simulation(dir.path()));
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* name : {"trajectory_N10.csv", "tagged_N10.csv", "config.json"}) {
    EXPECT_EQ(read_file(dir / name), read_file(kGolden / name)) << name;
  }
  EXPECT_EQ(r.out, read_file(kGolden / "config.json"));
}

TEST(Simulate, RepeatedRunsAreByteIdentical) {
  TempDir a, b;
  auto args = golden_simulation(a.path());
  args.n_list = {4, 9};
  args.replications = 5;
  args.threads = 3;
  ASSERT_EQ(call(cmd_simulate, args).code, kExitOk);
  args.out_dir = b.path();
  args.threads = 1;
  ASSERT_EQ(call(cmd_simulate, args).code, kExitOk);
  for (const char* name : {"trajectory_N4.csv", "tagged_N9.csv", "config.json"}) {
    EXPECT_EQ(read_file(a / name), read_file(b / name)) << name;
  }
}

TEST(Simulate, MissingRho) {
  TempDir dir;
  auto model = model_to_json(default_coupled_model());
  model.erase("rho");
  write_file(dir / "model.json", model.dump());
  auto args = golden_simulation(dir / "out");
  args.model_file = dir / "model.json";
  const auto r = call(cmd_simulate, args);
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("\"rho\""), std::string::npos) << r.err;
}

TEST(Simulate, SchemaViolations) {
  TempDir dir;
  auto args = golden_simulation(dir / "out");
  args.model_file = dir / "model.json";
  auto bad = model_to_json(default_coupled_model());
  bad["b"] = {{0.1, 0.2}};
  write_file(dir / "model.json", bad.dump());
  EXPECT_EQ(call(cmd_simulate, args).code, kExitUsage);
  write_file(dir / "model.json", "{ not json");
  EXPECT_EQ(call(cmd_simulate, args).code, kExitUsage);
  args.model_file = dir / "absent.json";
  EXPECT_EQ(call(cmd_simulate, args).code, kExitUsage);
}

TEST(Simulate, BundledModelsParse) {
  EXPECT_EQ(model_to_json(read_model_file(MEXCH_MODELS_DIR "/default_coupled.json")),
            model_to_json(default_coupled_model()));
  EXPECT_TRUE(is_decoupled(read_model_file(MEXCH_MODELS_DIR "/decoupled.json")));
}

TEST(Simulate, ZeroStepsWritesInitialConditionOnly) {
  TempDir dir;
  auto args = golden_simulation(dir.path());
  args.steps = 0;
  ASSERT_EQ(call(cmd_simulate, args).code, kExitOk);
  std::istringstream traj(read_file(dir / "trajectory_N10.csv"));
  std::string line;
  std::size_t rows = 0;
  while (std::getline(traj, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("replication", 0) == 0) continue;
    ++rows;
    EXPECT_EQ(line.substr(line.find(',') + 1, 2), "0,");
  }
  EXPECT_EQ(rows, 2u * 2u * 2u);  // replications x classes x symbols
}

TEST(Simulate, SeedEchoedIntoEveryArtifact) {
  TempDir dir;
  auto args = golden_simulation(dir.path());
  args.seed = 0;
  const auto r = call(cmd_simulate, args);
  ASSERT_EQ(r.code, kExitOk);
  const auto seed = nlohmann::json::parse(r.out).at("seed").get<std::uint64_t>();
  EXPECT_NE(seed, 0u);
  const auto tag = "seed=" + std::to_string(seed);
  EXPECT_NE(read_file(dir / "trajectory_N10.csv").find(tag), std::string::npos);
  EXPECT_NE(read_file(dir / "tagged_N10.csv").find(tag), std::string::npos);
}

TEST(Simulate, ClassSmallerThanTaggedSet) {
  TempDir dir;
  auto args = golden_simulation(dir.path());
  args.n_list = {3};
  EXPECT_EQ(call(cmd_simulate, args).code, kExitUsage);
}

TEST(OutputDir, EnvironmentFallback) {
  ::unsetenv(kOutputDirEnv);
  EXPECT_EQ(resolve_output_dir(std::nullopt, "fallback"), fs::path("fallback"));
  ::setenv(kOutputDirEnv, "/tmp/from-env", 1);
  EXPECT_EQ(resolve_output_dir(std::nullopt, "fallback"), fs::path("/tmp/from-env"));
  EXPECT_EQ(resolve_output_dir(fs::path("given"), "fallback"), fs::path("given"));
  ::unsetenv(kOutputDirEnv);
}

// --- chaos-report ----------------------------------------------------------

TEST(ChaosReport, GoldenFiles) {
  TempDir dir;
  for (const char* name : {"trajectory_N10.csv", "tagged_N10.csv", "config.json"}) {
    fs::copy_file(kGolden / name, dir / name);
  }
  const auto r = call(cmd_chaos_report, ChaosReportArgs{dir.path(), {}});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(read_file(dir / "report.csv"), read_file(kGolden / "report.csv"));
  EXPECT_EQ(read_file(dir / "report.json"), read_file(kGolden / "report.json"));
}

TEST(ChaosReport, EmptyDirectory) {
  TempDir dir;
  const auto r = call(cmd_chaos_report, ChaosReportArgs{dir.path(), {}});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_EQ(call(cmd_chaos_report, ChaosReportArgs{dir / "missing", {}}).code, kExitUsage);
}

TEST(ChaosReport, CorruptInputs) {
  TempDir dir;
  ASSERT_EQ(call(cmd_simulate, golden_simulation(dir.path())).code, kExitOk);
  const auto traj = read_file(dir / "trajectory_N10.csv");
  write_file(dir / "trajectory_N10.csv", traj.substr(0, traj.size() / 2));
  EXPECT_EQ(call(cmd_chaos_report, ChaosReportArgs{dir.path(), {}}).code, kExitUsage);
  write_file(dir / "trajectory_N10.csv", traj);
  fs::remove(dir / "tagged_N10.csv");
  EXPECT_EQ(call(cmd_chaos_report, ChaosReportArgs{dir.path(), {}}).code, kExitUsage);
  write_file(dir / "config.json", "[]");
  EXPECT_EQ(call(cmd_chaos_report, ChaosReportArgs{dir.path(), {}}).code, kExitUsage);
}

TEST(ChaosReport, DecoupledRunPassesIndependenceFlags) {
  TempDir dir;
  auto args = golden_simulation(dir.path());
  args.model_file = MEXCH_MODELS_DIR "/decoupled.json";
  args.n_list = {10, 100};
  args.replications = 100;
  ASSERT_EQ(call(cmd_simulate, args).code, kExitOk);
  const auto r = call(cmd_chaos_report, ChaosReportArgs{dir.path(), dir / "sub" / "r.csv"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("PASS within_cov_zero[N=10,0,0]"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  const auto summary = nlohmann::json::parse(read_file(dir / "sub" / "r.json"));
  EXPECT_EQ(summary.at("all_passed"), true);
  EXPECT_EQ(summary.at("model"), "decoupled");
  EXPECT_EQ(summary.at("seed"), 1);
}

TEST(ChaosReport, CoupledSweepReportsDecayFlags) {
  TempDir dir;
  auto args = golden_simulation(dir.path());
  args.n_list = {10, 40};
  args.replications = 20;
  ASSERT_EQ(call(cmd_simulate, args).code, kExitOk);
  const auto r = call(cmd_chaos_report, ChaosReportArgs{dir.path(), {}});
  EXPECT_TRUE(r.code == kExitOk || r.code == kExitFailed) << r.err;
  EXPECT_NE(r.out.find("cross_cov_decay[0,1]"), std::string::npos);
  EXPECT_NE(r.out.find("emv_sd_decreasing[1]"), std::string::npos);
}

TEST(ChaosReport, PureFunctionOfRecords) {
  // The report from CSVs equals the report from the in-memory records.
  const auto model = default_coupled_model();
  std::map<std::size_t, std::vector<TrajectoryRecord>> direct, reloaded;
  for (const std::size_t n : {6u, 12u}) {
    direct[n] = run(model, {n, n}, 7, 9, 4);
    std::stringstream traj, tags;
    write_trajectory_csv(traj, direct[n]);
    write_tagged_csv(tags, direct[n]);
    reloaded[n] = read_records(traj, tags);
    EXPECT_EQ(reloaded[n], direct[n]);
  }
  std::ostringstream a, b;
  write_report_csv(a, build_report(direct), 4);
  write_report_csv(b, build_report(reloaded), 4);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Io, FormatDouble) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(0.5), "0.5");
}
