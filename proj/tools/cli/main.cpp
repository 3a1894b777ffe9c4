// mexch: exact checks and Monte Carlo experiments for multi-class
// exchangeable systems.

#include <iostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace mexch::cli;

  CLI::App app{"Exact verification and mean-field simulation for multi-class exchangeable systems"};
  app.require_subcommand(1);

  VerifyOracleArgs verify;
  auto* verify_cmd = app.add_subcommand("verify-oracle", "Check the conditional law given the empirical "
                                                         "measure vector on random multi-exchangeable laws");
  verify_cmd->add_option("--sizes", verify.sizes, "Class sizes, comma separated")->delimiter(',')->required();
  verify_cmd->add_option("--alphabets", verify.alphabets, "Alphabet sizes, comma separated")
      ->delimiter(',')
      ->required();
  verify_cmd->add_option("--trials", verify.trials, "Random laws to check")->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed, "Seed (0 draws one from the OS)")->capture_default_str();
  verify_cmd->add_option("--cap", verify.enumeration_cap, "Configuration enumeration cap")->capture_default_str();
  verify_cmd->add_option("--perm-cap", verify.permutation_cap, "Permutation tuple cap")->capture_default_str();
  verify_cmd->add_flag("--json", verify.json, "Emit a JSON report");

  TvBoundArgs tv;
  auto* tv_cmd = app.add_subcommand("tv-bound", "Exhaustively check the with/without-replacement total "
                                                "variation bound");
  tv_cmd->add_option("--max-n", tv.max_n, "Largest class size")->capture_default_str();
  tv_cmd->add_option("--max-k", tv.max_k, "Largest tuple length")->capture_default_str();
  tv_cmd->add_option("--alphabet", tv.alphabet, "Alphabet size")->capture_default_str();

  SimulateArgs sim;
  std::string model_path;
  std::string sim_out;
  std::size_t sim_steps = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Run the mean-field particle simulator");
  sim_cmd->add_option("--model", model_path, "Model JSON file (default: bundled coupled model)");
  sim_cmd->add_option("--n", sim.n_list, "Class sizes to sweep; every class gets the same size")
      ->delimiter(',')
      ->required();
  auto* steps_opt = sim_cmd->add_option("--steps", sim_steps, "Override the model horizon");
  sim_cmd->add_option("--reps", sim.replications, "Replications per size")->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "Seed (0 draws one from the OS)")->capture_default_str();
  sim_cmd->add_option("--out", sim_out, "Output directory (default: $MEXCH_OUTPUT_DIR or ./mexch-out)");
  sim_cmd->add_option("--threads", sim.threads, "Worker threads (0 = all cores)")->capture_default_str();

  ChaosReportArgs report;
  std::string report_in;
  std::string report_out;
  auto* report_cmd = app.add_subcommand("chaos-report", "Chaoticity diagnostics from simulator output");
  report_cmd->add_option("--in", report_in, "Simulator output directory (default: $MEXCH_OUTPUT_DIR)");
  report_cmd->add_option("--out", report_out, "Report CSV path (default: <in>/report.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*verify_cmd) return cmd_verify_oracle(verify, std::cout, std::cerr);
  if (*tv_cmd) return cmd_tv_bound(tv, std::cout, std::cerr);
  if (*sim_cmd) {
    if (!model_path.empty()) sim.model_file = model_path;
    if (steps_opt->count() > 0) sim.steps = sim_steps;
    sim.out_dir = resolve_output_dir(sim_out.empty() ? std::nullopt : std::optional<std::filesystem::path>(sim_out),
                                     "mexch-out");
    return cmd_simulate(sim, std::cout, std::cerr);
  }
  if (*report_cmd) {
    report.in_dir = resolve_output_dir(
        report_in.empty() ? std::nullopt : std::optional<std::filesystem::path>(report_in), "mexch-out");
    report.out_path = report_out;
    return cmd_chaos_report(report, std::cout, std::cerr);
  }
  return kExitUsage;
}
