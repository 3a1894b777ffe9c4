#include "cli/commands.hpp"

#include <cstdlib>
#include <ostream>
#include <random>
#include <sstream>

#include "cli/io.hpp"
#include "mexch/analysis.hpp"
#include "mexch/exact.hpp"
#include "mexch/generators.hpp"

namespace mexch::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
  return out;
}

}  // namespace

std::uint64_t resolve_seed(std::uint64_t seed) {
  if (seed != 0) return seed;
  std::random_device rd;
  std::uint64_t s = 0;
  while (s == 0) s = (std::uint64_t{rd()} << 32) ^ rd();
  return s;
}

fs::path resolve_output_dir(const std::optional<fs::path>& given, const fs::path& fallback) {
  if (given && !given->empty()) return *given;
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  return fallback;
}

int cmd_verify_oracle(const VerifyOracleArgs& args, std::ostream& out, std::ostream& err) {
  if (args.sizes.empty() || args.sizes.size() != args.alphabets.size()) {
    err << "verify-oracle: --sizes and --alphabets must list one value per class\n";
    return kExitUsage;
  }
  std::optional<SystemShape> shape;
  try {
    shape.emplace(SystemShape::with_alphabet_sizes(args.sizes, args.alphabets));
  } catch (const std::invalid_argument& e) {
    err << "verify-oracle: " << e.what() << '\n';
    return kExitUsage;
  }
  if (shape->configuration_count() > args.enumeration_cap) {
    err << "verify-oracle: state space too large: " << shape->configuration_count()
        << " configurations exceed the enumeration cap of " << args.enumeration_cap << '\n';
    return kExitUsage;
  }
  if (shape->permutation_count() > args.permutation_cap) {
    err << "verify-oracle: prod N_i! = " << shape->permutation_count() << " exceeds the permutation cap of "
        << args.permutation_cap << '\n';
    return kExitUsage;
  }

  const auto seed = resolve_seed(args.seed);
  std::size_t passed = 0, keys = 0;
  json counterexamples = json::array();
  for (std::size_t t = 0; t < args.trials; ++t) {
    const auto law = random_multi_exchangeable_law(*shape, derive_seed(seed, t), args.enumeration_cap,
                                                   args.permutation_cap);
    const auto report = verify_suffstat(law);
    keys += report.keys_checked;
    if (report.holds) {
      ++passed;
    } else {
      counterexamples.push_back(json{{"trial", t},
                                     {"worst_discrepancy", to_string(report.worst_discrepancy)},
                                     {"law", law_to_json(law)}});
    }
  }

  const bool ok = passed == args.trials;
  if (args.json) {
    out << json{{"command", "verify-oracle"},
                {"seed", seed},
                {"shape", shape_to_json(*shape)},
                {"trials", args.trials},
                {"passed", passed},
                {"keys_checked", keys},
                {"all_passed", ok},
                {"counterexamples", counterexamples}}
               .dump(2)
        << '\n';
  } else {
    out << "verify-oracle seed=" << seed << " sizes=" << join(args.sizes) << " alphabets=" << join(args.alphabets)
        << " trials=" << args.trials << '\n'
        << "passed " << passed << "/" << args.trials << " (conditional laws compared: " << keys << ")\n";
    for (const auto& c : counterexamples) out << "counterexample " << c.dump() << '\n';
  }
  return ok ? kExitOk : kExitFailed;
}

int cmd_tv_bound(const TvBoundArgs& args, std::ostream& out, std::ostream& err) {
  if (args.max_n == 0 || args.max_k == 0 || args.alphabet == 0 || args.max_k > args.max_n) {
    err << "tv-bound: need 1 <= max-k <= max-n and alphabet >= 1\n";
    return kExitUsage;
  }
  bool all = true;
  out << "N,k,worst_tv,intermediate_bound,final_bound\n";
  for (std::size_t n = 1; n <= args.max_n; ++n) {
    for (std::size_t k = 1; k <= std::min(n, args.max_k); ++k) {
      const auto r = tv_bound_check(n, k, args.alphabet);
      all = all && r.holds;
      out << n << ',' << k << ',' << to_string(r.worst_tv) << ',' << to_string(r.intermediate_bound) << ','
          << to_string(r.final_bound) << '\n';
    }
  }
  return all ? kExitOk : kExitFailed;
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  ModelSpec model;
  try {
    model = args.model_file ? read_model_file(*args.model_file) : default_coupled_model();
  } catch (const InputError& e) {
    err << "simulate: " << e.what() << '\n';
    return kExitUsage;
  }
  if (args.steps) model.steps = *args.steps;
  if (args.n_list.empty()) {
    err << "simulate: --n needs at least one class size\n";
    return kExitUsage;
  }
  for (const auto n : args.n_list) {
    if (n < kDefaultTaggedParticles) {
      err << "simulate: class size " << n << " is smaller than the " << kDefaultTaggedParticles
          << " tagged particles\n";
      return kExitUsage;
    }
  }
  if (args.replications < 1) {
    err << "simulate: --reps must be positive\n";
    return kExitUsage;
  }

  const auto seed = resolve_seed(args.seed);
  const json config{{"seed", seed},
                    {"model", model_to_json(model)},
                    {"n", args.n_list},
                    {"replications", args.replications},
                    {"steps", model.steps},
                    {"tagged", kDefaultTaggedParticles}};
  try {
    fs::create_directories(args.out_dir);
    for (const auto n : args.n_list) {
      const auto records = run(model, std::vector<std::size_t>(model.classes, n), model.steps, args.replications,
                               seed, RunOptions{kDefaultTaggedParticles, args.threads});
      std::ostringstream traj, tags;
      write_trajectory_csv(traj, records);
      write_tagged_csv(tags, records);
      write_file(args.out_dir / trajectory_file_name(n), traj.str());
      write_file(args.out_dir / tagged_file_name(n), tags.str());
    }
    write_file(args.out_dir / kConfigFileName, config.dump(2) + "\n");
  } catch (const InputError& e) {
    err << "simulate: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "simulate: " << e.what() << '\n';
    return kExitUsage;
  }
  out << config.dump(2) << '\n';
  return kExitOk;
}

int cmd_chaos_report(const ChaosReportArgs& args, std::ostream& out, std::ostream& err) {
  const auto config_path = args.in_dir / kConfigFileName;
  if (!fs::is_directory(args.in_dir) || !fs::exists(config_path)) {
    err << "chaos-report: " << args.in_dir.string() << " does not contain simulator output (" << kConfigFileName
        << ")\n";
    return kExitUsage;
  }
  try {
    const auto config = json::parse(read_file(config_path));
    const auto model = model_from_json(config.at("model"));
    const auto seed = config.at("seed").get<std::uint64_t>();
    const auto n_list = config.at("n").get<std::vector<std::size_t>>();
    if (n_list.empty()) throw InputError("config lists no sweep sizes");

    std::map<std::size_t, std::vector<TrajectoryRecord>> runs;
    for (const auto n : n_list) {
      std::istringstream traj(read_file(args.in_dir / trajectory_file_name(n)));
      std::istringstream tags(read_file(args.in_dir / tagged_file_name(n)));
      runs[n] = read_records(traj, tags);
    }
    const auto report = build_report(runs);

    const bool decoupled = is_decoupled(model);
    const auto flags = decoupled ? independence_flags(report, decoupled_limit(model, model.steps))
                                 : decay_flags(report);

    const fs::path csv_path = args.out_path.empty() ? args.in_dir / "report.csv" : args.out_path;
    auto json_path = csv_path;
    json_path.replace_extension(".json");
    if (csv_path.has_parent_path()) fs::create_directories(csv_path.parent_path());
    std::ostringstream csv;
    write_report_csv(csv, report, seed);
    write_file(csv_path, csv.str());
    const auto summary = report_summary(report, flags, seed, decoupled ? "decoupled" : "coupled");
    write_file(json_path, summary.dump(2) + "\n");

    bool all = true;
    for (const auto& f : flags) {
      out << (f.passed ? "PASS " : "FAIL ") << f.name << "  " << f.detail << '\n';
      all = all && f.passed;
    }
    out << "report: " << csv_path.string() << "\nsummary: " << json_path.string() << '\n';
    return all ? kExitOk : kExitFailed;
  } catch (const InputError& e) {
    err << "chaos-report: " << e.what() << '\n';
  } catch (const json::exception& e) {
    err << "chaos-report: corrupt config: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "chaos-report: " << e.what() << '\n';
  } catch (const fs::filesystem_error& e) {
    err << "chaos-report: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace mexch::cli
