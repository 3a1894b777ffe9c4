// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "cli/io.hpp"
#include "mexch/analysis.hpp"
#include "mexch/exact.hpp"
#include "mexch/generators.hpp"

using namespace mexch;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::vector<SystemShape> fuzz_shapes() {
  return {SystemShape::with_alphabet_sizes({3}, {3}), SystemShape::with_alphabet_sizes({2, 2}, {2, 2}),
          SystemShape::with_alphabet_sizes({3, 2}, {2, 3})};
}

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

Outcome suffstat() {
  std::size_t laws = 0, keys = 0;
  for (const auto& shape : fuzz_shapes()) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto r = verify_suffstat(random_multi_exchangeable_law(shape, seed));
      if (!r.holds || r.worst_discrepancy != 0) {
        return {false, "seed " + std::to_string(seed) + " discrepancy " + to_string(r.worst_discrepancy)};
      }
      ++laws;
      keys += r.keys_checked;
    }
  }
  return {true, std::to_string(laws) + " laws, " + std::to_string(keys) + " conditional laws, exact"};
}

Outcome tv_bound() {
  std::size_t cases = 0;
  for (std::size_t a = 1; a <= 3; ++a) {
    for (std::size_t n = 1; n <= 6; ++n) {
      for (std::size_t k = 1; k <= std::min<std::size_t>(n, 3); ++k) {
        const auto r = tv_bound_check(n, k, a);
        ++cases;
        if (!r.holds) return {false, "violated at A=" + std::to_string(a) + " N=" + std::to_string(n)};
      }
    }
  }
  const auto eq = tv_bound_check(2, 2, 2);
  const bool equality = eq.worst_tv == 1 && eq.intermediate_bound == 1 && eq.final_bound == 1 &&
                        eq.worst_states == Tuple{0, 1};
  return {equality, std::to_string(cases) + " (A,N,k) cases; (N,k)=(2,2) worst_tv=" + to_string(eq.worst_tv)};
}

Outcome prf1() {
  std::size_t checks = 0;
  for (const auto& shape : fuzz_shapes()) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const auto law = random_multi_exchangeable_law(shape, seed);
      for (std::size_t k = 1; k <= 2; ++k) {
        const auto r = verify_prf1(law, k);
        if (!r.holds) return {false, "seed " + std::to_string(seed) + " k=" + std::to_string(k)};
        checks += r.indicator_count;
      }
    }
  }
  return {true, "150 laws, " + std::to_string(checks) + " indicator identities, exact"};
}

Outcome kernel_preservation() {
  const auto shape = SystemShape::with_alphabet_sizes({2, 2}, {2, 2});
  const std::vector<Rational> grid{Rational(0), Rational(1, 2), Rational(1)};
  std::size_t laws = 0;
  for (const auto& a : grid) {
    for (const auto& b : grid) {
      for (const auto& rho : grid) {
        const ExactModel model{{a, a}, {{b, b}, {b, b}}, {rho, rho}};
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
          auto law = random_multi_exchangeable_law(shape, seed);
          for (int t = 0; t < 3; ++t) {
            law = exact_kernel_law(model, law, 1);
            ++laws;
            if (!is_multi_exchangeable(law)) return {false, "a=" + to_string(a) + " b=" + to_string(b)};
          }
        }
      }
    }
  }
  return {true, "27 parameter points x 3 initial laws x 3 steps = " + std::to_string(laws) + " laws"};
}

Outcome coupled_decay() {
  const auto report = chaos_sweep(default_coupled_model(), {10, 100, 1000}, 200, 1);
  bool cross = true, within = true, emv = true;
  for (const auto& f : decay_flags(report)) {
    std::printf("      %s %s  %s\n", f.passed ? "ok  " : "miss", f.name.c_str(), f.detail.c_str());
    if (f.name.rfind("cross_cov", 0) == 0) cross = cross && f.passed;
    if (f.name.rfind("within_cov", 0) == 0) within = within && f.passed;
    if (f.name.rfind("emv_sd", 0) == 0) emv = emv && f.passed;
  }
  auto mark = [](bool ok) { return ok ? "pass" : "fail"; };
  return {cross && within && emv, std::string("(a) cross-class decay ") + mark(cross) + ", (b) within-class decay " +
                                      mark(within) + ", (c) EMV concentration decreasing " + mark(emv) +
                                      "; N={10,100,1000}, 200 replications, seed 1"};
}

Outcome decoupled_independence() {
  const auto model = decoupled_model();
  const auto report = chaos_sweep(model, {10, 100, 1000}, 100, 1);
  const auto flags = independence_flags(report, decoupled_limit(model, model.steps));
  std::size_t passed = 0;
  for (const auto& f : flags) {
    if (f.passed) {
      ++passed;
    } else {
      std::printf("      miss %s  %s\n", f.name.c_str(), f.detail.c_str());
    }
  }
  return {passed == flags.size(), std::to_string(passed) + "/" + std::to_string(flags.size()) + " flags"};
}

Outcome directing_measure() {
  const auto shape = SystemShape::with_alphabet_sizes({10000}, {2});
  const MixtureSpec spec{{{Rational(1, 2), {{Rational(3, 10), Rational(7, 10)}}},
                          {Rational(1, 2), {{Rational(4, 5), Rational(1, 5)}}}}};
  std::size_t close = 0;
  const auto draws = sample_mixture(spec, shape, 1000, 1);
  for (const auto& d : draws) {
    const auto est = estimate_directing_measure_fp(d.config.classes[0], 2);
    double l1 = 0;
    for (std::size_t s = 0; s < 2; ++s) {
      l1 += std::abs(est[s] - static_cast<double>(spec.components[d.component].class_freqs[0][s]));
    }
    close += l1 <= 0.05;
  }
  return {close >= 990, std::to_string(close) + "/1000 trials within L1 0.05"};
}

Outcome determinism() {
  using namespace mexch::cli;
  const auto root = fs::temp_directory_path() / "mexch_acceptance_determinism";
  fs::remove_all(root);
  std::vector<std::string> outputs[2];
  for (int pass = 0; pass < 2; ++pass) {
    const auto dir = root / std::to_string(pass);
    SimulateArgs sim;
    sim.n_list = {10};
    sim.replications = 2;
    sim.seed = 1;
    sim.out_dir = dir;
    std::ostringstream out, err;
    if (cmd_simulate(sim, out, err) != kExitOk) return {false, "simulate failed: " + err.str()};
    if (cmd_chaos_report(ChaosReportArgs{dir, {}}, out, err) != kExitOk) return {false, "report failed: " + err.str()};
    for (const char* name : {"trajectory_N10.csv", "tagged_N10.csv", "config.json", "report.csv", "report.json"}) {
      outputs[pass].push_back(read_file(dir / name));
    }
  }
  const fs::path golden = MEXCH_GOLDEN_DIR;
  bool matches_golden = true;
  std::size_t k = 0;
  for (const char* name : {"trajectory_N10.csv", "tagged_N10.csv", "config.json", "report.csv", "report.json"}) {
    matches_golden = matches_golden && outputs[0][k++] == read_file(golden / name);
  }
  fs::remove_all(root);
  const bool repeat = outputs[0] == outputs[1];
  return {repeat && matches_golden, std::string("two runs ") + (repeat ? "identical" : "differ") + ", golden files " +
                                        (matches_golden ? "match" : "differ")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
    double budget_s;
  };
  const std::vector<Criterion> criteria{
      {"1 conditional law given the EMV (exact fuzz)", suffstat, 60},
      {"2 with/without-replacement TV bound (exhaustive)", tv_bound, 60},
      {"3 first-k-particles identity (exact fuzz)", prf1, 0},
      {"4 kernel preserves multi-exchangeability", kernel_preservation, 120},
      {"5 coupled model chaoticity decay", coupled_decay, 300},
      {"6 decoupled model independence", decoupled_independence, 0},
      {"7 directing-measure estimator", directing_measure, 0},
      {"8 CLI determinism and golden files", determinism, 0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && elapsed > c.budget_s) {
      o.passed = false;
      o.detail += "; over the " + seconds(c.budget_s) + " budget";
    }
    std::printf("%s [%s] %s (%s)\n", o.passed ? "PASS" : "FAIL", c.name, o.detail.c_str(), seconds(elapsed).c_str());
    std::fflush(stdout);
    failures += o.passed ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
