#include "mexch/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace mexch {

namespace {

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void require_replications(std::span<const TrajectoryRecord> records, std::size_t step) {
  if (records.size() < 2) throw std::invalid_argument("need at least 2 replications");
  for (const auto& rec : records) {
    if (step >= rec.steps.size()) throw std::invalid_argument("step beyond the recorded horizon");
  }
}

double tagged_indicator(const TrajectoryRecord& rec, std::size_t step, std::size_t cls,
                        std::size_t particle) {
  const auto& tagged = rec.steps[step].tagged.at(cls);
  if (particle >= tagged.size()) throw std::invalid_argument("particle is not tagged");
  return tagged[particle] == 1 ? 1.0 : 0.0;
}

// Sample covariance with denominator n - 1, from centred sums.
double covariance(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - mx) * (y[k] - my);
  return s / (n - 1.0);
}

// Jackknife standard error of `stat` over paired samples.
template <typename Stat>
double jackknife_se(const std::vector<double>& x, const std::vector<double>& y, Stat stat) {
  const auto n = x.size();
  if (n < 3) return std::numeric_limits<double>::infinity();
  std::vector<double> loo(n);
  std::vector<double> xs, ys;
  xs.reserve(n - 1);
  ys.reserve(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    xs.clear();
    ys.clear();
    for (std::size_t l = 0; l < n; ++l) {
      if (l == k) continue;
      xs.push_back(x[l]);
      ys.push_back(y[l]);
    }
    loo[k] = stat(xs, ys);
  }
  double mean = 0.0;
  for (const auto v : loo) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (const auto v : loo) ss += (v - mean) * (v - mean);
  return std::sqrt(static_cast<double>(n - 1) / static_cast<double>(n) * ss);
}

double sample_sd(std::span<const double> x, std::span<const double>) {
  return std::sqrt(std::max(0.0, covariance(x, x)));
}

}  // namespace

Estimate covariance_estimate(std::span<const TrajectoryRecord> records, ClassPair classes,
                             ParticlePair particles, std::size_t step) {
  require_replications(records, step);
  std::vector<double> x, y;
  for (const auto& rec : records) {
    x.push_back(tagged_indicator(rec, step, classes.first, particles.first));
    y.push_back(tagged_indicator(rec, step, classes.second, particles.second));
  }
  Estimate e;
  e.value = covariance(x, y);
  e.std_error = jackknife_se(x, y, [](const auto& a, const auto& b) { return covariance(a, b); });
  e.replications = records.size();
  return e;
}

Estimate emv_concentration(std::span<const TrajectoryRecord> records, std::size_t cls,
                           std::size_t step) {
  require_replications(records, step);
  std::vector<double> m;
  for (const auto& rec : records) m.push_back(rec.steps[step].freqs.at(cls).at(1));
  Estimate e;
  e.value = sample_sd(m, m);
  e.std_error = jackknife_se(m, m, [](const auto& a, const auto& b) { return sample_sd(a, b); });
  e.replications = records.size();
  return e;
}

const ReportRow& ChaosReport::row(std::size_t n, const std::string& statistic, std::size_t i,
                                  std::size_t j) const {
  const auto it = std::find_if(rows.begin(), rows.end(), [&](const ReportRow& r) {
    return r.n == n && r.statistic == statistic && r.class_i == i && r.class_j == j;
  });
  if (it == rows.end()) {
    throw std::out_of_range("no report row " + statistic + " N=" + std::to_string(n));
  }
  return *it;
}

ChaosReport build_report(const std::map<std::size_t, std::vector<TrajectoryRecord>>& runs) {
  if (runs.empty()) throw std::invalid_argument("no simulator runs to report on");
  ChaosReport report;
  for (const auto& [n, records] : runs) {
    if (records.empty()) throw std::invalid_argument("sweep size " + std::to_string(n) + " has no records");
    const auto classes = records.front().class_sizes.size();
    if (report.classes == 0) report.classes = classes;
    if (classes != report.classes) throw std::invalid_argument("runs disagree on the class count");
    const auto step = records.front().steps.size() - 1;
    report.sweep.push_back(n);

    auto add = [&](const char* stat, std::size_t i, std::size_t j, const Estimate& e) {
      report.rows.push_back(ReportRow{n, stat, i, j, e.value, e.std_error, e.replications});
    };
    for (std::size_t i = 0; i < classes; ++i) {
      add(kWithinCov, i, i, covariance_estimate(records, {i, i}, {0, 1}, step));
    }
    for (std::size_t i = 0; i < classes; ++i) {
      for (std::size_t j = i + 1; j < classes; ++j) {
        add(kCrossCov, i, j, covariance_estimate(records, {i, j}, {0, 0}, step));
      }
    }
    for (std::size_t i = 0; i < classes; ++i) add(kEmvSd, i, i, emv_concentration(records, i, step));
  }
  return report;
}

ChaosReport chaos_sweep(const ModelSpec& model, const std::vector<std::size_t>& n_list,
                        std::size_t replications, std::uint64_t seed, const RunOptions& options) {
  if (n_list.empty()) throw std::invalid_argument("empty sweep");
  for (std::size_t k = 1; k < n_list.size(); ++k) {
    if (n_list[k] <= n_list[k - 1]) throw std::invalid_argument("sweep sizes must be strictly increasing");
  }
  std::map<std::size_t, std::vector<TrajectoryRecord>> runs;
  for (const auto n : n_list) {
    runs[n] = run(model, std::vector<std::size_t>(model.classes, n), model.steps, replications, seed, options);
  }
  return build_report(runs);
}

std::vector<Flag> independence_flags(const ChaosReport& report, const std::vector<double>& limit_p) {
  std::vector<Flag> flags;
  for (const auto& r : report.rows) {
    const std::string where = "[N=" + std::to_string(r.n) + "," + std::to_string(r.class_i) + "," +
                              std::to_string(r.class_j) + "]";
    if (r.statistic == kEmvSd) {
      const double p = limit_p.at(r.class_i);
      const double expected = std::sqrt(p * (1.0 - p) / static_cast<double>(r.n));
      const bool ok = expected == 0.0 ? r.estimate == 0.0
                                      : r.estimate >= 0.5 * expected && r.estimate <= 2.0 * expected;
      flags.push_back({"emv_sd_binomial" + where, ok,
                       "estimate " + fmt_double(r.estimate) + " vs binomial " + fmt_double(expected)});
    } else {
      const bool ok = std::abs(r.estimate) <= 4.0 * r.std_error;
      flags.push_back({r.statistic + "_zero" + where, ok,
                       "estimate " + fmt_double(r.estimate) + " stderr " + fmt_double(r.std_error)});
    }
  }
  return flags;
}

std::vector<Flag> decay_flags(const ChaosReport& report) {
  std::vector<Flag> flags;
  if (report.sweep.size() < 2) return flags;
  const auto lo = report.sweep.front();
  const auto hi = report.sweep.back();

  auto drop = [&](const std::string& stat, std::size_t i, std::size_t j) {
    const auto& small = report.row(lo, stat, i, j);
    const auto& large = report.row(hi, stat, i, j);
    const double gap = std::abs(small.estimate) - std::abs(large.estimate);
    const double se = std::hypot(small.std_error, large.std_error);
    flags.push_back({stat + "_decay[" + std::to_string(i) + "," + std::to_string(j) + "]", gap > 2.0 * se,
                     "|cov| " + fmt_double(std::abs(small.estimate)) + " at N=" + std::to_string(lo) +
                         " vs " + fmt_double(std::abs(large.estimate)) + " at N=" + std::to_string(hi) +
                         ", 2 combined stderr " + fmt_double(2.0 * se)});
  };
  for (std::size_t i = 0; i < report.classes; ++i) {
    for (std::size_t j = i + 1; j < report.classes; ++j) drop(kCrossCov, i, j);
  }
  for (std::size_t i = 0; i < report.classes; ++i) drop(kWithinCov, i, i);

  for (std::size_t i = 0; i < report.classes; ++i) {
    bool ok = true;
    std::string trail;
    for (std::size_t k = 0; k < report.sweep.size(); ++k) {
      const double v = report.row(report.sweep[k], kEmvSd, i, i).estimate;
      if (k > 0 && !(v < report.row(report.sweep[k - 1], kEmvSd, i, i).estimate)) ok = false;
      trail += (k ? " > " : "") + fmt_double(v);
    }
    flags.push_back({"emv_sd_decreasing[" + std::to_string(i) + "]", ok, trail});
  }
  return flags;
}

bool is_decoupled(const ModelSpec& model) {
  for (std::size_t i = 0; i < model.classes; ++i) {
    if (model.rho[i] != 1.0) return false;
    for (const auto x : model.b[i]) {
      if (x != 0.0) return false;
    }
  }
  return true;
}

std::vector<double> decoupled_limit(const ModelSpec& model, std::size_t steps) {
  std::vector<double> p(model.classes);
  for (std::size_t i = 0; i < model.classes; ++i) p[i] = steps == 0 ? model.q[i] : std::clamp(model.a[i], 0.0, 1.0);
  return p;
}

}  // namespace mexch
