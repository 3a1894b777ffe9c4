#include "mexch/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <atomic>
#include <string>
#include <thread>

namespace mexch {

namespace {

void check_probability(double x, const char* field, std::size_t i) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument(std::string(field) + "[" + std::to_string(i) +
                                "] must lie in [0, 1]");
  }
}

std::vector<double> ones_fraction(const ParticleStates& states) {
  std::vector<double> m(states.size());
  for (std::size_t j = 0; j < states.size(); ++j) {
    const auto ones = std::count(states[j].begin(), states[j].end(), std::uint8_t{1});
    m[j] = static_cast<double>(ones) / static_cast<double>(states[j].size());
  }
  return m;
}

StepSnapshot snapshot(const ParticleStates& states, std::size_t tagged) {
  StepSnapshot snap;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto n = static_cast<double>(states[i].size());
    const auto ones = static_cast<double>(std::count(states[i].begin(), states[i].end(), std::uint8_t{1}));
    snap.freqs.push_back({(n - ones) / n, ones / n});
    snap.tagged.emplace_back(states[i].begin(), states[i].begin() + static_cast<std::ptrdiff_t>(tagged));
  }
  return snap;
}

TrajectoryRecord run_one(const ModelSpec& model, const std::vector<std::size_t>& sizes,
                         std::size_t steps, std::uint64_t seed, std::size_t replication,
                         std::size_t tagged) {
  TrajectoryRecord rec;
  rec.seed = seed;
  rec.replication = replication;
  rec.class_sizes = sizes;
  rec.steps.reserve(steps + 1);
  auto rng = derive_stream(seed, replication);
  auto states = initial_states(model, sizes, rng);
  rec.steps.push_back(snapshot(states, tagged));
  for (std::size_t t = 0; t < steps; ++t) {
    states = step(states, model, rng);
    rec.steps.push_back(snapshot(states, tagged));
  }
  return rec;
}

}  // namespace

void ModelSpec::validate() const {
  if (classes == 0) throw std::invalid_argument("classes must be at least 1");
  auto check_len = [&](std::size_t got, const char* field) {
    if (got != classes) {
      throw std::invalid_argument(std::string(field) + " must have " + std::to_string(classes) +
                                  " entries");
    }
  };
  check_len(a.size(), "a");
  check_len(b.size(), "b");
  check_len(rho.size(), "rho");
  check_len(q.size(), "q");
  for (std::size_t i = 0; i < classes; ++i) {
    check_probability(a[i], "a", i);
    check_probability(rho[i], "rho", i);
    check_probability(q[i], "q", i);
    check_len(b[i].size(), "b row");
    for (const auto x : b[i]) {
      if (!std::isfinite(x)) throw std::invalid_argument("b entries must be finite");
    }
  }
}

double ModelSpec::update_probability(std::size_t i, const std::vector<double>& m) const {
  double p = a[i];
  for (std::size_t j = 0; j < classes; ++j) p += b[i][j] * m[j];
  return std::clamp(p, 0.0, 1.0);
}

ModelSpec default_coupled_model() {
  ModelSpec m;
  m.classes = 2;
  m.a = {0.2, 0.6};
  m.b = {{0.3, 0.4}, {-0.2, 0.1}};
  m.rho = {0.7, 0.9};
  m.q = {0.5, 0.5};
  m.steps = 50;
  return m;
}

ModelSpec decoupled_model() {
  auto m = default_coupled_model();
  m.b = {{0.0, 0.0}, {0.0, 0.0}};
  m.rho = {1.0, 1.0};
  return m;
}

ParticleStates initial_states(const ModelSpec& model, const std::vector<std::size_t>& class_sizes,
                              SplitMix64& rng) {
  if (class_sizes.size() != model.classes) throw std::invalid_argument("class size count does not match model");
  ParticleStates states(class_sizes.size());
  for (std::size_t i = 0; i < class_sizes.size(); ++i) {
    states[i].resize(class_sizes[i]);
    for (auto& x : states[i]) x = rng.bernoulli(model.q[i]) ? 1 : 0;
  }
  return states;
}

ParticleStates step(const ParticleStates& states, const ModelSpec& model, SplitMix64& rng) {
  const auto m = ones_fraction(states);
  ParticleStates next(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double p = model.update_probability(i, m);
    const double rho = model.rho[i];
    next[i].resize(states[i].size());
    for (std::size_t n = 0; n < states[i].size(); ++n) {
      next[i][n] = rng.uniform01() < rho ? (rng.uniform01() < p ? 1 : 0) : states[i][n];
    }
  }
  return next;
}

std::vector<TrajectoryRecord> run(const ModelSpec& model, const std::vector<std::size_t>& class_sizes,
                                  std::size_t steps, std::size_t replications, std::uint64_t seed,
                                  const RunOptions& options) {
  model.validate();
  if (class_sizes.size() != model.classes) {
    throw std::invalid_argument("expected " + std::to_string(model.classes) + " class sizes, got " +
                                std::to_string(class_sizes.size()));
  }
  for (const auto n : class_sizes) {
    if (n < options.tagged || n == 0) {
      throw std::invalid_argument("class size " + std::to_string(n) + " is smaller than the " +
                                  std::to_string(options.tagged) + " tagged particles");
    }
  }

  std::vector<TrajectoryRecord> records(replications);
  std::size_t workers = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(replications, 1));
  if (workers == 1) {
    for (std::size_t r = 0; r < replications; ++r) {
      records[r] = run_one(model, class_sizes, steps, seed, r, options.tagged);
    }
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t r = next++; r < replications; r = next++) {
        records[r] = run_one(model, class_sizes, steps, seed, r, options.tagged);
      }
    });
  }
  pool.clear();
  return records;
}

void ExactModel::validate() const {
  const auto c = a.size();
  if (c == 0) throw std::invalid_argument("classes must be at least 1");
  if (b.size() != c || rho.size() != c) throw std::invalid_argument("parameter lengths disagree");
  for (std::size_t i = 0; i < c; ++i) {
    if (a[i] < 0 || a[i] > 1) throw std::invalid_argument("a[" + std::to_string(i) + "] must lie in [0, 1]");
    if (rho[i] < 0 || rho[i] > 1) throw std::invalid_argument("rho[" + std::to_string(i) + "] must lie in [0, 1]");
    if (b[i].size() != c) throw std::invalid_argument("b row length disagrees");
  }
}

ExactModel ExactModel::from(const ModelSpec& model) {
  model.validate();
  ExactModel out;
  for (std::size_t i = 0; i < model.classes; ++i) {
    out.a.emplace_back(model.a[i]);
    out.rho.emplace_back(model.rho[i]);
    auto& row = out.b.emplace_back();
    for (const auto x : model.b[i]) row.emplace_back(x);
  }
  return out;
}

JointLaw exact_kernel_law(const ExactModel& model, const JointLaw& initial, std::size_t steps,
                          std::uint64_t cap) {
  model.validate();
  const auto& shape = initial.shape();
  if (shape.class_count() != model.classes()) {
    throw std::invalid_argument("law has " + std::to_string(shape.class_count()) +
                                " classes, model has " + std::to_string(model.classes()));
  }
  for (std::size_t i = 0; i < shape.class_count(); ++i) {
    if (shape.alphabet_size(i) != 2) throw std::invalid_argument("kernel needs binary alphabets");
  }
  const auto targets = enumerate_configurations(shape, cap);

  JointLaw law = initial;
  for (std::size_t t = 0; t < steps; ++t) {
    JointLaw::Weights next;
    for (const auto& [src, w] : law.weights()) {
      std::vector<Rational> m(shape.class_count());
      for (std::size_t j = 0; j < m.size(); ++j) {
        const auto ones = std::count(src.classes[j].begin(), src.classes[j].end(), State{1});
        m[j] = Rational(ones, shape.size(j));
      }
      // to_one[i][x]: probability that a class-i particle in state x ends in 1.
      std::vector<std::array<Rational, 2>> to_one(shape.class_count());
      for (std::size_t i = 0; i < m.size(); ++i) {
        Rational p = model.a[i];
        for (std::size_t j = 0; j < m.size(); ++j) p += model.b[i][j] * m[j];
        p = std::clamp(p, Rational(0), Rational(1));
        to_one[i][0] = model.rho[i] * p;
        to_one[i][1] = 1 - model.rho[i] + model.rho[i] * p;
      }
      for (const auto& dst : targets) {
        Rational pr = w;
        for (std::size_t i = 0; i < m.size() && pr != 0; ++i) {
          for (std::size_t n = 0; n < shape.size(i) && pr != 0; ++n) {
            const auto& up = to_one[i][src.classes[i][n]];
            pr *= dst.classes[i][n] == 1 ? up : Rational(1 - up);
          }
        }
        if (pr != 0) next[dst] += pr;
      }
    }
    law = JointLaw(shape, std::move(next));
  }
  return law;
}

}  // namespace mexch
