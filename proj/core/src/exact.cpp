#include "mexch/exact.hpp"

#include <algorithm>
#include <string>

namespace mexch {

namespace {

BigInt factorial(std::size_t n) {
  BigInt out = 1;
  for (std::size_t f = 2; f <= n; ++f) out *= f;
  return out;
}

std::size_t min_class_size(const SystemShape& shape) {
  return *std::min_element(shape.class_sizes().begin(), shape.class_sizes().end());
}

std::vector<std::size_t> tuple_alphabets(const SystemShape& shape, std::size_t k) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < shape.class_count(); ++i) out.insert(out.end(), k, shape.alphabet_size(i));
  return out;
}

// Per-class arrangements of a multiset of atoms, each in lexicographic order.
std::vector<Tuple> distinct_orderings(const std::vector<std::size_t>& counts) {
  Tuple atoms;
  for (std::size_t s = 0; s < counts.size(); ++s) atoms.insert(atoms.end(), counts[s], static_cast<State>(s));
  std::vector<Tuple> out;
  do {
    out.push_back(atoms);
  } while (std::next_permutation(atoms.begin(), atoms.end()));
  return out;
}

void require_multi_exchangeable(const JointLaw& law, const char* op) {
  if (!is_multi_exchangeable(law)) {
    throw NotMultiExchangeable(std::string(op) +
                               ": law is not multi-exchangeable; symmetrize it first");
  }
}

}  // namespace

JointLaw symmetrize(const JointLaw& law, std::uint64_t perm_cap) {
  const auto group_order = law.shape().permutation_count();
  JointLaw::Weights out;
  for_each_permutation_vector(
      law.shape(),
      [&](const ClassPermutationVector& sigma) {
        for (const auto& [config, w] : law.weights()) out[permute_within_classes(config, sigma)] += w;
      },
      perm_cap);
  for (auto& kv : out) kv.second /= group_order;
  return JointLaw(law.shape(), std::move(out));
}

bool is_multi_exchangeable(const JointLaw& law) {
  const auto& shape = law.shape();
  for (std::size_t i = 0; i < shape.class_count(); ++i) {
    for (std::size_t n = 0; n + 1 < shape.size(i); ++n) {
      const auto tau = ClassPermutationVector::adjacent_transposition(shape, i, n);
      for (const auto& [config, w] : law.weights()) {
        if (law.probability(permute_within_classes(config, tau)) != w) return false;
      }
    }
  }
  return true;
}

JointLaw ConditionalLawTable::reconstruct() const {
  if (entries_.empty()) throw std::logic_error("empty conditional law table");
  JointLaw::Weights out;
  for (const auto& [key, entry] : entries_) {
    for (const auto& [config, w] : entry.conditional.weights()) out[config] += entry.marginal * w;
  }
  return JointLaw(entries_.begin()->second.conditional.shape(), std::move(out));
}

ConditionalLawTable conditional_law_given_emv(const JointLaw& law) {
  std::map<EmpiricalMeasureVector, std::pair<Rational, JointLaw::Weights>> grouped;
  for (const auto& [config, w] : law.weights()) {
    auto& slot = grouped[empirical_measure_vector(law.shape(), config)];
    slot.first += w;
    slot.second.emplace(config, w);
  }
  ConditionalLawTable::Entries entries;
  for (auto& [key, slot] : grouped) {
    auto& [marginal, weights] = slot;
    for (auto& kv : weights) kv.second /= marginal;
    entries.emplace(key, ConditionalLawTable::Entry{marginal, JointLaw(law.shape(), std::move(weights))});
  }
  return ConditionalLawTable(std::move(entries));
}

JointLaw predicted_conditional_law(const EmpiricalMeasureVector& value) {
  const auto& shape = value.shape();
  const auto counts = value.counts();

  std::vector<std::vector<Tuple>> per_class;
  Rational weight = 1;
  for (std::size_t i = 0; i < shape.class_count(); ++i) {
    // Each distinct ordering has probability prod_s count_s! / N_i!.
    BigInt numer = 1;
    for (const auto c : counts[i]) numer *= factorial(c);
    weight *= Rational(numer, factorial(shape.size(i)));
    per_class.push_back(distinct_orderings(counts[i]));
  }

  JointLaw::Weights weights;
  std::vector<std::size_t> idx(per_class.size(), 0);
  while (true) {
    Configuration c;
    for (std::size_t i = 0; i < per_class.size(); ++i) c.classes.push_back(per_class[i][idx[i]]);
    weights.emplace(std::move(c), weight);
    std::size_t i = per_class.size();
    bool carried = true;
    while (carried && i-- > 0) {
      if (++idx[i] < per_class[i].size()) {
        carried = false;
      } else {
        idx[i] = 0;
      }
    }
    if (carried) break;
  }
  return JointLaw(shape, std::move(weights));
}

SuffstatReport verify_suffstat(const JointLaw& law) {
  require_multi_exchangeable(law, "verify_suffstat");
  SuffstatReport report;
  report.holds = true;
  const auto table = conditional_law_given_emv(law);
  for (const auto& [key, entry] : table.entries()) {
    const auto gap = l1_distance(entry.conditional, predicted_conditional_law(key));
    ++report.keys_checked;
    if (gap != 0) report.holds = false;
    if (!report.worst_key || gap > report.worst_discrepancy) {
      report.worst_discrepancy = gap;
      report.worst_key = key;
    }
  }
  return report;
}

BigInt falling_factorial(std::uint64_t m, std::uint64_t k) {
  if (k == 0 || k > m) {
    throw std::invalid_argument("falling factorial needs 1 <= k <= m, got m=" + std::to_string(m) +
                                " k=" + std::to_string(k));
  }
  BigInt out = 1;
  for (std::uint64_t j = 0; j < k; ++j) out *= (m - j);
  return out;
}

FiniteMeasure k_product_measure(std::span<const Rational> freqs, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  auto measure = FiniteMeasure::zero_on_product(std::vector<std::size_t>(k, freqs.size()));
  std::vector<Rational> weights;
  weights.reserve(measure.size());
  for (const auto& point : measure.space()) {
    Rational w = 1;
    for (const auto s : point) w *= freqs[s];
    weights.push_back(std::move(w));
  }
  return FiniteMeasure(measure.space(), std::move(weights));
}

FiniteMeasure k_distinct_tuple_measure(std::span<const State> class_states,
                                       std::size_t alphabet_size, std::size_t k) {
  const auto n = class_states.size();
  if (k == 0 || k > n) {
    throw std::invalid_argument("distinct k-tuples need 1 <= k <= N, got N=" + std::to_string(n) +
                                " k=" + std::to_string(k));
  }
  std::vector<std::size_t> counts(alphabet_size, 0);
  for (const auto s : class_states) {
    if (s >= alphabet_size) throw std::invalid_argument("state outside alphabet");
    ++counts[s];
  }
  const BigInt denom = falling_factorial(n, k);
  auto measure = FiniteMeasure::zero_on_product(std::vector<std::size_t>(k, alphabet_size));
  std::vector<Rational> weights;
  weights.reserve(measure.size());
  std::vector<std::size_t> used(alphabet_size);
  for (const auto& point : measure.space()) {
    // Ordered distinct index tuples with these states: prod_s (count_s)_{uses_s},
    // built one position at a time.
    std::fill(used.begin(), used.end(), 0);
    BigInt ways = 1;
    for (const auto s : point) {
      if (used[s] >= counts[s]) {
        ways = 0;
        break;
      }
      ways *= counts[s] - used[s];
      ++used[s];
    }
    weights.emplace_back(ways, denom);
  }
  return FiniteMeasure(measure.space(), std::move(weights));
}

Rational tv_norm(const FiniteMeasure& mu, const FiniteMeasure& nu) {
  if (mu.space() != nu.space()) throw std::invalid_argument("measures live on different spaces");
  Rational total = 0;
  for (std::size_t j = 0; j < mu.size(); ++j) total += abs(mu.weights()[j] - nu.weights()[j]);
  return total;
}

TvBoundResult tv_bound_check(std::size_t n, std::size_t k, std::size_t alphabet_size) {
  if (k == 0 || k > n) throw std::invalid_argument("tv bound check needs 1 <= k <= N");
  if (alphabet_size == 0) throw std::invalid_argument("alphabet must be non-empty");

  TvBoundResult result;
  result.n = n;
  result.k = k;
  result.alphabet_size = alphabet_size;
  BigInt n_pow_k = 1;
  for (std::size_t j = 0; j < k; ++j) n_pow_k *= n;
  result.intermediate_bound = Rational(2 * (n_pow_k - falling_factorial(n, k)), n_pow_k);
  result.final_bound = Rational(k * (k - 1), n);
  result.holds = result.intermediate_bound <= result.final_bound;

  // Non-decreasing state sequences enumerate the multisets once each.
  Tuple states(n, 0);
  while (true) {
    const auto freqs = estimate_directing_measure(states, alphabet_size);
    const auto tv = tv_norm(k_product_measure(freqs, k), k_distinct_tuple_measure(states, alphabet_size, k));
    ++result.multisets_checked;
    if (tv > result.intermediate_bound) result.holds = false;
    if (result.multisets_checked == 1 || tv > result.worst_tv) {
      result.worst_tv = tv;
      result.worst_states = states;
    }
    std::size_t j = n;
    while (j > 0 && states[j - 1] + 1u >= alphabet_size) --j;
    if (j == 0) break;
    const State next = static_cast<State>(states[j - 1] + 1);
    std::fill(states.begin() + static_cast<std::ptrdiff_t>(j - 1), states.end(), next);
  }
  result.worst_ratio = result.intermediate_bound == 0 ? Rational(0) : result.worst_tv / result.intermediate_bound;
  return result;
}

Prf1Sides prf1_sides(const JointLaw& law, std::size_t k) {
  const auto& shape = law.shape();
  if (k == 0 || k > min_class_size(shape)) {
    throw std::invalid_argument("k must satisfy 1 <= k <= min_i N_i");
  }
  auto lhs = FiniteMeasure::zero_on_product(tuple_alphabets(shape, k));
  auto rhs = lhs;

  std::vector<FiniteMeasure> per_class;
  for (const auto& [config, w] : law.weights()) {
    Tuple head;
    for (const auto& cls : config.classes) head.insert(head.end(), cls.begin(), cls.begin() + static_cast<std::ptrdiff_t>(k));
    lhs.weight(head) += w;

    per_class.clear();
    for (std::size_t i = 0; i < shape.class_count(); ++i) {
      per_class.push_back(k_distinct_tuple_measure(config.classes[i], shape.alphabet_size(i), k));
    }
    for (const auto& point : rhs.space()) {
      Rational term = w;
      for (std::size_t i = 0; i < per_class.size() && term != 0; ++i) {
        const Tuple part(point.begin() + static_cast<std::ptrdiff_t>(i * k),
                         point.begin() + static_cast<std::ptrdiff_t>((i + 1) * k));
        term *= per_class[i].weight(part);
      }
      if (term != 0) rhs.weight(point) += term;
    }
  }
  return Prf1Sides{std::move(lhs), std::move(rhs)};
}

Prf1Report verify_prf1(const JointLaw& law, std::size_t k) {
  require_multi_exchangeable(law, "verify_prf1");
  const auto sides = prf1_sides(law, k);
  Prf1Report report;
  report.indicator_count = sides.first_k_law.size();
  for (std::size_t j = 0; j < sides.first_k_law.size(); ++j) {
    const Rational gap = abs(sides.first_k_law.weights()[j] - sides.mixed_distinct_law.weights()[j]);
    if (gap > report.worst_discrepancy) report.worst_discrepancy = gap;
  }
  report.holds = report.worst_discrepancy == 0;
  return report;
}

}  // namespace mexch
