#pragma once

#include <map>
#include <optional>
#include <span>

#include "mexch/empirical.hpp"
#include "mexch/finite_measure.hpp"
#include "mexch/joint_law.hpp"

namespace mexch {

// ---------------------------------------------------------------------------
// Symmetrization and the multi-exchangeability test
// ---------------------------------------------------------------------------

/// Average of the law over all within-class permutation tuples. The result is
/// multi-exchangeable and has the same empirical-measure-vector marginal.
/// Throws CapExceeded when prod_i N_i! > perm_cap.
JointLaw symmetrize(const JointLaw& law, std::uint64_t perm_cap = kDefaultPermutationCap);

/// True iff the law is invariant under every single-class adjacent
/// transposition. Those generate each Sigma(N_i), so this is equivalent to
/// invariance under the whole product group.
bool is_multi_exchangeable(const JointLaw& law);

// ---------------------------------------------------------------------------
// Conditional law given the empirical measure vector
// ---------------------------------------------------------------------------

class ConditionalLawTable {
 public:
  struct Entry {
    Rational marginal;
    JointLaw conditional;
  };
  using Entries = std::map<EmpiricalMeasureVector, Entry>;

  explicit ConditionalLawTable(Entries entries) : entries_(std::move(entries)) {}

  const Entries& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  /// Throws std::out_of_range for a value with zero marginal.
  const Entry& at(const EmpiricalMeasureVector& value) const { return entries_.at(value); }

  /// sum_v marginal(v) * conditional_v; equals the source law exactly.
  JointLaw reconstruct() const;

 private:
  Entries entries_;
};

/// Conditional law given each attained EMV value, computed by definition:
/// weight(c) * [emv(c) = v] / marginal(v).
ConditionalLawTable conditional_law_given_emv(const JointLaw& law);

/// Law of independent uniform orderings, per class, of the atoms of `value`:
///   weight(c) = prod_i [emv_i(c) = v_i] * prod_s count_{i,s}! / N_i!
JointLaw predicted_conditional_law(const EmpiricalMeasureVector& value);

struct SuffstatReport {
  bool holds = false;
  std::size_t keys_checked = 0;
  /// max over keys of the L1 distance between conditional and prediction.
  Rational worst_discrepancy = 0;
  std::optional<EmpiricalMeasureVector> worst_key;
};

/// Compares conditional_law_given_emv against predicted_conditional_law on
/// every attained EMV value. Throws NotMultiExchangeable for other laws.
SuffstatReport verify_suffstat(const JointLaw& law);

// ---------------------------------------------------------------------------
// With/without-replacement k-tuple measures
// ---------------------------------------------------------------------------

/// m (m-1) ... (m-k+1). Requires 1 <= k <= m.
BigInt falling_factorial(std::uint64_t m, std::uint64_t k);

/// Lambda^{(x)k}: weight of (s_1..s_k) is prod_j freqs[s_j].
FiniteMeasure k_product_measure(std::span<const Rational> freqs, std::size_t k);

/// Lambda^{N,k}: law of k draws without replacement among the states.
/// Weight of (s_1..s_k) is the number of ordered distinct index tuples
/// carrying those states over (N)_k. Requires 1 <= k <= N.
FiniteMeasure k_distinct_tuple_measure(std::span<const State> class_states,
                                       std::size_t alphabet_size, std::size_t k);

/// sum over points of |mu - nu|, i.e. sup{<phi, mu - nu> : |phi| <= 1}.
/// Throws std::invalid_argument when the spaces differ.
Rational tv_norm(const FiniteMeasure& mu, const FiniteMeasure& nu);

struct TvBoundResult {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t alphabet_size = 0;
  Rational intermediate_bound = 0;  ///< 2 (N^k - (N)_k) / N^k
  Rational final_bound = 0;         ///< k (k - 1) / N
  Rational worst_tv = 0;
  Rational worst_ratio = 0;  ///< worst_tv / intermediate_bound, 0 when the bound is 0
  Tuple worst_states;        ///< a multiset attaining worst_tv, sorted
  std::size_t multisets_checked = 0;
  bool holds = false;
};

/// Exhausts every multiset of n states over the alphabet and checks
/// tv <= intermediate_bound <= final_bound. Requires 1 <= k <= n.
TvBoundResult tv_bound_check(std::size_t n, std::size_t k, std::size_t alphabet_size);

// ---------------------------------------------------------------------------
// First-k-particles identity
// ---------------------------------------------------------------------------

/// Both sides of E[prod_i f_i(X_{1..k,i})] = E[prod_i <f_i, Lambda^{N,k}_i>]
/// as measures on the concatenated per-class k-tuples. Evaluating them at a
/// point is the identity for one product indicator family.
struct Prf1Sides {
  FiniteMeasure first_k_law;          ///< law of (X_{1..k,1}, ..., X_{1..k,C})
  FiniteMeasure mixed_distinct_law;   ///< E[(x)_i Lambda^{N,k}_i]
};

/// No exchangeability precondition; see verify_prf1.
Prf1Sides prf1_sides(const JointLaw& law, std::size_t k);

struct Prf1Report {
  bool holds = false;
  std::size_t indicator_count = 0;
  Rational worst_discrepancy = 0;
};

/// Checks the identity on every product indicator of k-tuples. Throws
/// NotMultiExchangeable for other laws and std::invalid_argument when
/// k > min_i N_i or k == 0.
Prf1Report verify_prf1(const JointLaw& law, std::size_t k);

}  // namespace mexch
