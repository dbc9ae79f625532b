#ifndef ALIGNSTAT_PERMUTATION_HPP_
#define ALIGNSTAT_PERMUTATION_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>

#include "alignstat/ks_table.hpp"
#include "alignstat/statistics.hpp"
#include "alignstat/survey_data.hpp"

namespace alignstat {

struct PermutationConfig {
  // Monte-Carlo resamples when the exact path is not taken.
  std::int64_t num_permutations = 10000;
  std::uint64_t seed = 1;
  // Take the exact path when the pooled counts admit at most this many
  // distinct count-splits; 0 disables exact enumeration entirely.
  std::int64_t exact_threshold = 2'000'000;
  double alpha = 0.05;

  void validate() const;  // num_permutations >= 100, alpha in (0,1)
};

// Which decision procedure produced a TestDecision.
enum class DecisionPath { kT1Permutation, kKsPermutation, kKsCritical };
// How its p-value or threshold was obtained.
enum class DecisionMethod { kMonteCarlo, kExact, kAsymptoticFormula, kTable };

std::string_view to_string(DecisionPath path);
std::string_view to_string(DecisionMethod method);
DecisionPath decision_path_from_string(std::string_view text);
DecisionMethod decision_method_from_string(std::string_view text);

struct TestDecision {
  DecisionPath path = DecisionPath::kT1Permutation;
  double observed = 0.0;
  // Exactly one of these is set, matching the decision path.
  std::optional<double> p_value;
  std::optional<double> critical_value;
  bool reject = false;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  std::int64_t num_permutations = 0;
  DecisionMethod method = DecisionMethod::kMonteCarlo;
  // Pooled responses all landed on a single option: the permutation null is
  // a point mass and the p-value is 1 by construction.
  bool degenerate = false;
  // No rejection is possible at this level (KS table '*' cell). Excluded
  // from S/Q aggregation.
  bool untestable = false;
};

using StatisticFn = std::function<double(const ContingencyPair&)>;

// Number of distinct splits of the pooled counts into a group of size n1
// (the permutation null's support size), saturated at `cap`.
std::int64_t count_splits(std::span<const std::int64_t> pooled, std::int64_t n1,
                          std::int64_t cap);

// Exact tail probability P(T >= T_observed) under the permutation null,
// by enumerating count-splits weighted with multivariate-hypergeometric
// probabilities. Throws ConfigError when the enumeration exceeds max_splits.
double exact_permutation_pvalue(const ContingencyPair& pair, const StatisticFn& statistic,
                                std::int64_t max_splits = 2'000'000);

// Permutation test of H0: the two response distributions are equal.
// Pools the counts, redistributes them into groups of the original sizes,
// and recomputes the statistic; p-values use the ">=" tail. Monte-Carlo
// p-values carry add-one smoothing: (1 + #{T_b >= T_obs}) / (B + 1).
// Fully deterministic given (pair identity, config.seed).
TestDecision permutation_test(const ContingencyPair& pair, const StatisticFn& statistic,
                              DecisionPath path, const PermutationConfig& config);
// Convenience overload for the two built-in statistics (StatKind::kT1 or kKs).
TestDecision permutation_test(const ContingencyPair& pair, StatKind statistic,
                              const PermutationConfig& config);

struct KsCriticalResult {
  double value = 1.0;
  DecisionMethod method = DecisionMethod::kAsymptoticFormula;
  bool untestable = false;
};

// Large-sample two-sided threshold: sqrt(-ln(alpha/2)/2) * sqrt((n1+n2)/(n1*n2)).
double ks_critical_value_formula(std::int64_t n1, std::int64_t n2, double alpha);

// Rejection threshold for the KS statistic: the bundled exact table when both
// group sizes fall inside it, the asymptotic formula otherwise. Reject when
// the observed statistic exceeds the returned value. Throws ConfigError when
// the table path is selected but alpha is not a tabulated level (use
// ks_critical_value_formula explicitly in that case).
KsCriticalResult ks_critical_value(std::int64_t n1, std::int64_t n2, double alpha,
                                   const KsCriticalTable& table = KsCriticalTable::bundled());

// Critical-value decision for the KS statistic (no permutations involved).
TestDecision ks_decision(const ContingencyPair& pair, double alpha,
                         const KsCriticalTable& table = KsCriticalTable::bundled());

}  // namespace alignstat

#endif  // ALIGNSTAT_PERMUTATION_HPP_
