#ifndef ALIGNSTAT_STATISTICS_HPP_
#define ALIGNSTAT_STATISTICS_HPP_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "alignstat/survey_data.hpp"

namespace alignstat {

enum class StatKind { kT1, kKs, kWasserstein, kEntropy };

std::string_view to_string(StatKind kind);

struct StatValue {
  StatKind kind;
  double value;
};

// Chi-squared-style two-sample statistic over option frequencies:
//   sum_j (Z_j - n1*c_j)^2/(n1*c_j) + (Z'_j - n2*c_j)^2/(n2*c_j)
// with c_j the pooled proportion of option j. Options nobody chose
// contribute 0 (the 0/0 limit of the formula).
double t1_from_counts(std::span<const std::int64_t> z_human,
                      std::span<const std::int64_t> z_llm);
StatValue t1_statistic(const ContingencyPair& pair);

// Cumulative proportion of responses at or below each option, in option
// order. cumulative[j] = (sum_{m<=j} counts[m]) / total.
std::vector<double> empirical_cdf(std::span<const std::int64_t> counts);

// Two-sample Kolmogorov-Smirnov statistic: the largest absolute gap between
// the two empirical CDFs, with options mapped to their manifest order.
double ks_from_counts(std::span<const std::int64_t> z_human,
                      std::span<const std::int64_t> z_llm);
StatValue ks_statistic(const ContingencyPair& pair);

enum class EntropyBase { kBits, kNats };

std::string_view to_string(EntropyBase base);

// Shannon entropy of the count distribution; 0*log(0) terms are dropped.
double shannon_entropy_from_counts(std::span<const std::int64_t> counts, EntropyBase base);
StatValue shannon_entropy(std::span<const std::int64_t> counts, EntropyBase base);

// 1-Wasserstein distance between the two count distributions on the option
// index line with unit spacing between adjacent options, i.e. the L1
// distance between the CDFs. Ranges over [0, k-1].
double wasserstein_from_counts(std::span<const std::int64_t> z_human,
                               std::span<const std::int64_t> z_llm);
StatValue wasserstein_1d(const ContingencyPair& pair);

}  // namespace alignstat

#endif  // ALIGNSTAT_STATISTICS_HPP_
