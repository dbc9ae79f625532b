#include "alignstat/statistics.hpp"

#include <cmath>

#include "alignstat/errors.hpp"

namespace alignstat {

namespace {

std::int64_t sum_checked(std::span<const std::int64_t> counts, const char* side) {
  std::int64_t total = 0;
  for (auto c : counts) {
    if (c < 0) throw DataError(std::string(side) + " counts must be non-negative");
    total += c;
  }
  if (total < 1) throw DataError(std::string(side) + " counts sum to zero");
  return total;
}

void check_aligned(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  if (a.size() != b.size()) throw DataError("count vectors differ in length");
  if (a.empty()) throw DataError("count vectors are empty");
}

}  // namespace

std::string_view to_string(StatKind kind) {
  switch (kind) {
    case StatKind::kT1: return "t1";
    case StatKind::kKs: return "ks";
    case StatKind::kWasserstein: return "wasserstein";
    case StatKind::kEntropy: return "entropy";
  }
  return "?";
}

std::string_view to_string(EntropyBase base) {
  return base == EntropyBase::kBits ? "2" : "e";
}

double t1_from_counts(std::span<const std::int64_t> z_human,
                      std::span<const std::int64_t> z_llm) {
  check_aligned(z_human, z_llm);
  const double n1 = static_cast<double>(sum_checked(z_human, "human"));
  const double n2 = static_cast<double>(sum_checked(z_llm, "llm"));
  const double total = n1 + n2;
  double t = 0.0;
  for (std::size_t j = 0; j < z_human.size(); ++j) {
    const std::int64_t pooled = z_human[j] + z_llm[j];
    if (pooled == 0) continue;
    const double c = static_cast<double>(pooled) / total;
    const double e1 = n1 * c;
    const double e2 = n2 * c;
    const double d1 = static_cast<double>(z_human[j]) - e1;
    const double d2 = static_cast<double>(z_llm[j]) - e2;
    t += d1 * d1 / e1 + d2 * d2 / e2;
  }
  return t;
}

StatValue t1_statistic(const ContingencyPair& pair) {
  return {StatKind::kT1, t1_from_counts(pair.z_human, pair.z_llm)};
}

std::vector<double> empirical_cdf(std::span<const std::int64_t> counts) {
  const double total = static_cast<double>(sum_checked(counts, "cdf"));
  std::vector<double> cumulative(counts.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    acc += static_cast<double>(counts[j]) / total;
    cumulative[j] = acc;
  }
  return cumulative;
}

double ks_from_counts(std::span<const std::int64_t> z_human,
                      std::span<const std::int64_t> z_llm) {
  check_aligned(z_human, z_llm);
  const double n1 = static_cast<double>(sum_checked(z_human, "human"));
  const double n2 = static_cast<double>(sum_checked(z_llm, "llm"));
  double f1 = 0.0, f2 = 0.0, gap = 0.0;
  for (std::size_t j = 0; j < z_human.size(); ++j) {
    f1 += static_cast<double>(z_human[j]) / n1;
    f2 += static_cast<double>(z_llm[j]) / n2;
    gap = std::max(gap, std::fabs(f1 - f2));
  }
  return gap;
}

StatValue ks_statistic(const ContingencyPair& pair) {
  return {StatKind::kKs, ks_from_counts(pair.z_human, pair.z_llm)};
}

double shannon_entropy_from_counts(std::span<const std::int64_t> counts, EntropyBase base) {
  const double total = static_cast<double>(sum_checked(counts, "entropy"));
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * (base == EntropyBase::kBits ? std::log2(p) : std::log(p));
  }
  return std::max(h, 0.0);
}

StatValue shannon_entropy(std::span<const std::int64_t> counts, EntropyBase base) {
  return {StatKind::kEntropy, shannon_entropy_from_counts(counts, base)};
}

double wasserstein_from_counts(std::span<const std::int64_t> z_human,
                               std::span<const std::int64_t> z_llm) {
  check_aligned(z_human, z_llm);
  const double n1 = static_cast<double>(sum_checked(z_human, "human"));
  const double n2 = static_cast<double>(sum_checked(z_llm, "llm"));
  double f1 = 0.0, f2 = 0.0, w = 0.0;
  // Only the k-1 gaps between adjacent options carry mass-transport cost.
  for (std::size_t j = 0; j + 1 < z_human.size(); ++j) {
    f1 += static_cast<double>(z_human[j]) / n1;
    f2 += static_cast<double>(z_llm[j]) / n2;
    w += std::fabs(f1 - f2);
  }
  return w;
}

StatValue wasserstein_1d(const ContingencyPair& pair) {
  return {StatKind::kWasserstein, wasserstein_from_counts(pair.z_human, pair.z_llm)};
}

}  // namespace alignstat
