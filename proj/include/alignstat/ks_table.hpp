#ifndef ALIGNSTAT_KS_TABLE_HPP_
#define ALIGNSTAT_KS_TABLE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <vector>

namespace alignstat {

// Exact small-sample critical value for the two-sample Kolmogorov-Smirnov
// statistic D = max|F1 - F2| under the permutation null (all C(n1+n2, n1)
// interleavings equally likely). Returns the largest threshold c such that
// rejecting when D > c has size <= alpha; nullopt when even complete
// separation (D = 1) is not significant, i.e. the pair is untestable at this
// level. Computed by lattice-path counting; reproduces the standard
// published tables.
std::optional<double> exact_ks_critical_d(std::int64_t n1, std::int64_t n2, double alpha);

// Critical-value table for small samples, keyed by (n1, n2, alpha).
// Untestable cells hold nullopt (encoded "untestable" in the CSV form).
class KsCriticalTable {
 public:
  struct Entry {
    std::int64_t n1;
    std::int64_t n2;
    double alpha;
    std::optional<double> critical_d;
  };

  // Exact table over n1, n2 in [1, max_n] at the given levels.
  static KsCriticalTable computed(std::int64_t max_n, const std::vector<double>& alphas);
  // The table bundled with this project: max_n 12, alphas {0.05, 0.01}.
  static const KsCriticalTable& bundled();
  // Interchange CSV: header n1,n2,alpha,critical_d.
  static KsCriticalTable from_csv(const std::filesystem::path& path);
  void write_csv(const std::filesystem::path& path) const;

  std::int64_t max_n() const { return max_n_; }
  bool supports_alpha(double alpha) const;
  std::vector<double> alphas() const;
  // nullptr when (n1, n2, alpha) has no cell.
  const Entry* entry(std::int64_t n1, std::int64_t n2, double alpha) const;
  std::vector<Entry> entries() const;

 private:
  struct Key {
    std::int64_t n1;
    std::int64_t n2;
    std::int64_t alpha_key;  // round(alpha * 1e6)
    auto operator<=>(const Key&) const = default;
  };
  static std::int64_t alpha_key(double alpha);

  std::map<Key, Entry> entries_;
  std::int64_t max_n_ = 0;
};

}  // namespace alignstat

#endif  // ALIGNSTAT_KS_TABLE_HPP_
