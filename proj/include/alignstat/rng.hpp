#ifndef ALIGNSTAT_RNG_HPP_
#define ALIGNSTAT_RNG_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace alignstat {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Independent, order-insensitive stream seed for a labelled unit of work
// (one pair, one trial, ...). Results must not depend on scheduling, so every
// unit derives its own stream from the run seed and a stable label.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view label) {
  return splitmix64(splitmix64(seed) ^ fnv1a64(label));
}

// mt19937_64 with hand-rolled variate mappings. The engine's output sequence
// is pinned by the standard, and bypassing std distributions keeps draws
// bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) by rejection.
  std::uint64_t uniform_below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

// Cache of log(i!) for i in [0, n]; shared by hypergeometric sampling and
// exact enumeration so binomial coefficients cost two subtractions.
class LogFactorials {
 public:
  explicit LogFactorials(std::size_t max_n);
  double log_factorial(std::int64_t n) const { return table_[static_cast<std::size_t>(n)]; }
  double log_choose(std::int64_t n, std::int64_t k) const {
    if (k < 0 || k > n) return -1e300;
    return table_[static_cast<std::size_t>(n)] - table_[static_cast<std::size_t>(k)] -
           table_[static_cast<std::size_t>(n - k)];
  }

 private:
  std::vector<double> table_;
};

// Number of successes in `draws` draws without replacement from a population
// of size `population` containing `successes` marked items. Inverse-CDF from
// the mode outward, so the expected cost is O(sd) rather than O(n).
std::int64_t hypergeometric_draw(Rng& rng, std::int64_t population, std::int64_t successes,
                                 std::int64_t draws, const LogFactorials& lf);

// Multivariate hypergeometric draw: splits pooled per-option counts into a
// group of size n1 (out_first) chosen uniformly at random without
// replacement. Equivalent to shuffling the pooled responses and taking the
// first n1, at O(k) hypergeometric draws per call.
void hypergeometric_split(Rng& rng, std::span<const std::int64_t> pooled, std::int64_t n1,
                          const LogFactorials& lf, std::vector<std::int64_t>& out_first);

}  // namespace alignstat

#endif  // ALIGNSTAT_RNG_HPP_
