#include "alignstat/rng.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace alignstat {

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  assert(bound > 0);
  // Rejection sampling below the largest multiple of bound keeps this unbiased.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

LogFactorials::LogFactorials(std::size_t max_n) : table_(max_n + 1, 0.0) {
  for (std::size_t i = 2; i <= max_n; ++i) {
    table_[i] = table_[i - 1] + std::log(static_cast<double>(i));
  }
}

std::int64_t hypergeometric_draw(Rng& rng, std::int64_t population, std::int64_t successes,
                                 std::int64_t draws, const LogFactorials& lf) {
  const std::int64_t lo = std::max<std::int64_t>(0, draws - (population - successes));
  const std::int64_t hi = std::min(draws, successes);
  if (lo >= hi) return lo;

  auto log_pmf = [&](std::int64_t x) {
    return lf.log_choose(successes, x) + lf.log_choose(population - successes, draws - x) -
           lf.log_choose(population, draws);
  };
  std::int64_t mode = static_cast<std::int64_t>(
      (static_cast<double>(draws + 1) * static_cast<double>(successes + 1)) /
      static_cast<double>(population + 2));
  mode = std::clamp(mode, lo, hi);

  const double u = rng.uniform01();
  const double pm = std::exp(log_pmf(mode));
  double acc = pm;
  if (u < acc) return mode;

  // Walk outward from the mode, always consuming the larger frontier mass.
  // pmf(x+1)/pmf(x) = (K-x)(n-x) / ((x+1)(N-K-n+x+1))
  const double fk = static_cast<double>(successes);
  const double fn = static_cast<double>(draws);
  const double fr = static_cast<double>(population - successes - draws);
  std::int64_t left = mode - 1;
  std::int64_t right = mode + 1;
  double p_left = 0.0, p_right = 0.0;
  if (left >= lo) {
    const double x = static_cast<double>(mode);
    p_left = pm * (x * (fr + x)) / ((fk - x + 1.0) * (fn - x + 1.0));
  }
  if (right <= hi) {
    const double x = static_cast<double>(mode);
    p_right = pm * ((fk - x) * (fn - x)) / ((x + 1.0) * (fr + x + 1.0));
  }
  while (left >= lo || right <= hi) {
    if (right > hi || (left >= lo && p_left >= p_right)) {
      acc += p_left;
      if (u < acc) return left;
      --left;
      if (left >= lo) {
        const double x = static_cast<double>(left + 1);
        p_left *= (x * (fr + x)) / ((fk - x + 1.0) * (fn - x + 1.0));
      }
    } else {
      acc += p_right;
      if (u < acc) return right;
      ++right;
      if (right <= hi) {
        const double x = static_cast<double>(right - 1);
        p_right *= ((fk - x) * (fn - x)) / ((x + 1.0) * (fr + x + 1.0));
      }
    }
  }
  // Float leakage (u landed in the ~1e-15 residue of the CDF): return the mode.
  return mode;
}

void hypergeometric_split(Rng& rng, std::span<const std::int64_t> pooled, std::int64_t n1,
                          const LogFactorials& lf, std::vector<std::int64_t>& out_first) {
  out_first.resize(pooled.size());
  std::int64_t remaining_pop = 0;
  for (std::int64_t m : pooled) remaining_pop += m;
  std::int64_t remaining_draws = n1;
  for (std::size_t j = 0; j < pooled.size(); ++j) {
    if (j + 1 == pooled.size()) {
      out_first[j] = remaining_draws;
      break;
    }
    const std::int64_t x =
        hypergeometric_draw(rng, remaining_pop, pooled[j], remaining_draws, lf);
    out_first[j] = x;
    remaining_draws -= x;
    remaining_pop -= pooled[j];
  }
}

}  // namespace alignstat
