#include "alignstat/ks_table.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>

#include "alignstat/csv.hpp"
#include "alignstat/errors.hpp"

namespace alignstat {

namespace {

// Number of monotone lattice paths from (0,0) to (n1,n2) whose every vertex
// satisfies |i*n2 - j*n1| < c, i.e. paths with max deviation strictly below
// c/(n1*n2). Path counts fit comfortably in uint64 for table-sized n.
std::uint64_t paths_below(std::int64_t n1, std::int64_t n2, std::int64_t c) {
  std::vector<std::uint64_t> column(static_cast<std::size_t>(n2) + 1, 0);
  column[0] = 1;
  for (std::int64_t j = 1; j <= n2; ++j) {
    column[static_cast<std::size_t>(j)] =
        (std::llabs(-j * n1) < c) ? column[static_cast<std::size_t>(j) - 1] : 0;
  }
  for (std::int64_t i = 1; i <= n1; ++i) {
    std::vector<std::uint64_t> next(static_cast<std::size_t>(n2) + 1, 0);
    for (std::int64_t j = 0; j <= n2; ++j) {
      if (std::llabs(i * n2 - j * n1) >= c) continue;
      std::uint64_t total = column[static_cast<std::size_t>(j)];
      if (j > 0) total += next[static_cast<std::size_t>(j) - 1];
      next[static_cast<std::size_t>(j)] = total;
    }
    column = std::move(next);
  }
  return column[static_cast<std::size_t>(n2)];
}

std::uint64_t total_paths(std::int64_t n1, std::int64_t n2) {
  // C(n1+n2, n1) by the multiplicative rule; exact for table-sized inputs.
  std::uint64_t result = 1;
  for (std::int64_t i = 1; i <= n1; ++i) {
    result = result * static_cast<std::uint64_t>(n2 + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

}  // namespace

std::optional<double> exact_ks_critical_d(std::int64_t n1, std::int64_t n2, double alpha) {
  if (n1 < 1 || n2 < 1) throw ConfigError("ks table requires n1, n2 >= 1");
  if (n1 + n2 > 66) throw ConfigError("exact ks table limited to n1+n2 <= 66 (path counts overflow)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must be in (0, 1)");
  const std::uint64_t total = total_paths(n1, n2);
  const std::int64_t units = n1 * n2;  // D support lives on multiples of 1/(n1*n2)
  auto tail = [&](std::int64_t c) {
    // P(n1*n2*D >= c) = 1 - P(all deviations < c)
    return static_cast<double>(total - paths_below(n1, n2, c)) / static_cast<double>(total);
  };
  if (tail(units) > alpha) return std::nullopt;  // even D == 1 is not significant
  for (std::int64_t c = 1; c <= units; ++c) {
    if (tail(c) <= alpha) {
      return static_cast<double>(c - 1) / static_cast<double>(units);
    }
  }
  return std::nullopt;  // unreachable
}

std::int64_t KsCriticalTable::alpha_key(double alpha) {
  return static_cast<std::int64_t>(std::llround(alpha * 1e6));
}

KsCriticalTable KsCriticalTable::computed(std::int64_t max_n, const std::vector<double>& alphas) {
  KsCriticalTable table;
  table.max_n_ = max_n;
  for (std::int64_t n1 = 1; n1 <= max_n; ++n1) {
    for (std::int64_t n2 = 1; n2 <= max_n; ++n2) {
      for (double alpha : alphas) {
        Entry e{n1, n2, alpha, exact_ks_critical_d(n1, n2, alpha)};
        table.entries_[Key{n1, n2, alpha_key(alpha)}] = e;
      }
    }
  }
  return table;
}

const KsCriticalTable& KsCriticalTable::bundled() {
  static const KsCriticalTable table = computed(12, {0.05, 0.01});
  return table;
}

KsCriticalTable KsCriticalTable::from_csv(const std::filesystem::path& path) {
  const csv::Table raw = csv::read_file(path);
  if (csv::join_record(raw.header) != "n1,n2,alpha,critical_d") {
    throw DataError(path.string() + ": expected header 'n1,n2,alpha,critical_d'");
  }
  KsCriticalTable table;
  for (std::size_t r = 0; r < raw.rows.size(); ++r) {
    const auto& row = raw.rows[r];
    const std::string context = path.string() + ":" + std::to_string(raw.line_numbers[r]);
    if (row.size() != 4) throw DataError(context + ": expected 4 fields");
    Entry e;
    e.n1 = csv::parse_count(row[0], context);
    e.n2 = csv::parse_count(row[1], context);
    e.alpha = csv::parse_double(row[2], context);
    if (row[3] == "untestable") {
      e.critical_d = std::nullopt;
    } else {
      e.critical_d = csv::parse_double(row[3], context);
    }
    table.max_n_ = std::max({table.max_n_, e.n1, e.n2});
    table.entries_[Key{e.n1, e.n2, alpha_key(e.alpha)}] = e;
  }
  return table;
}

void KsCriticalTable::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path.string());
  out << "n1,n2,alpha,critical_d\n";
  for (const auto& [key, e] : entries_) {
    out << e.n1 << "," << e.n2 << "," << csv::format_double(e.alpha) << ","
        << (e.critical_d ? csv::format_double(*e.critical_d) : "untestable") << "\n";
  }
}

bool KsCriticalTable::supports_alpha(double alpha) const {
  for (const auto& [key, _] : entries_) {
    if (key.alpha_key == alpha_key(alpha)) return true;
  }
  return false;
}

std::vector<double> KsCriticalTable::alphas() const {
  std::vector<double> result;
  for (const auto& [key, e] : entries_) {
    if (result.empty() || result.back() != e.alpha) {
      bool seen = false;
      for (double a : result) seen = seen || a == e.alpha;
      if (!seen) result.push_back(e.alpha);
    }
  }
  return result;
}

const KsCriticalTable::Entry* KsCriticalTable::entry(std::int64_t n1, std::int64_t n2,
                                                     double alpha) const {
  auto it = entries_.find(Key{n1, n2, alpha_key(alpha)});
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<KsCriticalTable::Entry> KsCriticalTable::entries() const {
  std::vector<Entry> result;
  result.reserve(entries_.size());
  for (const auto& [_, e] : entries_) result.push_back(e);
  return result;
}

}  // namespace alignstat
