#ifndef ALIGNSTAT_CSV_HPP_
#define ALIGNSTAT_CSV_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace alignstat::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // 1-based line number of each row in the source file, for error messages.
  std::vector<std::size_t> line_numbers;
};

// Parses an RFC-4180-style CSV file: comma separated, optional double-quoted
// fields with "" escapes, CRLF tolerated. The first line is the header.
// Throws DataError naming the offending line.
Table read_file(const std::filesystem::path& path);

// Splits one CSV record. Throws DataError on unterminated quotes.
std::vector<std::string> split_record(const std::string& line);

// Joins fields into one CSV record, quoting only where required.
std::string join_record(const std::vector<std::string>& fields);

// Shortest round-trip decimal representation ("0.05", "1", "0.230181...").
std::string format_double(double value);

// Strict numeric parsers used by the loaders; `context` names the line.
std::int64_t parse_count(const std::string& text, const std::string& context);
double parse_double(const std::string& text, const std::string& context);

}  // namespace alignstat::csv

#endif  // ALIGNSTAT_CSV_HPP_
