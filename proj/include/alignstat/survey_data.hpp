#ifndef ALIGNSTAT_SURVEY_DATA_HPP_
#define ALIGNSTAT_SURVEY_DATA_HPP_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace alignstat {

enum class Source { kHuman, kLlm };

std::string_view to_string(Source source);
Source source_from_string(std::string_view text);

// One demographic slice, e.g. ("age", "65+"). Flat single-dimension keys;
// intersections are out of scope.
struct Subgroup {
  std::string dimension;
  std::string value;

  auto operator<=>(const Subgroup&) const = default;

  // Canonical "dimension:value" encoding used by all file formats.
  std::string key() const { return dimension + ":" + value; }
  static Subgroup parse(std::string_view key);
};

struct QuestionSpec {
  std::string question_id;
  std::string prompt_text;
  std::vector<std::string> options;
  std::optional<std::size_t> refused_index;

  std::size_t option_count() const { return options.size(); }
  std::optional<std::size_t> option_index(std::string_view label) const;
  void validate() const;
};

struct ResponseSample {
  std::string question_id;
  Source source = Source::kHuman;
  Subgroup subgroup;
  std::size_t option_index = 0;
};

// Aligned per-option frequency vectors for one (question, subgroup) pair.
// z_human[j] and z_llm[j] count responses choosing option j; n1/n2 are the
// group sizes.
struct ContingencyPair {
  std::string question_id;
  Subgroup subgroup;
  std::vector<std::int64_t> z_human;
  std::vector<std::int64_t> z_llm;
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;

  std::size_t option_count() const { return z_human.size(); }
  void validate() const;
};

enum class RefusedPolicy { kInclude, kDrop };
enum class DataFormat { kPerRespondent, kAggregated };

// Response counts indexed by (question, subgroup, source). Aggregated rows
// are retained as counts; per-respondent rows increment them, which is
// equivalent and keeps large surveys cheap to hold.
class Dataset {
 public:
  void add_question(QuestionSpec question);
  void add_sample(const ResponseSample& sample);
  void add_count(const std::string& question_id, const Subgroup& subgroup, Source source,
                 std::size_t option_index, std::int64_t count);

  bool has_question(const std::string& question_id) const;
  const QuestionSpec& question(const std::string& question_id) const;
  // Sorted; only questions with at least one response row when
  // `with_data_only` is set.
  std::vector<std::string> question_ids(bool with_data_only = false) const;
  // Sorted distinct subgroups with data for this question (either source).
  std::vector<Subgroup> subgroups_for(const std::string& question_id) const;
  // Per-option counts, or nullptr when the (question, subgroup, source) cell
  // is empty.
  const std::vector<std::int64_t>* counts(const std::string& question_id,
                                          const Subgroup& subgroup, Source source) const;
  std::int64_t total_responses(Source source) const;

  const std::map<std::string, QuestionSpec>& questions() const { return questions_; }

 private:
  struct CellKey {
    std::string question_id;
    Subgroup subgroup;
    Source source;
    auto operator<=>(const CellKey&) const = default;
  };

  std::map<std::string, QuestionSpec> questions_;
  std::map<CellKey, std::vector<std::int64_t>> cells_;
};

// Question manifest: JSON array of
//   {question_id, prompt_text, options: [...], refused_label?}.
std::vector<QuestionSpec> load_question_manifest(const std::filesystem::path& path);

// Loads a response file against an already-loaded question list.
// Aggregated format:     question_id,subgroup,source,option,count
// Per-respondent format: question_id,subgroup,source,option
Dataset load_responses(const std::filesystem::path& path, DataFormat format,
                       const std::vector<QuestionSpec>& questions);

// Manifest + data file in one call.
Dataset load_dataset(const std::filesystem::path& manifest_path,
                     const std::filesystem::path& data_path, DataFormat format);

// Infers the format from the CSV header.
DataFormat detect_format(const std::filesystem::path& path);

// Serializes every non-empty cell back to the aggregated interchange format,
// sorted, so a reload reproduces identical contingency pairs.
void write_aggregated_csv(const Dataset& dataset, const std::filesystem::path& path);

// Builds the aligned frequency vectors for one (question, subgroup) pair.
// With RefusedPolicy::kDrop the refused option's column is removed and k
// shrinks by one. Throws UntestableError when either side is empty (or fewer
// than two options survive the policy).
ContingencyPair build_contingency(const Dataset& dataset, const QuestionSpec& question,
                                  const Subgroup& subgroup, RefusedPolicy policy);
ContingencyPair build_contingency(std::span<const ResponseSample> samples,
                                  const QuestionSpec& question, const Subgroup& subgroup,
                                  RefusedPolicy policy);

}  // namespace alignstat

#endif  // ALIGNSTAT_SURVEY_DATA_HPP_
