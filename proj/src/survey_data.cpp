#include "alignstat/survey_data.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "alignstat/csv.hpp"
#include "alignstat/errors.hpp"
#include "json.hpp"

namespace alignstat {

namespace {

constexpr const char* kAggregatedHeader = "question_id,subgroup,source,option,count";
constexpr const char* kPerRespondentHeader = "question_id,subgroup,source,option";

std::string pair_name(const std::string& question_id, const Subgroup& subgroup) {
  return "(" + question_id + ", " + subgroup.key() + ")";
}

}  // namespace

std::string_view to_string(Source source) {
  return source == Source::kHuman ? "human" : "llm";
}

Source source_from_string(std::string_view text) {
  if (text == "human") return Source::kHuman;
  if (text == "llm") return Source::kLlm;
  throw DataError("source must be 'human' or 'llm', got '" + std::string(text) + "'");
}

Subgroup Subgroup::parse(std::string_view key) {
  auto pos = key.find(':');
  if (pos == std::string_view::npos || pos == 0 || pos + 1 == key.size()) {
    throw DataError("subgroup must be encoded 'dimension:value', got '" + std::string(key) + "'");
  }
  return Subgroup{std::string(key.substr(0, pos)), std::string(key.substr(pos + 1))};
}

std::optional<std::size_t> QuestionSpec::option_index(std::string_view label) const {
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (options[i] == label) return i;
  }
  return std::nullopt;
}

void QuestionSpec::validate() const {
  if (question_id.empty()) throw DataError("question with empty question_id");
  if (options.size() < 2) {
    throw DataError("question '" + question_id + "' needs at least 2 options, has " +
                    std::to_string(options.size()));
  }
  std::set<std::string> seen;
  for (const auto& opt : options) {
    if (opt.empty()) throw DataError("question '" + question_id + "' has an empty option label");
    if (!seen.insert(opt).second) {
      throw DataError("question '" + question_id + "' has duplicate option label '" + opt + "'");
    }
  }
  if (refused_index && *refused_index >= options.size()) {
    throw DataError("question '" + question_id + "' refused_index out of range");
  }
}

void ContingencyPair::validate() const {
  if (z_human.size() != z_llm.size()) {
    throw DataError(pair_name(question_id, subgroup) + ": count vectors differ in length");
  }
  std::int64_t s1 = 0, s2 = 0;
  for (auto v : z_human) {
    if (v < 0) throw DataError(pair_name(question_id, subgroup) + ": negative human count");
    s1 += v;
  }
  for (auto v : z_llm) {
    if (v < 0) throw DataError(pair_name(question_id, subgroup) + ": negative llm count");
    s2 += v;
  }
  if (s1 != n1 || s2 != n2) {
    throw DataError(pair_name(question_id, subgroup) + ": n1/n2 do not match count sums");
  }
  if (n1 < 1 || n2 < 1) {
    throw DataError(pair_name(question_id, subgroup) + ": both groups need at least one response");
  }
}

void Dataset::add_question(QuestionSpec question) {
  question.validate();
  auto it = questions_.find(question.question_id);
  if (it != questions_.end()) {
    if (it->second.options != question.options) {
      throw DataError("duplicate question_id '" + question.question_id +
                      "' with conflicting option lists");
    }
    return;  // identical duplicate is a no-op
  }
  questions_.emplace(question.question_id, std::move(question));
}

void Dataset::add_sample(const ResponseSample& sample) {
  add_count(sample.question_id, sample.subgroup, sample.source, sample.option_index, 1);
}

void Dataset::add_count(const std::string& question_id, const Subgroup& subgroup, Source source,
                        std::size_t option_index, std::int64_t count) {
  const QuestionSpec& q = question(question_id);
  if (option_index >= q.option_count()) {
    throw DataError("question '" + question_id + "': option index " +
                    std::to_string(option_index) + " out of range (k=" +
                    std::to_string(q.option_count()) + ")");
  }
  if (count < 0) throw DataError("negative count for question '" + question_id + "'");
  auto& cell = cells_[CellKey{question_id, subgroup, source}];
  cell.resize(q.option_count(), 0);
  cell[option_index] += count;
}

bool Dataset::has_question(const std::string& question_id) const {
  return questions_.count(question_id) > 0;
}

const QuestionSpec& Dataset::question(const std::string& question_id) const {
  auto it = questions_.find(question_id);
  if (it == questions_.end()) {
    throw DataError("unknown question_id '" + question_id + "'");
  }
  return it->second;
}

std::vector<std::string> Dataset::question_ids(bool with_data_only) const {
  std::vector<std::string> ids;
  if (!with_data_only) {
    for (const auto& [id, _] : questions_) ids.push_back(id);
    return ids;
  }
  std::set<std::string> seen;
  for (const auto& [key, _] : cells_) seen.insert(key.question_id);
  ids.assign(seen.begin(), seen.end());
  return ids;
}

std::vector<Subgroup> Dataset::subgroups_for(const std::string& question_id) const {
  std::set<Subgroup> seen;
  for (const auto& [key, _] : cells_) {
    if (key.question_id == question_id) seen.insert(key.subgroup);
  }
  return {seen.begin(), seen.end()};
}

const std::vector<std::int64_t>* Dataset::counts(const std::string& question_id,
                                                 const Subgroup& subgroup, Source source) const {
  auto it = cells_.find(CellKey{question_id, subgroup, source});
  return it == cells_.end() ? nullptr : &it->second;
}

std::int64_t Dataset::total_responses(Source source) const {
  std::int64_t total = 0;
  for (const auto& [key, counts] : cells_) {
    if (key.source != source) continue;
    for (auto c : counts) total += c;
  }
  return total;
}

std::vector<QuestionSpec> load_question_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open question manifest: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("question manifest " + path.string() + ": " + e.what());
  }
  if (!doc.is_array()) {
    throw DataError("question manifest " + path.string() + ": expected a JSON array");
  }
  std::vector<QuestionSpec> questions;
  for (const auto& item : doc) {
    QuestionSpec q;
    try {
      q.question_id = item.at("question_id").get<std::string>();
      q.prompt_text = item.value("prompt_text", std::string{});
      q.options = item.at("options").get<std::vector<std::string>>();
      if (item.contains("refused_label") && !item["refused_label"].is_null()) {
        const auto label = item["refused_label"].get<std::string>();
        auto idx = q.option_index(label);
        if (!idx) {
          throw DataError("question '" + q.question_id + "': refused_label '" + label +
                          "' is not one of the options");
        }
        q.refused_index = *idx;
      }
    } catch (const nlohmann::json::exception& e) {
      throw DataError("question manifest " + path.string() + ": " + e.what());
    }
    q.validate();
    questions.push_back(std::move(q));
  }
  return questions;
}

DataFormat detect_format(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path.string());
  std::string header;
  std::getline(in, header);
  if (!header.empty() && header.back() == '\r') header.pop_back();
  if (header == kAggregatedHeader) return DataFormat::kAggregated;
  if (header == kPerRespondentHeader) return DataFormat::kPerRespondent;
  throw DataError(path.string() + ": unrecognized header '" + header + "' (expected '" +
                  kAggregatedHeader + "' or '" + kPerRespondentHeader + "')");
}

Dataset load_responses(const std::filesystem::path& path, DataFormat format,
                       const std::vector<QuestionSpec>& questions) {
  Dataset dataset;
  for (const auto& q : questions) dataset.add_question(q);

  const csv::Table table = csv::read_file(path);
  const std::size_t expected_fields = format == DataFormat::kAggregated ? 5 : 4;
  const char* expected_header =
      format == DataFormat::kAggregated ? kAggregatedHeader : kPerRespondentHeader;
  if (csv::join_record(table.header) != expected_header) {
    throw DataError(path.string() + ": expected header '" + std::string(expected_header) +
                    "', got '" + csv::join_record(table.header) + "'");
  }

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string context = path.string() + ":" + std::to_string(table.line_numbers[r]);
    if (row.size() != expected_fields) {
      throw DataError(context + ": expected " + std::to_string(expected_fields) +
                      " fields, got " + std::to_string(row.size()));
    }
    const std::string& question_id = row[0];
    if (!dataset.has_question(question_id)) {
      throw DataError(context + ": unknown question_id '" + question_id + "'");
    }
    const QuestionSpec& q = dataset.question(question_id);
    Subgroup subgroup;
    try {
      subgroup = Subgroup::parse(row[1]);
    } catch (const DataError& e) {
      throw DataError(context + ": " + e.what());
    }
    Source source;
    try {
      source = source_from_string(row[2]);
    } catch (const DataError& e) {
      throw DataError(context + ": " + e.what());
    }
    auto option = q.option_index(row[3]);
    if (!option) {
      throw DataError(context + ": question '" + question_id + "' has no option labelled '" +
                      row[3] + "'");
    }
    const std::int64_t count =
        format == DataFormat::kAggregated ? csv::parse_count(row[4], context) : 1;
    dataset.add_count(question_id, subgroup, source, *option, count);
  }
  return dataset;
}

Dataset load_dataset(const std::filesystem::path& manifest_path,
                     const std::filesystem::path& data_path, DataFormat format) {
  return load_responses(data_path, format, load_question_manifest(manifest_path));
}

void write_aggregated_csv(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path.string());
  out << kAggregatedHeader << "\n";
  for (const auto& question_id : dataset.question_ids(/*with_data_only=*/true)) {
    const QuestionSpec& q = dataset.question(question_id);
    for (const auto& subgroup : dataset.subgroups_for(question_id)) {
      for (Source source : {Source::kHuman, Source::kLlm}) {
        const auto* counts = dataset.counts(question_id, subgroup, source);
        if (!counts) continue;
        for (std::size_t j = 0; j < counts->size(); ++j) {
          if ((*counts)[j] == 0) continue;
          out << csv::join_record({question_id, subgroup.key(), std::string(to_string(source)),
                                   q.options[j], std::to_string((*counts)[j])})
              << "\n";
        }
      }
    }
  }
}

namespace {

ContingencyPair assemble_pair(const QuestionSpec& question, const Subgroup& subgroup,
                              const std::vector<std::int64_t>* human,
                              const std::vector<std::int64_t>* llm, RefusedPolicy policy) {
  const std::string name = pair_name(question.question_id, subgroup);
  auto side_total = [](const std::vector<std::int64_t>* v) {
    std::int64_t s = 0;
    if (v) {
      for (auto c : *v) s += c;
    }
    return s;
  };
  ContingencyPair pair;
  pair.question_id = question.question_id;
  pair.subgroup = subgroup;
  const std::size_t k = question.option_count();
  pair.z_human.assign(k, 0);
  pair.z_llm.assign(k, 0);
  if (human) pair.z_human = *human;
  if (llm) pair.z_llm = *llm;

  if (policy == RefusedPolicy::kDrop && question.refused_index) {
    const auto idx = static_cast<std::ptrdiff_t>(*question.refused_index);
    pair.z_human.erase(pair.z_human.begin() + idx);
    pair.z_llm.erase(pair.z_llm.begin() + idx);
    if (pair.z_human.size() < 2) {
      throw UntestableError(name + ": fewer than 2 options remain after dropping refused");
    }
  }
  for (auto v : pair.z_human) pair.n1 += v;
  for (auto v : pair.z_llm) pair.n2 += v;
  if (pair.n1 < 1) throw UntestableError(name + ": no human responses" +
                                         (side_total(human) > 0 ? " after refused policy" : ""));
  if (pair.n2 < 1) throw UntestableError(name + ": no llm responses" +
                                         (side_total(llm) > 0 ? " after refused policy" : ""));
  pair.validate();
  return pair;
}

}  // namespace

ContingencyPair build_contingency(const Dataset& dataset, const QuestionSpec& question,
                                  const Subgroup& subgroup, RefusedPolicy policy) {
  return assemble_pair(question, subgroup,
                       dataset.counts(question.question_id, subgroup, Source::kHuman),
                       dataset.counts(question.question_id, subgroup, Source::kLlm), policy);
}

ContingencyPair build_contingency(std::span<const ResponseSample> samples,
                                  const QuestionSpec& question, const Subgroup& subgroup,
                                  RefusedPolicy policy) {
  std::vector<std::int64_t> human(question.option_count(), 0);
  std::vector<std::int64_t> llm(question.option_count(), 0);
  for (const auto& s : samples) {
    if (s.question_id != question.question_id || s.subgroup != subgroup) continue;
    if (s.option_index >= question.option_count()) {
      throw DataError("sample option index out of range for question '" + s.question_id + "'");
    }
    (s.source == Source::kHuman ? human : llm)[s.option_index] += 1;
  }
  return assemble_pair(question, subgroup, &human, &llm, policy);
}

}  // namespace alignstat
