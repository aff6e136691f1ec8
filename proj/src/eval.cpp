// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "compsplit/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "tsv.hpp"

namespace compsplit {

namespace {

// Byte offsets in the surface where a new part starts (the joints).
std::vector<std::size_t> joint_positions(const SplitOption& option) {
  std::vector<std::size_t> joints;
  std::size_t pos = 0;
  for (std::size_t i = 0; i + 1 < option.parts.size(); ++i) {
    pos += option.parts[i].word.size() + option.parts[i].filler.size();
    joints.push_back(pos);
  }
  return joints;
}

bool options_equal(const SplitOption& a, const SplitOption& b, MatchMode mode) {
  if (mode == MatchMode::Strict) return a.parts == b.parts;
  return joint_positions(a) == joint_positions(b);
}

std::string format_percent(double ratio, bool defined) {
  if (!defined) return "-";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.1f%%", ratio * 100.0);
  return buffer;
}

std::string format_ratio(double ratio, bool defined) {
  if (!defined) return "-";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6f", ratio);
  return buffer;
}

}  // namespace

std::string_view category_name(SplitCategory category) {
  switch (category) {
    case SplitCategory::CorrectSplit: return "correct split";
    case SplitCategory::CorrectNon: return "correct non";
    case SplitCategory::WrongNot: return "wrong not";
    case SplitCategory::WrongFaulty: return "wrong faulty split";
    case SplitCategory::WrongSplit: return "wrong split";
  }
  return "?";
}

SplitCategory classify(const SplitOption& predicted, const SplitOption& gold,
                       MatchMode mode) {
  if (predicted.surface != gold.surface) {
    throw std::invalid_argument("classify: prediction for '" + predicted.surface +
                                "' compared against gold for '" + gold.surface + "'");
  }
  bool gold_split = gold.part_count() > 1;
  bool predicted_split = predicted.part_count() > 1;
  if (gold_split && predicted_split) {
    return options_equal(predicted, gold, mode) ? SplitCategory::CorrectSplit
                                                : SplitCategory::WrongFaulty;
  }
  if (gold_split) return SplitCategory::WrongNot;
  if (predicted_split) return SplitCategory::WrongSplit;
  return SplitCategory::CorrectNon;
}

void GoldStandard::add(SplitOption gold) {
  std::string surface = gold.surface;
  if (!entries_.emplace(surface, std::move(gold)).second) {
    throw std::invalid_argument("duplicate gold entry for '" + surface + "'");
  }
}

namespace {

// Shared reader for gold and prediction files (same TSV layout).
std::map<std::string, SplitOption> load_option_file(const std::filesystem::path& path) {
  std::ifstream in = detail::open_input(path);
  std::map<std::string, SplitOption> options;
  std::string line;
  std::size_t line_no = 0;
  while (detail::next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = detail::split_tabs(line);
    if (fields.size() != 2) {
      detail::parse_fail(path, line_no,
                         "expected `surface<TAB>parts`, got " +
                             std::to_string(fields.size()) + " columns");
    }
    SplitOption option;
    try {
      option = parse_option(fields[0], fields[1]);
    } catch (const std::exception& e) {
      detail::parse_fail(path, line_no, e.what());
    }
    std::string surface = option.surface;
    if (!options.emplace(std::move(surface), std::move(option)).second) {
      detail::parse_fail(path, line_no, "duplicate entry for '" + std::string(fields[0]) + "'");
    }
  }
  return options;
}

}  // namespace

GoldStandard load_gold(const std::filesystem::path& path) {
  GoldStandard gold;
  for (auto& [surface, option] : load_option_file(path)) {
    gold.add(std::move(option));
  }
  return gold;
}

std::map<std::string, SplitOption> load_predictions(const std::filesystem::path& path) {
  return load_option_file(path);
}

EvalReport EvalReport::from_counts(std::uint64_t correct_split, std::uint64_t correct_non,
                                   std::uint64_t wrong_not, std::uint64_t wrong_faulty,
                                   std::uint64_t wrong_split) {
  EvalReport report;
  report.correct_split = correct_split;
  report.correct_non = correct_non;
  report.wrong_not = wrong_not;
  report.wrong_faulty = wrong_faulty;
  report.wrong_split = wrong_split;

  std::uint64_t precision_denom = correct_split + wrong_faulty + wrong_split;
  report.precision_defined = precision_denom > 0;
  if (report.precision_defined) {
    report.precision = static_cast<double>(correct_split) / precision_denom;
  }
  std::uint64_t recall_denom = correct_split + wrong_faulty + wrong_not;
  report.recall_defined = recall_denom > 0;
  if (report.recall_defined) {
    report.recall = static_cast<double>(correct_split) / recall_denom;
  }
  std::uint64_t total = report.total();
  report.accuracy_defined = total > 0;
  if (report.accuracy_defined) {
    report.accuracy = static_cast<double>(correct_split + correct_non) / total;
  }
  return report;
}

EvalReport evaluate(const std::map<std::string, SplitOption>& predictions,
                    const GoldStandard& gold, MatchMode mode) {
  std::vector<std::string> missing;
  std::uint64_t tallies[5] = {0, 0, 0, 0, 0};
  for (const auto& [surface, gold_option] : gold.entries()) {
    auto it = predictions.find(surface);
    if (it == predictions.end()) {
      missing.push_back(surface);
      continue;
    }
    tallies[static_cast<int>(classify(it->second, gold_option, mode))] += 1;
  }
  if (!missing.empty()) {
    std::string message = "missing predictions for " + std::to_string(missing.size()) +
                          " gold words:";
    std::size_t shown = std::min<std::size_t>(missing.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) message += " " + missing[i];
    if (shown < missing.size()) message += " ...";
    throw std::runtime_error(message);
  }
  return EvalReport::from_counts(tallies[0], tallies[1], tallies[2], tallies[3],
                                 tallies[4]);
}

std::string format_report_table(const EvalReport& report, std::string_view label) {
  char buffer[256];
  std::string out;
  std::snprintf(buffer, sizeof(buffer), "%-16s %8s %8s %8s %8s %8s %8s %8s %8s\n",
                "", "corr.spl", "corr.non", "wrg.not", "wrg.flt", "wrg.spl",
                "prec.", "recall", "acc.");
  out += buffer;
  std::snprintf(buffer, sizeof(buffer),
                "%-16s %8llu %8llu %8llu %8llu %8llu %8s %8s %8s\n",
                std::string(label).c_str(),
                static_cast<unsigned long long>(report.correct_split),
                static_cast<unsigned long long>(report.correct_non),
                static_cast<unsigned long long>(report.wrong_not),
                static_cast<unsigned long long>(report.wrong_faulty),
                static_cast<unsigned long long>(report.wrong_split),
                format_percent(report.precision, report.precision_defined).c_str(),
                format_percent(report.recall, report.recall_defined).c_str(),
                format_percent(report.accuracy, report.accuracy_defined).c_str());
  out += buffer;
  return out;
}

std::string format_report_tsv(const EvalReport& report) {
  std::string out =
      "correct_split\tcorrect_non\twrong_not\twrong_faulty\twrong_split"
      "\tprecision\trecall\taccuracy\n";
  out += std::to_string(report.correct_split) + '\t' + std::to_string(report.correct_non) +
         '\t' + std::to_string(report.wrong_not) + '\t' +
         std::to_string(report.wrong_faulty) + '\t' + std::to_string(report.wrong_split) +
         '\t' + format_ratio(report.precision, report.precision_defined) + '\t' +
         format_ratio(report.recall, report.recall_defined) + '\t' +
         format_ratio(report.accuracy, report.accuracy_defined) + '\n';
  return out;
}

std::string format_report_jsonl(const EvalReport& report) {
  nlohmann::json line{
      {"correct_split", report.correct_split},
      {"correct_non", report.correct_non},
      {"wrong_not", report.wrong_not},
      {"wrong_faulty", report.wrong_faulty},
      {"wrong_split", report.wrong_split},
      {"precision", report.precision},
      {"precision_defined", report.precision_defined},
      {"recall", report.recall},
      {"recall_defined", report.recall_defined},
      {"accuracy", report.accuracy},
      {"accuracy_defined", report.accuracy_defined},
  };
  return line.dump() + "\n";
}

}  // namespace compsplit
