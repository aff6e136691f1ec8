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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "compsplit/splitter.hpp"

namespace compsplit {

enum class SplitCategory {
  CorrectSplit,   // should be split, split correctly
  CorrectNon,     // should not be split, was not
  WrongNot,       // should be split, was not
  WrongFaulty,    // should be split, was split, but wrongly
  WrongSplit,     // should not be split, but was
};

enum class MatchMode {
  Strict,   // part/filler sequences must match exactly
  Lenient,  // only the joint positions in the surface string must match
};

std::string_view category_name(SplitCategory category);

/// Classifies one prediction against the gold option for the same surface
/// word. Throws std::invalid_argument on a surface mismatch.
SplitCategory classify(const SplitOption& predicted, const SplitOption& gold,
                       MatchMode mode = MatchMode::Strict);

/// Manually annotated correct splits, keyed by canonical surface word. A
/// single-part entry means "do not split".
class GoldStandard {
 public:
  // Throws std::invalid_argument on a duplicate surface.
  void add(SplitOption gold);

  const std::map<std::string, SplitOption>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, SplitOption> entries_;
};

// Both use the splitter's option rendering: `surface<TAB>part1 part2 ...`,
// with a bare surface in column 2 meaning "do not split".
GoldStandard load_gold(const std::filesystem::path& path);
std::map<std::string, SplitOption> load_predictions(const std::filesystem::path& path);

struct EvalReport {
  std::uint64_t correct_split = 0;
  std::uint64_t correct_non = 0;
  std::uint64_t wrong_not = 0;
  std::uint64_t wrong_faulty = 0;
  std::uint64_t wrong_split = 0;

  // Each ratio is 0 with its defined flag false when the denominator is 0.
  double precision = 0.0;
  double recall = 0.0;
  double accuracy = 0.0;
  bool precision_defined = false;
  bool recall_defined = false;
  bool accuracy_defined = false;

  std::uint64_t total() const {
    return correct_split + correct_non + wrong_not + wrong_faulty + wrong_split;
  }

  // precision = cs / (cs + wf + ws), recall = cs / (cs + wf + wn),
  // accuracy = (cs + cn) / total.
  static EvalReport from_counts(std::uint64_t correct_split, std::uint64_t correct_non,
                                std::uint64_t wrong_not, std::uint64_t wrong_faulty,
                                std::uint64_t wrong_split);
};

/// Tallies classify() over every gold entry. Throws std::runtime_error
/// listing the gold words that have no prediction.
EvalReport evaluate(const std::map<std::string, SplitOption>& predictions,
                    const GoldStandard& gold, MatchMode mode = MatchMode::Strict);

std::string format_report_table(const EvalReport& report,
                                std::string_view label = "predictions");
std::string format_report_tsv(const EvalReport& report);
std::string format_report_jsonl(const EvalReport& report);

}  // namespace compsplit
