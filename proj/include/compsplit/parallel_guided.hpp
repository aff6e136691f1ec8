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
#include <vector>

#include "compsplit/lexicon.hpp"
#include "compsplit/splitter.hpp"

namespace compsplit {

inline constexpr double kDefaultEvidenceThreshold = 0.01;

/// How much English-side evidence a splitting option has in one sentence.
struct EvidenceMatch {
  SplitOption option;
  std::size_t covered_parts = 0;
  // English token positions consumed as evidence, one per covered part.
  // Each position is used at most once.
  std::vector<std::size_t> consumed_english;
};

/// Walks the option's parts left to right; each part consumes the first
/// still-unconsumed English token e with p(e | part) >= threshold.
EvidenceMatch match_option(const SplitOption& option,
                           const std::vector<std::string>& english,
                           const TranslationLexicon& lexicon,
                           double threshold = kDefaultEvidenceThreshold);

/// Picks the split of `word` best supported by the English side of its
/// sentence: the multi-part options with the most covered parts, then the
/// most parts, with frequency score as the ultimate tie-breaker. Without any
/// evidence the word stays unsplit.
SplitOption choose_split_in_context(std::string_view word,
                                    const std::vector<std::string>& english,
                                    const KnownWordIndex& index,
                                    const WordCountTable& counts,
                                    const TranslationLexicon& lexicon,
                                    const SplitConfig& config = {},
                                    double threshold = kDefaultEvidenceThreshold);

/// Per word type, how often each splitting option was chosen across a
/// parallel corpus. Options are keyed by their canonical rendering, so
/// `aktions plan` and `aktion(+s) plan` tally separately.
class SplittingKnowledge {
 public:
  struct Tally {
    SplitOption option;
    std::uint64_t count = 0;
  };

  void record(const SplitOption& chosen, std::uint64_t n = 1);

  bool contains(std::string_view word) const;
  const std::map<std::string, Tally>* options_for(std::string_view word) const;
  const std::map<std::string, std::map<std::string, Tally>, std::less<>>& table() const {
    return table_;
  }
  std::size_t word_count() const { return table_.size(); }

 private:
  std::map<std::string, std::map<std::string, Tally>, std::less<>> table_;
};

/// Runs choose_split_in_context on every German token of every pair and
/// tallies the chosen options per word type.
SplittingKnowledge learn_knowledge(const ParallelCorpus& corpus,
                                   const KnownWordIndex& index,
                                   const WordCountTable& counts,
                                   const TranslationLexicon& lexicon,
                                   const SplitConfig& config = {},
                                   double threshold = kDefaultEvidenceThreshold);

/// Trains a lexicon on the corpus as-is, retrains on a copy whose German
/// side was pre-split with the frequency method (fillers dropped), and
/// returns the merge of the two. The second lexicon captures
/// compound-internal senses such as grund -> basic.
TranslationLexicon bootstrap_second_lexicon(const ParallelCorpus& corpus,
                                            const KnownWordIndex& index,
                                            const WordCountTable& counts,
                                            const SplitConfig& config = {},
                                            int em_iterations = 5);

/// Follows the word's most frequent recorded option (ties: more parts, then
/// frequency score). Words missing from the knowledge table back off to
/// split_frequency.
SplitOption apply_knowledge(std::string_view word,
                            const SplittingKnowledge& knowledge,
                            const KnownWordIndex& index,
                            const WordCountTable& counts,
                            const SplitConfig& config = {});

// TSV `word<TAB>rendered_option<TAB>count`; reloads bit-exactly.
void save_knowledge(const SplittingKnowledge& knowledge,
                    const std::filesystem::path& path);
SplittingKnowledge load_knowledge(const std::filesystem::path& path);

}  // namespace compsplit
