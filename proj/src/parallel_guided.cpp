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

#include "compsplit/parallel_guided.hpp"

#include <fstream>
#include <stdexcept>

#include "tsv.hpp"

namespace compsplit {

EvidenceMatch match_option(const SplitOption& option,
                           const std::vector<std::string>& english,
                           const TranslationLexicon& lexicon, double threshold) {
  EvidenceMatch match;
  match.option = option;
  std::vector<bool> consumed(english.size(), false);
  for (const SplitPart& part : option.parts) {
    for (std::size_t j = 0; j < english.size(); ++j) {
      if (consumed[j]) continue;
      if (lexicon.prob(part.word, english[j]) >= threshold) {
        consumed[j] = true;
        match.consumed_english.push_back(j);
        ++match.covered_parts;
        break;
      }
    }
  }
  return match;
}

SplitOption choose_split_in_context(std::string_view word,
                                    const std::vector<std::string>& english,
                                    const KnownWordIndex& index,
                                    const WordCountTable& counts,
                                    const TranslationLexicon& lexicon,
                                    const SplitConfig& config, double threshold) {
  std::vector<SplitOption> options = enumerate_splits(word, index, config);

  const SplitOption* unsplit = nullptr;
  const SplitOption* best = nullptr;
  std::size_t best_covered = 0;
  double best_score = 0.0;

  // Evidence competition is among multi-part options; the unsplit option is
  // the default when no part finds English support.
  for (const SplitOption& option : options) {
    if (option.is_unsplit()) {
      unsplit = &option;
      continue;
    }
    EvidenceMatch match = match_option(option, english, lexicon, threshold);
    if (match.covered_parts == 0) continue;
    double score = score_frequency(option, counts);
    bool better = false;
    if (best == nullptr || match.covered_parts > best_covered) {
      better = true;
    } else if (match.covered_parts == best_covered) {
      if (option.part_count() > best->part_count()) {
        better = true;
      } else if (option.part_count() == best->part_count() && score > best_score) {
        better = true;
      }
    }
    if (better) {
      best = &option;
      best_covered = match.covered_parts;
      best_score = score;
    }
  }

  if (best != nullptr) return *best;
  if (unsplit != nullptr) return *unsplit;
  return split_raw(word);
}

void SplittingKnowledge::record(const SplitOption& chosen, std::uint64_t n) {
  if (n == 0) return;
  Tally& tally = table_[chosen.surface][chosen.rendered()];
  if (tally.count == 0) tally.option = chosen;
  tally.count += n;
}

bool SplittingKnowledge::contains(std::string_view word) const {
  return table_.find(word) != table_.end();
}

const std::map<std::string, SplittingKnowledge::Tally>* SplittingKnowledge::options_for(
    std::string_view word) const {
  auto it = table_.find(word);
  return it == table_.end() ? nullptr : &it->second;
}

SplittingKnowledge learn_knowledge(const ParallelCorpus& corpus,
                                   const KnownWordIndex& index,
                                   const WordCountTable& counts,
                                   const TranslationLexicon& lexicon,
                                   const SplitConfig& config, double threshold) {
  SplittingKnowledge knowledge;
  for (const SentencePair& pair : corpus.pairs) {
    for (const std::string& word : pair.german) {
      knowledge.record(
          choose_split_in_context(word, pair.english, index, counts, lexicon, config,
                                  threshold));
    }
  }
  return knowledge;
}

TranslationLexicon bootstrap_second_lexicon(const ParallelCorpus& corpus,
                                            const KnownWordIndex& index,
                                            const WordCountTable& counts,
                                            const SplitConfig& config,
                                            int em_iterations) {
  TrainOptions options;
  options.iterations = em_iterations;
  TranslationLexicon plain = train_lexicon_detailed(corpus, options).lexicon;

  // Pre-split the German side with the frequency method, fillers dropped.
  std::map<std::string, std::vector<std::string>> split_cache;
  ParallelCorpus transformed;
  transformed.pairs.reserve(corpus.size());
  for (const SentencePair& pair : corpus.pairs) {
    SentencePair split_pair;
    split_pair.english = pair.english;
    for (const std::string& word : pair.german) {
      auto it = split_cache.find(word);
      if (it == split_cache.end()) {
        std::vector<std::string> parts;
        for (const SplitPart& part : split_frequency(word, index, counts, config).parts) {
          parts.push_back(part.word);
        }
        it = split_cache.emplace(word, std::move(parts)).first;
      }
      split_pair.german.insert(split_pair.german.end(), it->second.begin(),
                               it->second.end());
    }
    transformed.pairs.push_back(std::move(split_pair));
  }

  TranslationLexicon second = train_lexicon_detailed(transformed, options).lexicon;
  return merge_lexicons(plain, second);
}

SplitOption apply_knowledge(std::string_view word, const SplittingKnowledge& knowledge,
                            const KnownWordIndex& index, const WordCountTable& counts,
                            const SplitConfig& config) {
  std::string canonical = lowercase_utf8(word);
  const auto* recorded = knowledge.options_for(canonical);
  if (recorded == nullptr) {
    return split_frequency(word, index, counts, config);
  }

  const SplittingKnowledge::Tally* best = nullptr;
  double best_score = 0.0;
  for (const auto& [rendered, tally] : *recorded) {
    double score = score_frequency(tally.option, counts);
    bool better = false;
    if (best == nullptr || tally.count > best->count) {
      better = true;
    } else if (tally.count == best->count) {
      if (tally.option.part_count() > best->option.part_count()) {
        better = true;
      } else if (tally.option.part_count() == best->option.part_count() &&
                 score > best_score) {
        better = true;
      }
    }
    if (better) {
      best = &tally;
      best_score = score;
    }
  }
  return best->option;
}

void save_knowledge(const SplittingKnowledge& knowledge,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (const auto& [word, tallies] : knowledge.table()) {
    std::vector<std::pair<const std::string*, const SplittingKnowledge::Tally*>> sorted;
    sorted.reserve(tallies.size());
    for (const auto& [rendered, tally] : tallies) {
      sorted.emplace_back(&rendered, &tally);
    }
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      if (a.second->count != b.second->count) return a.second->count > b.second->count;
      return *a.first < *b.first;
    });
    for (const auto& [rendered, tally] : sorted) {
      out << word << '\t' << *rendered << '\t' << tally->count << '\n';
    }
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

SplittingKnowledge load_knowledge(const std::filesystem::path& path) {
  std::ifstream in = detail::open_input(path);
  SplittingKnowledge knowledge;
  std::string line;
  std::size_t line_no = 0;
  while (detail::next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = detail::split_tabs(line);
    if (fields.size() != 3) {
      detail::parse_fail(path, line_no,
                         "expected `word<TAB>option<TAB>count`, got " +
                             std::to_string(fields.size()) + " columns");
    }
    SplitOption option;
    try {
      option = parse_option(fields[0], fields[1]);
    } catch (const std::exception& e) {
      detail::parse_fail(path, line_no, e.what());
    }
    knowledge.record(option, detail::parse_count(fields[2], path, line_no));
  }
  return knowledge;
}

}  // namespace compsplit
