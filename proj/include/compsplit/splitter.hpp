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

#include <string>
#include <string_view>
#include <vector>

#include "compsplit/corpus.hpp"

namespace compsplit {

/// One part of a decomposition: a known word plus the filler letters (if
/// any) inserted at the joint after it. The last part never has a filler.
struct SplitPart {
  std::string word;
  std::string filler;

  friend bool operator==(const SplitPart&, const SplitPart&) = default;
};

/// One complete decomposition of a surface word. Concatenating
/// part.word + part.filler over all parts reproduces the canonical surface
/// exactly. A single part with no filler is the unsplit option;
/// out_of_vocabulary marks the degenerate unsplit option of a word that is
/// not itself in the index.
struct SplitOption {
  std::string surface;
  std::vector<SplitPart> parts;
  bool out_of_vocabulary = false;

  std::size_t part_count() const { return parts.size(); }
  bool is_unsplit() const { return parts.size() == 1; }

  // "word" or "word(+filler)" per part, space-joined. For the unsplit
  // option this is just the canonical surface.
  std::string rendered() const;

  friend bool operator==(const SplitOption& a, const SplitOption& b) {
    return a.surface == b.surface && a.parts == b.parts;
  }
};

struct SplitConfig {
  std::vector<std::string> fillers{"s", "es"};
  int min_part_length = 3;
  bool allow_whole_word = true;
  // Permitted letter deletions at joints (Schweigen + Minute ->
  // Schweigeminute drops the n). Accepted here so configs round-trip.
  // TODO: wire joint_letter_drops into the enumeration recursion.
  std::vector<std::string> joint_letter_drops{};
  // Words longer than this (in code points) are returned unsplit.
  std::size_t max_word_length = 100;
};

/// Every decomposition of `word` over the index that covers the whole word
/// with known parts and fillers, plus the unsplit option. Deterministic
/// order: decreasing part count, then lexicographic by rendering.
std::vector<SplitOption> enumerate_splits(std::string_view word,
                                          const KnownWordIndex& index,
                                          const SplitConfig& config = {});

/// Geometric mean of the parts' corpus frequencies. Fillers carry no count;
/// a part with count 0 forces the score to 0.
double score_frequency(const SplitOption& option, const WordCountTable& counts);

/// The enumerated option with the highest frequency score. Exact score ties
/// go to the option with fewer parts, then to enumeration order.
SplitOption split_frequency(std::string_view word, const KnownWordIndex& index,
                            const WordCountTable& counts,
                            const SplitConfig& config = {});

/// The option with the most parts; among equally big splits, the one with
/// the highest frequency score.
SplitOption split_eager(std::string_view word, const KnownWordIndex& index,
                        const WordCountTable& counts,
                        const SplitConfig& config = {});

/// Always the unsplit option.
SplitOption split_raw(std::string_view word);

/// Inverse of SplitOption::rendered(). Throws std::runtime_error on bad
/// syntax or when the parts do not reconstruct the surface.
SplitOption parse_option(std::string_view surface, std::string_view rendered);

}  // namespace compsplit
