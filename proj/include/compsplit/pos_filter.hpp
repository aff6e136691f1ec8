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
#include <set>
#include <string>
#include <string_view>

#include "compsplit/corpus.hpp"

namespace compsplit {

/// Per-word part-of-speech tag counts from a tagged corpus. Tags are opaque
/// strings; no tagset is assumed.
class PosTable {
 public:
  void add(std::string_view word, std::string_view tag, std::uint64_t n = 1);

  const std::map<std::string, std::uint64_t>* tags_for(std::string_view word) const;
  const std::map<std::string, std::map<std::string, std::uint64_t>, std::less<>>&
  entries() const {
    return entries_;
  }
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::map<std::string, std::uint64_t>, std::less<>> entries_;
};

// Accepts aggregated `word<TAB>tag<TAB>count` or a per-token `token<TAB>tag`
// stream; the format is auto-detected from the first data line. Throws
// std::runtime_error naming the offending line on malformed input.
PosTable load_pos_table(const std::filesystem::path& path);

/// Content-word tags a compound part must majority-carry. The default is
/// the STTS set of nouns, adjectives, adverbs, verbs and the negation
/// particle.
struct PosWhitelist {
  std::set<std::string, std::less<>> tags;

  static PosWhitelist default_stts();
  bool allows(std::string_view tag) const { return tags.count(tag) > 0; }
};

// One tag per line.
PosWhitelist load_pos_whitelist(const std::filesystem::path& path);

/// Words whose whitelisted tag occurrences form a strict majority of all
/// their tag occurrences. Ties exclude.
std::set<std::string> content_words(const PosTable& table, const PosWhitelist& whitelist);

/// Index restricted to the given words. Everything else (including words
/// absent from `allowed`) is no longer available as a compound part.
KnownWordIndex restrict_index(const KnownWordIndex& index,
                              const std::set<std::string>& allowed);

}  // namespace compsplit
