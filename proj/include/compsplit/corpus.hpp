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
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace compsplit {

// Byte-oriented UTF-8 helpers. Lowercasing covers ASCII plus the Latin-1
// supplement, which is all German text needs (ä ö ü ß pass through or map
// from their capitals). Anything else is left untouched.
std::string lowercase_utf8(std::string_view text);
std::size_t utf8_length(std::string_view text);
std::string_view utf8_prefix(std::string_view text, std::size_t n_chars);

inline constexpr std::string_view kDefaultPunctuation =
    ".,;:!?\"'()[]{}<>|/\\-_*+=~`@#$%^&";

// Strips leading/trailing punctuation bytes, preserving case.
std::string strip_punctuation(std::string_view raw,
                              std::string_view punctuation = kDefaultPunctuation);

// Strips leading/trailing punctuation bytes and lowercases. May return an
// empty string (e.g. for a token that is pure punctuation).
std::string canonical_token(std::string_view raw,
                            std::string_view punctuation = kDefaultPunctuation);

// Whitespace split followed by canonical_token; empty results are dropped.
std::vector<std::string> tokenize(std::string_view line,
                                  std::string_view punctuation = kDefaultPunctuation);

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

/// Word -> occurrence count over a monolingual corpus. Keys are canonical
/// (lowercased) tokens; absent words count 0.
class WordCountTable {
 public:
  void add(std::string_view word, std::uint64_t n = 1);
  std::uint64_t count(std::string_view word) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::unordered_map<std::string, std::uint64_t, StringHash, std::equal_to<>>&
  entries() const {
    return entries_;
  }

 private:
  std::unordered_map<std::string, std::uint64_t, StringHash, std::equal_to<>> entries_;
};

/// The searchable vocabulary of candidate compound parts. Words are bucketed
/// by their first three characters so that candidate lookup at a position
/// only scans one small bucket. Words shorter than min_length are not
/// stored; if min_length is configured below 3, such short words are
/// bucketed by the whole word.
class KnownWordIndex {
 public:
  explicit KnownWordIndex(int min_length = 3);

  int min_length() const { return min_length_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // Ignores words shorter than min_length (in code points).
  void insert(std::string word);
  bool contains(std::string_view word) const;

  // Known words w with text.substr(pos).starts_with(w), in a fixed
  // deterministic order. pos is a byte offset at a code point boundary.
  std::vector<std::string_view> candidates_at(std::string_view text,
                                              std::size_t pos) const;

  // All indexed words, sorted.
  std::vector<std::string> words() const;
  const std::map<std::string, std::set<std::string>>& buckets() const {
    return buckets_;
  }

 private:
  std::string bucket_key(std::string_view word) const;

  int min_length_;
  std::size_t size_ = 0;
  std::map<std::string, std::set<std::string>> buckets_;
};

WordCountTable count_words(const std::vector<std::string>& corpus_lines);
WordCountTable count_words(std::istream& corpus);
WordCountTable count_words_file(const std::filesystem::path& corpus_path);

KnownWordIndex build_index(const WordCountTable& counts, int min_length = 3);

// TSV `word<TAB>count`, sorted by word. load_counts throws std::runtime_error
// naming the offending line on malformed input.
void save_counts(const WordCountTable& counts, const std::filesystem::path& path);
WordCountTable load_counts(const std::filesystem::path& path);

}  // namespace compsplit
