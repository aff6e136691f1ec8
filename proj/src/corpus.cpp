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

#include "compsplit/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>

#include "tsv.hpp"

namespace compsplit {

namespace {

bool is_continuation_byte(unsigned char c) { return (c & 0xC0) == 0x80; }

// Byte length of the code point starting at text[pos] (1 for invalid bytes,
// so scanning always makes progress).
std::size_t codepoint_bytes(std::string_view text, std::size_t pos) {
  std::size_t len = 1;
  while (pos + len < text.size() && is_continuation_byte(text[pos + len])) ++len;
  return len;
}

}  // namespace

std::string lowercase_utf8(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = text[i];
    if (c >= 'A' && c <= 'Z') {
      out.push_back(static_cast<char>(c + 0x20));
    } else if (c == 0xC3 && i + 1 < text.size()) {
      // Latin-1 supplement capitals U+00C0..U+00DE, except the multiplication
      // sign U+00D7, lowercase by adding 0x20 to the second byte.
      unsigned char d = text[i + 1];
      out.push_back(static_cast<char>(c));
      if (d >= 0x80 && d <= 0x9E && d != 0x97) {
        out.push_back(static_cast<char>(d + 0x20));
        ++i;
      }
    } else {
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

std::size_t utf8_length(std::string_view text) {
  std::size_t n = 0;
  for (unsigned char c : text) {
    if (!is_continuation_byte(c)) ++n;
  }
  return n;
}

std::string_view utf8_prefix(std::string_view text, std::size_t n_chars) {
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n_chars && pos < text.size(); ++i) {
    pos += codepoint_bytes(text, pos);
  }
  return text.substr(0, pos);
}

std::string strip_punctuation(std::string_view raw, std::string_view punctuation) {
  std::size_t begin = 0;
  std::size_t end = raw.size();
  while (begin < end && punctuation.find(raw[begin]) != std::string_view::npos) ++begin;
  while (end > begin && punctuation.find(raw[end - 1]) != std::string_view::npos) --end;
  return std::string(raw.substr(begin, end - begin));
}

std::string canonical_token(std::string_view raw, std::string_view punctuation) {
  return lowercase_utf8(strip_punctuation(raw, punctuation));
}

std::vector<std::string> tokenize(std::string_view line, std::string_view punctuation) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) {
      std::string token = canonical_token(line.substr(start, i - start), punctuation);
      if (!token.empty()) tokens.push_back(std::move(token));
    }
  }
  return tokens;
}

void WordCountTable::add(std::string_view word, std::uint64_t n) {
  if (n == 0 || word.empty()) return;
  auto it = entries_.find(word);
  if (it == entries_.end()) {
    entries_.emplace(std::string(word), n);
  } else {
    it->second += n;
  }
}

std::uint64_t WordCountTable::count(std::string_view word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? 0 : it->second;
}

KnownWordIndex::KnownWordIndex(int min_length) : min_length_(min_length) {}

std::string KnownWordIndex::bucket_key(std::string_view word) const {
  if (utf8_length(word) >= 3) return std::string(utf8_prefix(word, 3));
  return std::string(word);
}

void KnownWordIndex::insert(std::string word) {
  if (static_cast<int>(utf8_length(word)) < min_length_) return;
  auto [it, inserted] = buckets_[bucket_key(word)].insert(std::move(word));
  if (inserted) ++size_;
}

bool KnownWordIndex::contains(std::string_view word) const {
  auto bucket = buckets_.find(bucket_key(word));
  if (bucket == buckets_.end()) return false;
  return bucket->second.count(std::string(word)) > 0;
}

std::vector<std::string_view> KnownWordIndex::candidates_at(std::string_view text,
                                                            std::size_t pos) const {
  std::vector<std::string_view> out;
  std::string_view rest = text.substr(pos);
  if (rest.empty()) return out;

  // Words shorter than three characters live in whole-word buckets.
  if (min_length_ < 3) {
    std::size_t len = 0;
    for (int chars = 1; chars <= 2; ++chars) {
      if (len >= rest.size()) break;
      len += codepoint_bytes(rest, len);
      auto bucket = buckets_.find(std::string(rest.substr(0, len)));
      if (bucket != buckets_.end()) {
        for (const std::string& word : bucket->second) out.push_back(word);
      }
    }
  }

  std::string_view prefix = utf8_prefix(rest, 3);
  if (utf8_length(prefix) == 3) {
    auto bucket = buckets_.find(std::string(prefix));
    if (bucket != buckets_.end()) {
      for (const std::string& word : bucket->second) {
        if (rest.substr(0, word.size()) == word) out.push_back(word);
      }
    }
  }
  return out;
}

std::vector<std::string> KnownWordIndex::words() const {
  std::vector<std::string> out;
  out.reserve(size_);
  for (const auto& [key, bucket] : buckets_) {
    out.insert(out.end(), bucket.begin(), bucket.end());
  }
  return out;
}

WordCountTable count_words(const std::vector<std::string>& corpus_lines) {
  WordCountTable table;
  for (const std::string& line : corpus_lines) {
    for (std::string& token : tokenize(line)) {
      table.add(token);
    }
  }
  return table;
}

WordCountTable count_words(std::istream& corpus) {
  WordCountTable table;
  std::string line;
  while (detail::next_line(corpus, line)) {
    for (std::string& token : tokenize(line)) {
      table.add(token);
    }
  }
  return table;
}

WordCountTable count_words_file(const std::filesystem::path& corpus_path) {
  std::ifstream in = detail::open_input(corpus_path);
  return count_words(in);
}

KnownWordIndex build_index(const WordCountTable& counts, int min_length) {
  KnownWordIndex index(min_length);
  for (const auto& [word, count] : counts.entries()) {
    index.insert(word);
  }
  return index;
}

void save_counts(const WordCountTable& counts, const std::filesystem::path& path) {
  std::vector<std::pair<std::string_view, std::uint64_t>> sorted;
  sorted.reserve(counts.size());
  for (const auto& [word, count] : counts.entries()) {
    sorted.emplace_back(word, count);
  }
  std::sort(sorted.begin(), sorted.end());

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (const auto& [word, count] : sorted) {
    out << word << '\t' << count << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

WordCountTable load_counts(const std::filesystem::path& path) {
  std::ifstream in = detail::open_input(path);
  WordCountTable table;
  std::string line;
  std::size_t line_no = 0;
  while (detail::next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = detail::split_tabs(line);
    if (fields.size() != 2) {
      detail::parse_fail(path, line_no,
                         "expected 2 tab-separated columns, got " +
                             std::to_string(fields.size()));
    }
    if (fields[0].empty()) detail::parse_fail(path, line_no, "empty word");
    table.add(lowercase_utf8(fields[0]), detail::parse_count(fields[1], path, line_no));
  }
  return table;
}

}  // namespace compsplit
