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

#include "compsplit/pos_filter.hpp"

#include <stdexcept>

#include "tsv.hpp"

namespace compsplit {

void PosTable::add(std::string_view word, std::string_view tag, std::uint64_t n) {
  if (n == 0 || word.empty() || tag.empty()) return;
  auto it = entries_.find(word);
  if (it == entries_.end()) {
    it = entries_.emplace(std::string(word), std::map<std::string, std::uint64_t>{}).first;
  }
  it->second[std::string(tag)] += n;
}

const std::map<std::string, std::uint64_t>* PosTable::tags_for(
    std::string_view word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

PosTable load_pos_table(const std::filesystem::path& path) {
  std::ifstream in = detail::open_input(path);
  PosTable table;
  std::string line;
  std::size_t line_no = 0;
  std::size_t expected_columns = 0;  // decided by the first data line
  while (detail::next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = detail::split_tabs(line);
    if (expected_columns == 0) {
      if (fields.size() != 2 && fields.size() != 3) {
        detail::parse_fail(path, line_no,
                           "expected `word<TAB>tag<TAB>count` or `token<TAB>tag`, got " +
                               std::to_string(fields.size()) + " columns");
      }
      expected_columns = fields.size();
    } else if (fields.size() != expected_columns) {
      detail::parse_fail(path, line_no,
                         "expected " + std::to_string(expected_columns) +
                             " columns like the first line, got " +
                             std::to_string(fields.size()));
    }
    std::string word = canonical_token(fields[0]);
    if (word.empty()) continue;  // punctuation token
    if (fields[1].empty()) detail::parse_fail(path, line_no, "empty tag");
    std::uint64_t count =
        expected_columns == 3 ? detail::parse_count(fields[2], path, line_no) : 1;
    table.add(word, fields[1], count);
  }
  return table;
}

PosWhitelist PosWhitelist::default_stts() {
  return PosWhitelist{{
      "ADJA", "ADJD", "ADV", "NN", "NE", "PTKNEG", "VVFIN", "VVIMP", "VVINF",
      "VVIZU", "VVPP", "VAFIN", "VAIMP", "VAINF", "VAPP", "VMFIN", "VMINF", "VMPP",
  }};
}

PosWhitelist load_pos_whitelist(const std::filesystem::path& path) {
  std::ifstream in = detail::open_input(path);
  PosWhitelist whitelist;
  std::string line;
  while (detail::next_line(in, line)) {
    if (!line.empty()) whitelist.tags.insert(line);
  }
  if (whitelist.tags.empty()) {
    throw std::runtime_error("POS whitelist " + path.string() + " is empty");
  }
  return whitelist;
}

std::set<std::string> content_words(const PosTable& table, const PosWhitelist& whitelist) {
  std::set<std::string> words;
  for (const auto& [word, tags] : table.entries()) {
    std::uint64_t in_whitelist = 0;
    std::uint64_t outside = 0;
    for (const auto& [tag, count] : tags) {
      if (whitelist.allows(tag)) {
        in_whitelist += count;
      } else {
        outside += count;
      }
    }
    if (in_whitelist > outside) words.insert(word);
  }
  return words;
}

KnownWordIndex restrict_index(const KnownWordIndex& index,
                              const std::set<std::string>& allowed) {
  KnownWordIndex restricted(index.min_length());
  for (std::string& word : index.words()) {
    if (allowed.count(word) > 0) restricted.insert(std::move(word));
  }
  return restricted;
}

}  // namespace compsplit
