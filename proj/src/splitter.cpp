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

#include "compsplit/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace compsplit {

namespace {

SplitOption make_unsplit(std::string canonical, bool out_of_vocabulary) {
  SplitOption option;
  option.parts.push_back({canonical, ""});
  option.surface = std::move(canonical);
  option.out_of_vocabulary = out_of_vocabulary;
  return option;
}

// Exhaustive recursive search over the index: at each position try every
// known word matching there, then continue either directly or across a
// filler. Complete multi-part decompositions are emitted; the whole-word
// match (empty stack, word consumed) is left to the caller's unsplit option.
struct Enumerator {
  const std::string& word;
  const KnownWordIndex& index;
  const SplitConfig& config;
  const std::vector<std::string>& fillers;
  std::vector<SplitPart> stack;
  std::vector<SplitOption>& out;

  void run(std::size_t pos) {
    for (std::string_view candidate : index.candidates_at(word, pos)) {
      if (static_cast<int>(utf8_length(candidate)) < config.min_part_length) continue;
      std::size_t end = pos + candidate.size();
      if (end == word.size()) {
        if (!stack.empty()) emit(candidate);
        continue;
      }
      stack.push_back({std::string(candidate), ""});
      run(end);
      for (const std::string& filler : fillers) {
        // A filler must be followed by at least one more part.
        if (end + filler.size() < word.size() &&
            word.compare(end, filler.size(), filler) == 0) {
          stack.back().filler = filler;
          run(end + filler.size());
        }
      }
      stack.pop_back();
    }
  }

  void emit(std::string_view last) {
    SplitOption option;
    option.surface = word;
    option.parts = stack;
    option.parts.push_back({std::string(last), ""});
    out.push_back(std::move(option));
  }
};

}  // namespace

std::string SplitOption::rendered() const {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += ' ';
    out += parts[i].word;
    if (!parts[i].filler.empty()) {
      out += "(+";
      out += parts[i].filler;
      out += ')';
    }
  }
  return out;
}

std::vector<SplitOption> enumerate_splits(std::string_view word,
                                          const KnownWordIndex& index,
                                          const SplitConfig& config) {
  std::string canonical = lowercase_utf8(word);
  if (canonical.empty()) throw std::invalid_argument("cannot split an empty word");

  std::vector<SplitOption> options;
  if (utf8_length(canonical) <= config.max_word_length) {
    std::vector<std::string> fillers;
    for (const std::string& filler : config.fillers) {
      if (!filler.empty() &&
          std::find(fillers.begin(), fillers.end(), filler) == fillers.end()) {
        fillers.push_back(filler);
      }
    }
    Enumerator enumerator{canonical, index, config, fillers, {}, options};
    enumerator.run(0);
  }

  if (config.allow_whole_word || options.empty()) {
    options.push_back(make_unsplit(canonical, !index.contains(canonical)));
  }

  std::sort(options.begin(), options.end(),
            [](const SplitOption& a, const SplitOption& b) {
              if (a.part_count() != b.part_count()) {
                return a.part_count() > b.part_count();
              }
              return a.rendered() < b.rendered();
            });
  return options;
}

double score_frequency(const SplitOption& option, const WordCountTable& counts) {
  if (option.parts.size() == 1) {
    return static_cast<double>(counts.count(option.parts[0].word));
  }
  // Accumulate in long double so equal products compare exactly equal and
  // realistic count magnitudes cannot overflow.
  long double product = 1.0L;
  for (const SplitPart& part : option.parts) {
    std::uint64_t count = counts.count(part.word);
    if (count == 0) return 0.0;
    product *= static_cast<long double>(count);
  }
  long double n = static_cast<long double>(option.parts.size());
  return static_cast<double>(std::pow(product, 1.0L / n));
}

SplitOption split_frequency(std::string_view word, const KnownWordIndex& index,
                            const WordCountTable& counts, const SplitConfig& config) {
  std::vector<SplitOption> options = enumerate_splits(word, index, config);
  std::size_t best = 0;
  double best_score = score_frequency(options[0], counts);
  for (std::size_t i = 1; i < options.size(); ++i) {
    double score = score_frequency(options[i], counts);
    if (score > best_score ||
        (score == best_score && options[i].part_count() < options[best].part_count())) {
      best = i;
      best_score = score;
    }
  }
  return options[best];
}

SplitOption split_eager(std::string_view word, const KnownWordIndex& index,
                        const WordCountTable& counts, const SplitConfig& config) {
  std::vector<SplitOption> options = enumerate_splits(word, index, config);
  // Options are sorted by decreasing part count, so the biggest splits
  // form the leading run.
  std::size_t best = 0;
  double best_score = score_frequency(options[0], counts);
  for (std::size_t i = 1;
       i < options.size() && options[i].part_count() == options[0].part_count(); ++i) {
    double score = score_frequency(options[i], counts);
    if (score > best_score) {
      best = i;
      best_score = score;
    }
  }
  return options[best];
}

SplitOption split_raw(std::string_view word) {
  std::string canonical = lowercase_utf8(word);
  if (canonical.empty()) throw std::invalid_argument("cannot split an empty word");
  return make_unsplit(std::move(canonical), false);
}

SplitOption parse_option(std::string_view surface, std::string_view rendered) {
  std::string canonical = lowercase_utf8(surface);
  SplitOption option;
  option.surface = canonical;

  std::size_t i = 0;
  while (i < rendered.size()) {
    while (i < rendered.size() && rendered[i] == ' ') ++i;
    std::size_t start = i;
    while (i < rendered.size() && rendered[i] != ' ') ++i;
    if (i == start) break;
    std::string_view item = rendered.substr(start, i - start);

    SplitPart part;
    std::size_t open = item.find("(+");
    if (open != std::string_view::npos) {
      if (item.back() != ')' || open == 0) {
        throw std::runtime_error("malformed part '" + std::string(item) + "'");
      }
      part.word = lowercase_utf8(item.substr(0, open));
      part.filler = lowercase_utf8(item.substr(open + 2, item.size() - open - 3));
      if (part.filler.empty()) {
        throw std::runtime_error("malformed part '" + std::string(item) + "'");
      }
    } else {
      part.word = lowercase_utf8(item);
    }
    option.parts.push_back(std::move(part));
  }

  if (option.parts.empty()) {
    throw std::runtime_error("empty split for '" + canonical + "'");
  }
  if (!option.parts.back().filler.empty()) {
    throw std::runtime_error("the last part of '" + canonical +
                             "' must not carry a filler");
  }
  std::string joined;
  for (const SplitPart& part : option.parts) {
    joined += part.word;
    joined += part.filler;
  }
  if (joined != canonical) {
    throw std::runtime_error("parts '" + std::string(rendered) +
                             "' do not reconstruct '" + canonical + "'");
  }
  return option;
}

}  // namespace compsplit
