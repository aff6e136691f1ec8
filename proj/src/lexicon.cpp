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

#include "compsplit/lexicon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "compsplit/corpus.hpp"
#include "tsv.hpp"

namespace compsplit {

namespace {

ParallelCorpus finish_corpus(std::vector<SentencePair> pairs) {
  ParallelCorpus corpus;
  for (SentencePair& pair : pairs) {
    // A pair with an empty side carries no alignment information.
    if (pair.german.empty() || pair.english.empty()) continue;
    corpus.pairs.push_back(std::move(pair));
  }
  return corpus;
}

std::string format_probability(double p) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.12g", p);
  return buffer;
}

}  // namespace

ParallelCorpus load_parallel_tsv(const std::filesystem::path& path) {
  std::ifstream in = detail::open_input(path);
  std::vector<SentencePair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (detail::next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = detail::split_tabs(line);
    if (fields.size() != 2) {
      detail::parse_fail(path, line_no,
                         "expected `german<TAB>english`, got " +
                             std::to_string(fields.size()) + " columns");
    }
    pairs.push_back({tokenize(fields[0]), tokenize(fields[1])});
  }
  return finish_corpus(std::move(pairs));
}

ParallelCorpus load_parallel_files(const std::filesystem::path& german_path,
                                   const std::filesystem::path& english_path) {
  std::ifstream german_in = detail::open_input(german_path);
  std::ifstream english_in = detail::open_input(english_path);
  std::vector<SentencePair> pairs;
  std::string german_line;
  std::string english_line;
  while (true) {
    bool has_german = detail::next_line(german_in, german_line);
    bool has_english = detail::next_line(english_in, english_line);
    if (has_german != has_english) {
      throw std::runtime_error(german_path.string() + " and " + english_path.string() +
                               " have different line counts");
    }
    if (!has_german) break;
    pairs.push_back({tokenize(german_line), tokenize(english_line)});
  }
  return finish_corpus(std::move(pairs));
}

double TranslationLexicon::prob(const std::string& german, const std::string& english) const {
  auto row_it = rows_.find(german);
  if (row_it == rows_.end()) return 0.0;
  auto it = row_it->second.find(english);
  return it == row_it->second.end() ? 0.0 : it->second;
}

const TranslationLexicon::TargetProbs* TranslationLexicon::row(
    const std::string& german) const {
  auto it = rows_.find(german);
  return it == rows_.end() ? nullptr : &it->second;
}

void TranslationLexicon::set(std::string german, std::string english, double p) {
  if (!(p > 0.0) || p > 1.0) {
    throw std::invalid_argument("translation probability must be in (0, 1], got " +
                                std::to_string(p));
  }
  rows_[std::move(german)][std::move(english)] = p;
}

std::size_t TranslationLexicon::entry_count() const {
  std::size_t n = 0;
  for (const auto& [german, targets] : rows_) n += targets.size();
  return n;
}

TrainResult train_lexicon_detailed(const ParallelCorpus& corpus,
                                   const TrainOptions& options) {
  if (corpus.empty()) {
    throw std::invalid_argument("cannot train a lexicon on an empty parallel corpus");
  }
  if (options.iterations < 1) {
    throw std::invalid_argument("lexicon training needs at least one iteration");
  }

  // t[g][e], initialized uniform over the English words co-occurring with g.
  std::map<std::string, std::map<std::string, double>> t;
  for (const SentencePair& pair : corpus.pairs) {
    for (const std::string& g : pair.german) {
      auto& row = t[g];
      for (const std::string& e : pair.english) row[e] = 0.0;
    }
  }
  for (auto& [g, row] : t) {
    double uniform = 1.0 / static_cast<double>(row.size());
    for (auto& [e, p] : row) p = uniform;
  }

  TrainResult result;
  for (int iteration = 0; iteration < options.iterations; ++iteration) {
    std::map<std::string, std::map<std::string, double>> expected;
    double log_lik = 0.0;
    for (const SentencePair& pair : corpus.pairs) {
      for (const std::string& e : pair.english) {
        double denom = 0.0;
        for (const std::string& g : pair.german) denom += t[g][e];
        log_lik += std::log(denom) - std::log(static_cast<double>(pair.german.size()));
        for (const std::string& g : pair.german) {
          expected[g][e] += t[g][e] / denom;
        }
      }
    }
    result.iteration_log_likelihood.push_back(log_lik);

    for (auto& [g, row] : expected) {
      double total = 0.0;
      for (const auto& [e, c] : row) total += c;
      auto& target = t[g];
      for (const auto& [e, c] : row) target[e] = c / total;
    }
  }

  for (const auto& [g, row] : t) {
    for (const auto& [e, p] : row) {
      if (p >= options.prune_floor) {
        result.lexicon.set(g, e, std::min(p, 1.0));
      }
    }
  }
  return result;
}

TranslationLexicon train_lexicon(const ParallelCorpus& corpus, int iterations) {
  TrainOptions options;
  options.iterations = iterations;
  return train_lexicon_detailed(corpus, options).lexicon;
}

double log_likelihood(const ParallelCorpus& corpus, const TranslationLexicon& lexicon) {
  double log_lik = 0.0;
  for (const SentencePair& pair : corpus.pairs) {
    for (const std::string& e : pair.english) {
      double denom = 0.0;
      for (const std::string& g : pair.german) denom += lexicon.prob(g, e);
      log_lik += std::log(denom) - std::log(static_cast<double>(pair.german.size()));
    }
  }
  return log_lik;
}

TranslationLexicon merge_lexicons(const TranslationLexicon& a,
                                  const TranslationLexicon& b) {
  TranslationLexicon merged = a;
  for (const auto& [german, targets] : b.rows()) {
    for (const auto& [english, p] : targets) {
      if (p > merged.prob(german, english)) {
        merged.set(german, english, p);
      }
    }
  }
  return merged;
}

void save_lexicon(const TranslationLexicon& lexicon, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (const auto& [german, targets] : lexicon.rows()) {
    std::vector<std::pair<std::string_view, double>> sorted;
    sorted.reserve(targets.size());
    for (const auto& [english, p] : targets) sorted.emplace_back(english, p);
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    for (const auto& [english, p] : sorted) {
      out << german << '\t' << english << '\t' << format_probability(p) << '\n';
    }
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

TranslationLexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in = detail::open_input(path);
  TranslationLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (detail::next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = detail::split_tabs(line);
    if (fields.size() != 3) {
      detail::parse_fail(path, line_no,
                         "expected `german<TAB>english<TAB>probability`, got " +
                             std::to_string(fields.size()) + " columns");
    }
    if (fields[0].empty() || fields[1].empty()) {
      detail::parse_fail(path, line_no, "empty word");
    }
    double p = 0.0;
    auto [ptr, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), p);
    if (ec != std::errc() || ptr != fields[2].data() + fields[2].size()) {
      detail::parse_fail(path, line_no,
                         "expected a probability, got '" + std::string(fields[2]) + "'");
    }
    if (!(p > 0.0) || p > 1.0 + 1e-9) {
      detail::parse_fail(path, line_no,
                         "probability outside (0, 1]: " + std::string(fields[2]));
    }
    lexicon.set(lowercase_utf8(fields[0]), lowercase_utf8(fields[1]), std::min(p, 1.0));
  }
  return lexicon;
}

}  // namespace compsplit
