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

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace compsplit {

struct SentencePair {
  std::vector<std::string> german;
  std::vector<std::string> english;
};

/// Sentence-aligned bilingual text, tokenized and canonicalized. Pairs with
/// an empty side are dropped on load.
struct ParallelCorpus {
  std::vector<SentencePair> pairs;

  bool empty() const { return pairs.empty(); }
  std::size_t size() const { return pairs.size(); }
};

// One TSV file `german<TAB>english`, or two line-aligned files.
ParallelCorpus load_parallel_tsv(const std::filesystem::path& path);
ParallelCorpus load_parallel_files(const std::filesystem::path& german_path,
                                   const std::filesystem::path& english_path);

/// Conditional probabilities p(english | german). All stored probabilities
/// are in (0, 1]; absent pairs read as 0.
class TranslationLexicon {
 public:
  using TargetProbs = std::map<std::string, double>;

  double prob(const std::string& german, const std::string& english) const;
  const TargetProbs* row(const std::string& german) const;

  // Throws std::invalid_argument unless p is in (0, 1].
  void set(std::string german, std::string english, double p);

  bool empty() const { return rows_.empty(); }
  std::size_t entry_count() const;
  const std::map<std::string, TargetProbs>& rows() const { return rows_; }

  friend bool operator==(const TranslationLexicon&, const TranslationLexicon&) = default;

 private:
  std::map<std::string, TargetProbs> rows_;
};

struct TrainOptions {
  int iterations = 5;
  // Entries below this are dropped after the final iteration. Two orders of
  // magnitude under the 0.01 evidence threshold, so pruning cannot change
  // splitting decisions.
  double prune_floor = 1e-4;
};

struct TrainResult {
  TranslationLexicon lexicon;
  // Corpus log-likelihood at the start of each iteration; non-decreasing.
  std::vector<double> iteration_log_likelihood;
};

/// Expectation-maximization estimate of p(e|g) in the style of a
/// single-fertility alignment model: each English token's mass is
/// distributed over the German tokens of its sentence proportional to the
/// current probabilities, then rows are renormalized per German word.
/// Initialization is uniform over co-occurring pairs. Throws
/// std::invalid_argument on an empty corpus or iterations < 1.
TrainResult train_lexicon_detailed(const ParallelCorpus& corpus,
                                   const TrainOptions& options = {});
TranslationLexicon train_lexicon(const ParallelCorpus& corpus, int iterations = 5);

/// Sum over English tokens of log( mean_g p(e|g) ), the quantity the EM
/// trainer maximizes.
double log_likelihood(const ParallelCorpus& corpus, const TranslationLexicon& lexicon);

/// Union of entries; where both lexicons define p(e|g), the maximum wins.
TranslationLexicon merge_lexicons(const TranslationLexicon& a,
                                  const TranslationLexicon& b);

// TSV `german<TAB>english<TAB>probability`, sorted by german, then
// descending probability, then english. Round-trips within 1e-9.
void save_lexicon(const TranslationLexicon& lexicon, const std::filesystem::path& path);
TranslationLexicon load_lexicon(const std::filesystem::path& path);

}  // namespace compsplit
