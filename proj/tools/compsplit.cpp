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

// Command-line front end: counts words, builds part vocabularies, splits
// compounds with the raw/eager/frequency/parallel methods, trains and
// bootstraps translation lexicons, harvests splitting knowledge from a
// parallel corpus, and scores predictions against a gold standard.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "compsplit/corpus.hpp"
#include "compsplit/eval.hpp"
#include "compsplit/lexicon.hpp"
#include "compsplit/parallel_guided.hpp"
#include "compsplit/pos_filter.hpp"
#include "compsplit/splitter.hpp"

namespace fs = std::filesystem;
using namespace compsplit;

namespace {

// "-" writes to stdout; files go through a temp name so a failed run never
// leaves a partial output behind.
void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  fs::path tmp = fs::path(path).concat(".tmp");
  std::ofstream out(tmp, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
  out << content;
  out.close();
  if (!out) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw std::runtime_error("failed writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

// For the writers that serialize straight to disk.
template <typename Saver>
void save_atomic(const std::string& path, Saver&& saver) {
  fs::path tmp = fs::path(path).concat(".tmp");
  try {
    saver(tmp);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
  fs::rename(tmp, path);
}

std::vector<std::string> parse_fillers(const std::string& spec) {
  std::vector<std::string> fillers;
  std::stringstream stream(spec);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) fillers.push_back(item);
  }
  return fillers;
}

bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

struct SplitFlags {
  std::string fillers = "s,es";
  int min_part_len = 3;
  double threshold = kDefaultEvidenceThreshold;
  int em_iters = 5;

  SplitConfig config() const {
    SplitConfig config;
    config.fillers = parse_fillers(fillers);
    config.min_part_length = min_part_len;
    return config;
  }
};

void add_split_flags(CLI::App* cmd, SplitFlags& flags) {
  cmd->add_option("--fillers", flags.fillers,
                  "comma-separated filler letters allowed at joints")
      ->capture_default_str();
  cmd->add_option("--min-part-len", flags.min_part_len,
                  "minimum length of a compound part")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

struct CorpusFlags {
  std::string tsv;
  std::string german;
  std::string english;

  bool given() const { return !tsv.empty() || !german.empty() || !english.empty(); }

  ParallelCorpus load() const {
    if (!tsv.empty()) return load_parallel_tsv(tsv);
    if (german.empty() || english.empty()) {
      throw std::runtime_error(
          "a parallel corpus needs --parallel-tsv or both --parallel-de and "
          "--parallel-en");
    }
    return load_parallel_files(german, english);
  }
};

void add_corpus_flags(CLI::App* cmd, CorpusFlags& flags) {
  cmd->add_option("--parallel-tsv", flags.tsv,
                  "parallel corpus as one TSV file, german<TAB>english");
  cmd->add_option("--parallel-de", flags.german, "German side, one sentence per line");
  cmd->add_option("--parallel-en", flags.english,
                  "English side, line-aligned with --parallel-de");
}

struct PosFlags {
  std::string table;
  std::string whitelist = "default";

  bool given() const { return !table.empty(); }

  std::set<std::string> allowed_words() const {
    PosTable pos = load_pos_table(table);
    PosWhitelist tags = whitelist == "default" ? PosWhitelist::default_stts()
                                               : load_pos_whitelist(whitelist);
    return content_words(pos, tags);
  }
};

void add_pos_flags(CLI::App* cmd, PosFlags& flags) {
  cmd->add_option("--pos-table", flags.table,
                  "per-word POS counts (word<TAB>tag<TAB>count or token<TAB>tag)");
  cmd->add_option("--pos-whitelist", flags.whitelist,
                  "content-word tag file, or 'default' for the STTS set")
      ->capture_default_str();
}

// ---------------------------------------------------------------------------

struct CountArgs {
  std::string corpus;
  std::string out;
};

void run_count(const CountArgs& args) {
  WordCountTable counts = count_words_file(args.corpus);
  std::vector<std::pair<std::string, std::uint64_t>> sorted;
  sorted.reserve(counts.size());
  for (const auto& [word, count] : counts.entries()) sorted.emplace_back(word, count);
  std::sort(sorted.begin(), sorted.end());

  std::ostringstream buffer;
  for (const auto& [word, count] : sorted) buffer << word << '\t' << count << '\n';
  write_output(args.out, buffer.str());
}

struct IndexArgs {
  std::string counts;
  std::string out;
  SplitFlags split;
  PosFlags pos;
};

void run_index(const IndexArgs& args) {
  WordCountTable counts = load_counts(args.counts);
  KnownWordIndex index = build_index(counts, args.split.min_part_len);
  if (args.pos.given()) {
    index = restrict_index(index, args.pos.allowed_words());
  }
  std::ostringstream buffer;
  for (const std::string& word : index.words()) buffer << word << '\n';
  write_output(args.out, buffer.str());
}

struct TrainArgs {
  CorpusFlags corpus;
  std::string out;
  int em_iters = 5;
};

void run_train_lexicon(const TrainArgs& args) {
  TranslationLexicon lexicon = train_lexicon(args.corpus.load(), args.em_iters);
  save_atomic(args.out, [&](const fs::path& tmp) { save_lexicon(lexicon, tmp); });
}

struct BootstrapArgs {
  CorpusFlags corpus;
  std::string counts;
  std::string out;
  SplitFlags split;
};

void run_bootstrap(const BootstrapArgs& args) {
  ParallelCorpus corpus = args.corpus.load();
  WordCountTable counts = load_counts(args.counts);
  KnownWordIndex index = build_index(counts, args.split.min_part_len);
  TranslationLexicon merged = bootstrap_second_lexicon(
      corpus, index, counts, args.split.config(), args.split.em_iters);
  save_atomic(args.out, [&](const fs::path& tmp) { save_lexicon(merged, tmp); });
}

struct LearnArgs {
  CorpusFlags corpus;
  std::string counts;
  std::string lexicon;
  std::string out;
  SplitFlags split;
  PosFlags pos;
};

void run_learn_splits(const LearnArgs& args) {
  ParallelCorpus corpus = args.corpus.load();
  WordCountTable counts = load_counts(args.counts);
  KnownWordIndex index = build_index(counts, args.split.min_part_len);
  if (args.pos.given()) {
    index = restrict_index(index, args.pos.allowed_words());
  }
  TranslationLexicon lexicon = load_lexicon(args.lexicon);
  SplittingKnowledge knowledge = learn_knowledge(
      corpus, index, counts, lexicon, args.split.config(), args.split.threshold);
  save_atomic(args.out, [&](const fs::path& tmp) { save_knowledge(knowledge, tmp); });
}

struct SplitArgs {
  std::string input;
  std::string out;
  std::string method = "frequency";
  std::string counts;
  std::string knowledge;
  std::string lexicon;
  CorpusFlags corpus;
  PosFlags pos;
  SplitFlags split;
  bool sentences = false;
};

void run_split(const SplitArgs& args) {
  const std::string& method = args.method;
  SplitConfig config = args.split.config();

  WordCountTable counts;
  KnownWordIndex index(args.split.min_part_len);
  if (method != "raw") {
    if (args.counts.empty()) {
      throw std::runtime_error("--method " + method + " requires --counts");
    }
    counts = load_counts(args.counts);
    index = build_index(counts, args.split.min_part_len);
  }
  if (method == "parallel-pos" && !args.pos.given()) {
    throw std::runtime_error("--method parallel-pos requires --pos-table");
  }
  if (args.pos.given()) {
    index = restrict_index(index, args.pos.allowed_words());
  }

  SplittingKnowledge knowledge;
  if (method == "parallel" || method == "parallel-pos") {
    if (!args.knowledge.empty()) {
      knowledge = load_knowledge(args.knowledge);
    } else if (args.corpus.given()) {
      ParallelCorpus corpus = args.corpus.load();
      TranslationLexicon lexicon =
          args.lexicon.empty()
              ? bootstrap_second_lexicon(corpus, index, counts, config,
                                         args.split.em_iters)
              : load_lexicon(args.lexicon);
      knowledge = learn_knowledge(corpus, index, counts, lexicon, config,
                                  args.split.threshold);
    } else {
      throw std::runtime_error("--method " + method +
                               " requires --knowledge or a parallel corpus");
    }
  }

  std::function<SplitOption(const std::string&)> decide;
  if (method == "raw") {
    decide = [](const std::string& word) { return split_raw(word); };
  } else if (method == "eager") {
    decide = [&](const std::string& word) {
      return split_eager(word, index, counts, config);
    };
  } else if (method == "frequency") {
    decide = [&](const std::string& word) {
      return split_frequency(word, index, counts, config);
    };
  } else {
    decide = [&](const std::string& word) {
      return apply_knowledge(word, knowledge, index, counts, config);
    };
  }

  std::ifstream in(args.input);
  if (!in) throw std::runtime_error("cannot open " + args.input + " for reading");

  std::ostringstream buffer;
  std::string line;
  std::size_t line_no = 0;
  while (read_line(in, line)) {
    ++line_no;
    if (args.sentences) {
      // running text: one decision per token, original casing in column 1
      std::size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i == start) continue;
        std::string display = strip_punctuation(line.substr(start, i - start));
        if (display.empty()) continue;
        buffer << display << '\t' << decide(display).rendered() << '\n';
      }
    } else {
      if (line.empty()) continue;
      if (line.find_first_of(" \t") != std::string::npos) {
        throw std::runtime_error(args.input + ":" + std::to_string(line_no) +
                                 ": expected one word per line (use --sentences for "
                                 "running text)");
      }
      buffer << line << '\t' << decide(line).rendered() << '\n';
    }
  }
  write_output(args.out, buffer.str());
}

struct EvaluateArgs {
  std::string predictions;
  std::string gold;
  std::string out = "-";
  std::string format = "table";
  bool lenient = false;
};

void run_evaluate(const EvaluateArgs& args) {
  std::map<std::string, SplitOption> predictions = load_predictions(args.predictions);
  GoldStandard gold = load_gold(args.gold);
  MatchMode mode = args.lenient ? MatchMode::Lenient : MatchMode::Strict;
  EvalReport report = evaluate(predictions, gold, mode);

  std::string content;
  if (args.format == "table") {
    content = format_report_table(report, fs::path(args.predictions).stem().string());
  } else if (args.format == "tsv") {
    content = format_report_tsv(report);
  } else {
    content = format_report_jsonl(report);
  }
  write_output(args.out, content);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compound splitting toolkit"};
  app.require_subcommand(1);

  CountArgs count_args;
  auto* count_cmd =
      app.add_subcommand("count", "count words in a monolingual corpus");
  count_cmd->add_option("--corpus", count_args.corpus, "plain text, one sentence per line")
      ->required();
  count_cmd->add_option("--out", count_args.out, "counts TSV ('-' for stdout)")
      ->required();
  count_cmd->callback([&]() { run_count(count_args); });

  IndexArgs index_args;
  auto* index_cmd = app.add_subcommand(
      "index", "list the known words usable as compound parts");
  index_cmd->add_option("--counts", index_args.counts, "counts TSV")->required();
  index_cmd->add_option("--out", index_args.out, "word list output ('-' for stdout)")
      ->required();
  add_split_flags(index_cmd, index_args.split);
  add_pos_flags(index_cmd, index_args.pos);
  index_cmd->callback([&]() { run_index(index_args); });

  SplitArgs split_args;
  auto* split_cmd = app.add_subcommand("split", "split words from a word list");
  split_cmd->add_option("--input", split_args.input, "one word per line")->required();
  split_cmd->add_option("--out", split_args.out, "split output ('-' for stdout)")
      ->required();
  split_cmd
      ->add_option("--method", split_args.method,
                   "raw, eager, frequency, parallel, or parallel-pos")
      ->capture_default_str()
      ->check(CLI::IsMember({"raw", "eager", "frequency", "parallel", "parallel-pos"}));
  split_cmd->add_option("--counts", split_args.counts, "counts TSV");
  split_cmd->add_option("--knowledge", split_args.knowledge,
                        "splitting-knowledge TSV from learn-splits");
  split_cmd->add_option("--lexicon", split_args.lexicon,
                        "translation lexicon TSV (skips in-process training)");
  split_cmd->add_flag("--sentences", split_args.sentences,
                      "treat input as running text, one sentence per line");
  split_cmd
      ->add_option("--threshold", split_args.split.threshold,
                   "evidence probability threshold")
      ->capture_default_str();
  split_cmd->add_option("--em-iters", split_args.split.em_iters, "EM iterations")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_corpus_flags(split_cmd, split_args.corpus);
  add_pos_flags(split_cmd, split_args.pos);
  add_split_flags(split_cmd, split_args.split);
  split_cmd->callback([&]() { run_split(split_args); });

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand(
      "train-lexicon", "train a translation lexicon from a parallel corpus");
  add_corpus_flags(train_cmd, train_args.corpus);
  train_cmd->add_option("--out", train_args.out, "lexicon TSV")->required();
  train_cmd->add_option("--em-iters", train_args.em_iters, "EM iterations")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  train_cmd->callback([&]() { run_train_lexicon(train_args); });

  BootstrapArgs bootstrap_args;
  auto* bootstrap_cmd = app.add_subcommand(
      "bootstrap",
      "train and merge the second lexicon over a frequency-split German side");
  add_corpus_flags(bootstrap_cmd, bootstrap_args.corpus);
  bootstrap_cmd->add_option("--counts", bootstrap_args.counts, "counts TSV")->required();
  bootstrap_cmd->add_option("--out", bootstrap_args.out, "merged lexicon TSV")
      ->required();
  bootstrap_cmd
      ->add_option("--em-iters", bootstrap_args.split.em_iters, "EM iterations")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_split_flags(bootstrap_cmd, bootstrap_args.split);
  bootstrap_cmd->callback([&]() { run_bootstrap(bootstrap_args); });

  LearnArgs learn_args;
  auto* learn_cmd = app.add_subcommand(
      "learn-splits", "harvest per-word splitting knowledge from a parallel corpus");
  add_corpus_flags(learn_cmd, learn_args.corpus);
  learn_cmd->add_option("--counts", learn_args.counts, "counts TSV")->required();
  learn_cmd->add_option("--lexicon", learn_args.lexicon, "translation lexicon TSV")
      ->required();
  learn_cmd->add_option("--out", learn_args.out, "knowledge TSV")->required();
  learn_cmd
      ->add_option("--threshold", learn_args.split.threshold,
                   "evidence probability threshold")
      ->capture_default_str();
  add_split_flags(learn_cmd, learn_args.split);
  add_pos_flags(learn_cmd, learn_args.pos);
  learn_cmd->callback([&]() { run_learn_splits(learn_args); });

  EvaluateArgs evaluate_args;
  auto* evaluate_cmd = app.add_subcommand(
      "evaluate", "score predicted splits against a gold standard");
  evaluate_cmd->add_option("--predictions", evaluate_args.predictions, "split output TSV")
      ->required();
  evaluate_cmd->add_option("--gold", evaluate_args.gold, "gold standard TSV")->required();
  evaluate_cmd->add_option("--out", evaluate_args.out, "report output ('-' for stdout)")
      ->capture_default_str();
  evaluate_cmd->add_option("--format", evaluate_args.format, "table, tsv, or jsonl")
      ->capture_default_str()
      ->check(CLI::IsMember({"table", "tsv", "jsonl"}));
  evaluate_cmd->add_flag("--lenient", evaluate_args.lenient,
                         "compare joint positions only, ignoring filler placement");
  evaluate_cmd->callback([&]() { run_evaluate(evaluate_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "compsplit: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
