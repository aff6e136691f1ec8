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

#include <doctest.h>

#include <map>

#include "checks.hpp"
#include "temp_dir.hpp"

using namespace compsplit;

namespace {

WordCountTable make_counts(
    std::initializer_list<std::pair<const char*, std::uint64_t>> entries) {
  WordCountTable counts;
  for (const auto& [word, count] : entries) counts.add(word, count);
  return counts;
}

WordCountTable aktionsplan_counts() {
  return make_counts({{"aktionsplan", 852},
                      {"aktion", 960},
                      {"aktions", 5},
                      {"akt", 224},
                      {"ion", 1},
                      {"plan", 710}});
}

}  // namespace

TEST_CASE("match_option finds evidence for both parts of aktion(+s) plan") {
  TranslationLexicon lexicon;
  lexicon.set("aktion", "action", 0.8);
  lexicon.set("plan", "plan", 0.9);
  SplitOption option = parse_option("aktionsplan", "aktion(+s) plan");

  EvidenceMatch match = match_option(
      option, {"the", "action", "plan", "is", "good"}, lexicon);
  CHECK(match.covered_parts == 2);
  CHECK(match.consumed_english == std::vector<std::size_t>{1, 2});
}

TEST_CASE("match_option finds nothing for frei tag without free/day evidence") {
  TranslationLexicon lexicon;
  lexicon.set("frei", "free", 0.7);
  lexicon.set("tag", "day", 0.7);
  SplitOption option = parse_option("freitag", "frei tag");

  EvidenceMatch match = match_option(option, {"we", "meet", "on", "friday"}, lexicon);
  CHECK(match.covered_parts == 0);
  CHECK(match.consumed_english.empty());
}

TEST_CASE("match_option with an empty English side covers nothing") {
  TranslationLexicon lexicon;
  lexicon.set("plan", "plan", 0.9);
  SplitOption option = parse_option("aktionsplan", "aktion(+s) plan");
  EvidenceMatch match = match_option(option, {}, lexicon);
  CHECK(match.covered_parts == 0);
  CHECK(match.consumed_english.empty());
}

TEST_CASE("each English token is consumed at most once") {
  TranslationLexicon lexicon;
  lexicon.set("plan", "plan", 0.9);
  SplitOption option = parse_option("planplan", "plan plan");

  EvidenceMatch once = match_option(option, {"plan"}, lexicon);
  CHECK(once.covered_parts == 1);
  CHECK(once.consumed_english == std::vector<std::size_t>{0});

  EvidenceMatch twice = match_option(option, {"plan", "x", "plan"}, lexicon);
  CHECK(twice.covered_parts == 2);
  CHECK(twice.consumed_english == std::vector<std::size_t>{0, 2});
}

TEST_CASE("parts scan English left to right and take the first match") {
  TranslationLexicon lexicon;
  lexicon.set("aktion", "the", 0.05);
  lexicon.set("aktion", "action", 0.9);
  lexicon.set("plan", "plan", 0.9);
  SplitOption option = parse_option("aktionsplan", "aktion(+s) plan");

  // "the" precedes "action", so the first part consumes "the"
  EvidenceMatch match = match_option(option, {"the", "action", "plan"}, lexicon);
  CHECK(match.covered_parts == 2);
  CHECK(match.consumed_english == std::vector<std::size_t>{0, 2});
}

TEST_CASE("raising the threshold never increases coverage") {
  TranslationLexicon lexicon;
  lexicon.set("aktion", "action", 0.05);
  lexicon.set("plan", "plan", 0.5);
  SplitOption option = parse_option("aktionsplan", "aktion(+s) plan");
  std::vector<std::string> english = {"action", "plan"};

  std::size_t last = 2;
  for (double threshold : {0.01, 0.1, 0.4, 0.9}) {
    EvidenceMatch match = match_option(option, english, lexicon, threshold);
    CHECK(match.covered_parts <= last);
    last = match.covered_parts;
  }
  CHECK(match_option(option, english, lexicon, 0.01).covered_parts == 2);
  CHECK(match_option(option, english, lexicon, 0.1).covered_parts == 1);
  CHECK(match_option(option, english, lexicon, 0.9).covered_parts == 0);
}

TEST_CASE("choose_split_in_context splits aktionsplan given English evidence") {
  WordCountTable counts = aktionsplan_counts();
  KnownWordIndex index = build_index(counts, 3);
  TranslationLexicon lexicon;
  lexicon.set("aktion", "action", 0.5);
  lexicon.set("aktions", "action", 0.5);
  lexicon.set("plan", "plan", 0.5);

  SplitOption chosen = choose_split_in_context(
      "aktionsplan", {"the", "action", "plan", "is", "good"}, index, counts, lexicon);
  // both two-part options cover 2; the frequency score prefers aktion(+s)
  CHECK(chosen.rendered() == "aktion(+s) plan");
}

TEST_CASE("choose_split_in_context keeps freitag whole without evidence") {
  // frequency alone would split (1284.4 vs 556); missing English evidence
  // overrides it
  WordCountTable counts =
      make_counts({{"frei", 885}, {"tag", 1864}, {"freitag", 556}});
  KnownWordIndex index = build_index(counts, 3);
  TranslationLexicon lexicon;
  lexicon.set("frei", "free", 0.7);
  lexicon.set("tag", "day", 0.7);
  CHECK(split_frequency("freitag", index, counts).rendered() == "frei tag");

  SplitOption chosen = choose_split_in_context(
      "freitag", {"we", "meet", "on", "friday"}, index, counts, lexicon);
  CHECK(chosen.rendered() == "freitag");
}

TEST_CASE("a word with only the unsplit option keeps it regardless of evidence") {
  WordCountTable counts = make_counts({{"plan", 710}});
  KnownWordIndex index = build_index(counts, 3);
  TranslationLexicon lexicon;
  lexicon.set("plan", "plan", 0.9);
  SplitOption chosen =
      choose_split_in_context("plan", {"plan"}, index, counts, lexicon);
  CHECK(chosen.rendered() == "plan");
}

TEST_CASE("within the top coverage tier, more splits win") {
  // [aaabbb ccc] is fully covered (2 parts), [aaa bbb ccc] covers 2 of 3;
  // same coverage count, so the bigger split is selected
  WordCountTable counts = make_counts(
      {{"aaa", 10}, {"bbb", 10}, {"ccc", 10}, {"aaabbb", 10}, {"aaabbbccc", 10}});
  KnownWordIndex index = build_index(counts, 3);
  TranslationLexicon lexicon;
  lexicon.set("aaa", "e1", 0.5);
  lexicon.set("aaabbb", "e1", 0.5);
  lexicon.set("bbb", "e2", 0.5);
  lexicon.set("ccc", "e2", 0.5);

  SplitOption chosen =
      choose_split_in_context("aaabbbccc", {"e1", "e2"}, index, counts, lexicon);
  CHECK(chosen.rendered() == "aaa bbb ccc");
}

TEST_CASE("higher coverage beats more parts") {
  WordCountTable counts = make_counts(
      {{"aaa", 10}, {"bbb", 10}, {"ccc", 10}, {"aaabbb", 10}, {"aaabbbccc", 10}});
  KnownWordIndex index = build_index(counts, 3);
  TranslationLexicon lexicon;
  lexicon.set("aaabbb", "e1", 0.5);
  lexicon.set("ccc", "e2", 0.5);

  // [aaabbb ccc] covers 2/2; [aaa bbb ccc] covers only ccc
  SplitOption chosen =
      choose_split_in_context("aaabbbccc", {"e1", "e2"}, index, counts, lexicon);
  CHECK(chosen.rendered() == "aaabbb ccc");
}

TEST_CASE("learn_knowledge tallies one decision per German token") {
  WordCountTable counts = aktionsplan_counts();
  KnownWordIndex index = build_index(counts, 3);
  TranslationLexicon lexicon;
  lexicon.set("aktion", "action", 0.5);
  lexicon.set("plan", "plan", 0.5);

  ParallelCorpus corpus;
  corpus.pairs.push_back({{"der", "aktionsplan"}, {"the", "action", "plan"}});
  corpus.pairs.push_back({{"aktionsplan", "aktionsplan"}, {"action", "plan"}});

  SplittingKnowledge knowledge = learn_knowledge(corpus, index, counts, lexicon);

  const auto* aktionsplan = knowledge.options_for("aktionsplan");
  REQUIRE(aktionsplan != nullptr);
  // 3 tokens in total; evidence is present in both sentences
  REQUIRE(aktionsplan->count("aktion(+s) plan") == 1);
  CHECK(aktionsplan->at("aktion(+s) plan").count == 3);

  const auto* der = knowledge.options_for("der");
  REQUIRE(der != nullptr);
  CHECK(der->at("der").count == 1);
}

TEST_CASE("learn_knowledge totals match the German token counts") {
  WordCountTable counts = aktionsplan_counts();
  KnownWordIndex index = build_index(counts, 3);
  TranslationLexicon lexicon;
  lexicon.set("aktion", "action", 0.5);
  lexicon.set("plan", "plan", 0.5);

  ParallelCorpus corpus;
  corpus.pairs.push_back({{"der", "aktionsplan", "plan"}, {"action", "plan"}});
  corpus.pairs.push_back({{"plan", "plan"}, {"plan"}});
  corpus.pairs.push_back({{"freitag"}, {"friday"}});

  SplittingKnowledge knowledge = learn_knowledge(corpus, index, counts, lexicon);

  std::map<std::string, std::uint64_t> token_counts;
  for (const auto& pair : corpus.pairs) {
    for (const auto& word : pair.german) ++token_counts[word];
  }
  CHECK(knowledge.word_count() == token_counts.size());
  for (const auto& [word, expected] : token_counts) {
    const auto* tallies = knowledge.options_for(word);
    REQUIRE(tallies != nullptr);
    std::uint64_t total = 0;
    for (const auto& [rendered, tally] : *tallies) total += tally.count;
    CHECK(total == expected);
  }
}

TEST_CASE("learn_knowledge on an empty corpus yields empty knowledge") {
  WordCountTable counts = aktionsplan_counts();
  KnownWordIndex index = build_index(counts, 3);
  SplittingKnowledge knowledge =
      learn_knowledge(ParallelCorpus{}, index, counts, TranslationLexicon{});
  CHECK(knowledge.word_count() == 0);
}

TEST_CASE("bootstrap learns compound-internal translations like grund -> basic") {
  ParallelCorpus corpus;
  for (int i = 0; i < 3; ++i) {
    corpus.pairs.push_back({{"die", "grundrechte"}, {"the", "basic", "rights"}});
  }
  for (int i = 0; i < 5; ++i) {
    corpus.pairs.push_back({{"der", "grund"}, {"the", "reason"}});
    corpus.pairs.push_back({{"die", "rechte"}, {"the", "rights"}});
  }
  WordCountTable counts;
  for (const auto& pair : corpus.pairs) {
    for (const auto& word : pair.german) counts.add(word);
  }
  KnownWordIndex index = build_index(counts, 3);
  REQUIRE(split_frequency("grundrechte", index, counts).rendered() == "grund rechte");

  TranslationLexicon plain = train_lexicon(corpus, 5);
  CHECK(plain.prob("grund", "basic") == 0.0);  // grund never co-occurs with basic

  TranslationLexicon merged = bootstrap_second_lexicon(corpus, index, counts);
  CHECK(merged.prob("grund", "basic") > 0.0);
  CHECK(merged.prob("grund", "reason") > 0.0);  // first lexicon is preserved
}

TEST_CASE("bootstrap on an unsplittable corpus equals the plain lexicon") {
  ParallelCorpus corpus;
  corpus.pairs.push_back({{"der", "plan"}, {"the", "plan"}});
  corpus.pairs.push_back({{"der", "tag"}, {"the", "day"}});
  WordCountTable counts;
  for (const auto& pair : corpus.pairs) {
    for (const auto& word : pair.german) counts.add(word);
  }
  KnownWordIndex index = build_index(counts, 3);

  TranslationLexicon plain = train_lexicon(corpus, 5);
  TranslationLexicon merged = bootstrap_second_lexicon(corpus, index, counts);
  CHECK(merged == plain);
}

TEST_CASE("bootstrap on a single split pair matches the hand-run E-step") {
  // aktionsplan -> aktion plan under these counts, so the second lexicon
  // trains on (aktion plan | action plan): one iteration gives 0.5 everywhere
  ParallelCorpus corpus;
  corpus.pairs.push_back({{"aktionsplan"}, {"action", "plan"}});
  WordCountTable counts =
      make_counts({{"aktion", 960}, {"plan", 710}, {"aktionsplan", 500}});
  KnownWordIndex index = build_index(counts, 3);

  TranslationLexicon merged =
      bootstrap_second_lexicon(corpus, index, counts, SplitConfig{}, 1);
  CHECK(testing::near(merged.prob("aktion", "action"), 0.5, 1e-9));
  CHECK(testing::near(merged.prob("aktion", "plan"), 0.5, 1e-9));
  CHECK(testing::near(merged.prob("plan", "action"), 0.5, 1e-9));
  CHECK(testing::near(merged.prob("plan", "plan"), 0.5, 1e-9));
  // entries of the unsplit first lexicon survive the merge
  CHECK(testing::near(merged.prob("aktionsplan", "action"), 0.5, 1e-9));
  CHECK(testing::near(merged.prob("aktionsplan", "plan"), 0.5, 1e-9));
}

TEST_CASE("apply_knowledge follows the majority option") {
  WordCountTable counts = make_counts({{"grund", 100}, {"rechte", 100},
                                       {"grundrechte", 400}});
  KnownWordIndex index = build_index(counts, 3);

  SplittingKnowledge knowledge;
  knowledge.record(parse_option("grundrechte", "grund rechte"), 213);
  knowledge.record(parse_option("grundrechte", "grundrechte"), 17);

  SplitOption chosen = apply_knowledge("grundrechte", knowledge, index, counts);
  CHECK(chosen.rendered() == "grund rechte");
  // and not what the frequency back-off would do (sqrt(10000)=100 < 400)
  CHECK(split_frequency("grundrechte", index, counts).rendered() == "grundrechte");
}

TEST_CASE("apply_knowledge backs off to the frequency method for unseen words") {
  WordCountTable counts =
      make_counts({{"frei", 885}, {"tag", 1864}, {"freitag", 556}});
  KnownWordIndex index = build_index(counts, 3);
  SplittingKnowledge knowledge;
  knowledge.record(parse_option("grundrechte", "grund rechte"), 3);

  SplitOption applied = apply_knowledge("freitag", knowledge, index, counts);
  SplitOption backoff = split_frequency("freitag", index, counts);
  CHECK(applied == backoff);
  CHECK(applied.rendered() == "frei tag");
}

TEST_CASE("apply_knowledge breaks count ties toward more parts") {
  WordCountTable counts = aktionsplan_counts();
  KnownWordIndex index = build_index(counts, 3);
  SplittingKnowledge knowledge;
  knowledge.record(parse_option("aktionsplan", "aktionsplan"), 5);
  knowledge.record(parse_option("aktionsplan", "aktion(+s) plan"), 5);

  SplitOption chosen = apply_knowledge("aktionsplan", knowledge, index, counts);
  CHECK(chosen.rendered() == "aktion(+s) plan");
}

TEST_CASE("knowledge round-trips bit-exactly through its TSV file") {
  testing::TempDir dir;
  SplittingKnowledge knowledge;
  knowledge.record(parse_option("grundrechte", "grund rechte"), 213);
  knowledge.record(parse_option("grundrechte", "grundrechte"), 17);
  knowledge.record(parse_option("aktionsplan", "aktion(+s) plan"), 7);

  auto first_path = dir.path() / "knowledge.tsv";
  save_knowledge(knowledge, first_path);
  SplittingKnowledge loaded = load_knowledge(first_path);

  auto second_path = dir.path() / "again.tsv";
  save_knowledge(loaded, second_path);
  CHECK(testing::TempDir::read(first_path) == testing::TempDir::read(second_path));
  CHECK(testing::TempDir::read(first_path) ==
        "aktionsplan\taktion(+s) plan\t7\n"
        "grundrechte\tgrund rechte\t213\n"
        "grundrechte\tgrundrechte\t17\n");

  const auto* tallies = loaded.options_for("grundrechte");
  REQUIRE(tallies != nullptr);
  CHECK(tallies->at("grund rechte").count == 213);
  CHECK(tallies->at("grundrechte").count == 17);
}

TEST_CASE("load_knowledge validates coverage and counts") {
  testing::TempDir dir;

  SUBCASE("parts do not reconstruct the word") {
    auto path = dir.write("bad.tsv", "grundrechte\tgrund recht\t3\n");
    CHECK_THROWS_WITH_AS(load_knowledge(path), doctest::Contains(":1:"),
                         std::runtime_error);
  }
  SUBCASE("zero count") {
    auto path = dir.write("bad.tsv", "grundrechte\tgrund rechte\t0\n");
    CHECK_THROWS_AS(load_knowledge(path), std::runtime_error);
  }
  SUBCASE("wrong column count") {
    auto path = dir.write("bad.tsv", "grundrechte\tgrund rechte\n");
    CHECK_THROWS_AS(load_knowledge(path), std::runtime_error);
  }
}
