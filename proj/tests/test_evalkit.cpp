#include <doctest.h>

#include <random>

#include "newslink/evalkit.hpp"

using namespace newslink;

namespace {

Preprocessor default_preproc() {
  return Preprocessor::from_files(NEWSLINK_DATA_DIR "/stopwords_english.txt",
                                  NEWSLINK_DATA_DIR "/abbreviations_english.txt");
}

// brute-force clipped n-gram overlap: enumerate peer grams by position and
// consume matching reference positions
RougeScore brute_force_rouge(const std::vector<std::string>& peer,
                             const std::vector<std::string>& ref, int n) {
  auto grams = [&](const std::vector<std::string>& tokens) {
    std::vector<std::string> out;
    for (size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string g;
      for (int j = 0; j < n; ++j) {
        if (j) g.push_back(' ');
        g += tokens[i + j];
      }
      out.push_back(g);
    }
    return out;
  };
  const auto pg = grams(peer);
  const auto rg = grams(ref);
  std::vector<bool> used(rg.size(), false);
  size_t matched = 0;
  for (const auto& g : pg) {
    for (size_t i = 0; i < rg.size(); ++i) {
      if (!used[i] && rg[i] == g) {
        used[i] = true;
        ++matched;
        break;
      }
    }
  }
  RougeScore s;
  s.n = n;
  s.precision = pg.empty() ? 0.0 : double(matched) / double(pg.size());
  s.recall = rg.empty() ? 0.0 : double(matched) / double(rg.size());
  s.f1 = (s.precision + s.recall) > 0
             ? 2 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

}  // namespace

TEST_CASE("rouge of a text against itself is perfect") {
  const std::vector<std::string> tokens = {"quake", "hit", "valley", "hard"};
  for (int n : {1, 2}) {
    const auto s = rouge_n(tokens, {tokens}, n);
    CHECK(s.precision == doctest::Approx(1.0));
    CHECK(s.recall == doctest::Approx(1.0));
    CHECK(s.f1 == doctest::Approx(1.0));
  }
}

TEST_CASE("hand-counted unigram overlap") {
  const auto preproc = default_preproc();
  RougeOptions options;
  const auto s =
      rouge_n_text("nepal quake kills", {"quake hits nepal"}, 1, preproc, options);
  CHECK(s.precision == doctest::Approx(2.0 / 3.0));
  CHECK(s.recall == doctest::Approx(2.0 / 3.0));
  CHECK(s.f1 == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("rouge preprocessing regimes are switchable") {
  const auto preproc = default_preproc();
  const std::string peer = "the rescuers are working";
  const std::string ref = "a rescuer worked";

  RougeOptions stems_only;  // default: stem on, stopwords kept
  const auto with_stops = rouge_n_text(peer, {ref}, 1, preproc, stems_only);
  // stems match on rescuer/work but the stopwords dilute precision
  CHECK(with_stops.recall == doctest::Approx(2.0 / 3.0));
  CHECK(with_stops.precision == doctest::Approx(2.0 / 4.0));

  RougeOptions no_stops = {true, true};
  const auto without_stops = rouge_n_text(peer, {ref}, 1, preproc, no_stops);
  CHECK(without_stops.precision == doctest::Approx(1.0));
  CHECK(without_stops.recall == doctest::Approx(1.0));

  RougeOptions raw = {false, false};
  const auto unstemmed = rouge_n_text(peer, {ref}, 1, preproc, raw);
  CHECK(unstemmed.recall == doctest::Approx(0.0));  // no exact token overlap
}

TEST_CASE("short sides zero the affected ratio") {
  const std::vector<std::string> one = {"quake"};
  const std::vector<std::string> two = {"quake", "hit"};
  const auto s = rouge_n(one, {two}, 2);  // peer has no bigrams
  CHECK(s.precision == 0.0);
  CHECK(s.recall == 0.0);
  CHECK(s.f1 == 0.0);

  const auto t = rouge_n(two, {one}, 2);  // reference has no bigrams
  CHECK(t.recall == 0.0);
}

TEST_CASE("matches the brute-force counter exactly on random pairs") {
  std::mt19937 gen(123);
  auto random_tokens = [&](size_t max_len) {
    std::vector<std::string> out;
    const size_t len = gen() % (max_len + 1);
    for (size_t i = 0; i < len; ++i) out.push_back("w" + std::to_string(gen() % 20));
    return out;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const auto peer = random_tokens(30);
    const auto ref = random_tokens(30);
    for (int n : {1, 2}) {
      const auto fast = rouge_n(peer, {ref}, n);
      const auto slow = brute_force_rouge(peer, ref, n);
      CHECK(fast.precision == slow.precision);
      CHECK(fast.recall == slow.recall);
      CHECK(fast.f1 == slow.f1);
    }
  }
}

TEST_CASE("multi-reference scoring keeps the max-f1 triple and the mean") {
  const std::vector<std::string> peer = {"quake", "relief", "arrived"};
  const std::vector<std::string> good = {"quake", "relief", "arrived"};
  const std::vector<std::string> bad = {"cricket", "scores"};
  const auto s = rouge_n(peer, {bad, good}, 1);
  CHECK(s.f1 == doctest::Approx(1.0));
  CHECK(s.mean_f1 == doctest::Approx(0.5));
  CHECK(s.mean_recall == doctest::Approx(0.5));
}

TEST_CASE("recall is monotone when the peer grows into the article") {
  const auto preproc = default_preproc();
  RougeOptions options;
  const std::string reference = "rescue teams pulled survivors from the rubble";
  const std::string summary = "rescue teams pulled survivors";
  const std::string article =
      "rescue teams pulled survivors from the rubble after the quake struck the valley";
  for (int n : {1, 2}) {
    const auto sub = rouge_n_text(summary, {reference}, n, preproc, options);
    const auto full = rouge_n_text(article, {reference}, n, preproc, options);
    CHECK(full.recall >= sub.recall);
  }
}

TEST_CASE("recall ceiling uses the article body as the peer") {
  const auto preproc = default_preproc();
  RougeOptions options;
  Article a;
  a.id = "a";
  a.body = "rescue teams pulled survivors from the rubble";
  const auto ceiling = recall_ceiling(a, {"rescue teams pulled survivors"}, 1,
                                      preproc, options);
  CHECK(ceiling.recall == doctest::Approx(1.0));  // reference vocab inside article
  CHECK(ceiling.precision < 1.0);
}

TEST_CASE("jaccard on sets") {
  const WordSet a = WordSet::from_tokens({"a", "b", "c"});
  const WordSet b = WordSet::from_tokens({"b", "c", "d"});
  CHECK(jaccard(a, b) == doctest::Approx(0.5));
  CHECK(jaccard(a, a) == doctest::Approx(1.0));
  CHECK(jaccard(a, b) == jaccard(b, a));
  const WordSet empty = WordSet::from_tokens({});
  CHECK(jaccard(empty, empty) == doctest::Approx(1.0));
  CHECK(jaccard(a, empty) == doctest::Approx(0.0));
  const WordSet disjoint = WordSet::from_tokens({"x", "y"});
  CHECK(jaccard(a, disjoint) == doctest::Approx(0.0));
}

TEST_CASE("uniq fractions and the complement identity") {
  const WordSet a = WordSet::from_tokens({"x", "y", "z", "w"});
  const WordSet b = WordSet::from_tokens({"z", "w"});
  const auto [ab, ba] = uniq(a, b);
  CHECK(ab == doctest::Approx(0.5));
  CHECK(ba == doctest::Approx(0.0));

  const auto [same_ab, same_ba] = uniq(a, a);
  CHECK(same_ab == 0.0);
  CHECK(same_ba == 0.0);

  const WordSet c = WordSet::from_tokens({"p", "q"});
  const auto [d_ab, d_ba] = uniq(a, c);
  CHECK(d_ab == doctest::Approx(1.0));
  CHECK(d_ba == doctest::Approx(1.0));

  // uniq(A|B) + |A∩B|/|A| = 1 for nonempty A, on random sets
  std::mt19937 gen(77);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> ta, tb;
    const size_t na = 1 + gen() % 12, nb = gen() % 12;
    for (size_t i = 0; i < na; ++i) ta.push_back("e" + std::to_string(gen() % 15));
    for (size_t i = 0; i < nb; ++i) tb.push_back("e" + std::to_string(gen() % 15));
    const WordSet wa = WordSet::from_tokens(ta);
    const WordSet wb = WordSet::from_tokens(tb);
    size_t inter = 0;
    for (const auto& e : wa.elements)
      if (wb.elements.count(e)) ++inter;
    const auto [u_ab, u_ba] = uniq(wa, wb);
    CHECK(u_ab + double(inter) / double(wa.elements.size()) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("content difference removes every occurrence of shared words") {
  const std::unordered_map<std::string, int> a = {{"x", 5}, {"y", 2}};
  const std::unordered_map<std::string, int> b = {{"x", 1}};
  const auto diff = content_difference(a, b);
  CHECK(diff.size() == 1);
  CHECK(diff.at("y") == 2);

  CHECK(content_difference(a, a).empty());
  const std::unordered_map<std::string, int> disjoint = {{"q", 3}};
  CHECK(content_difference(a, disjoint) == a);

  // shares no support with b
  for (const auto& [word, count] : content_difference(a, b)) CHECK(b.count(word) == 0);
}

TEST_CASE("annotator jaccard table averages shared documents") {
  const auto preproc = default_preproc();
  std::vector<SummaryAnnotation> annotations = {
      {"a1", "ann_a", "quake relief arrived", {}},
      {"a1", "ann_b", "quake relief arrived", {}},
      {"a2", "ann_a", "schools reopened today", {}},
      {"a2", "ann_b", "monsoon rain flooded camps", {}},
      {"a3", "ann_solo", "isolated annotator text", {}},
  };
  const auto rows = annotator_jaccard_table(annotations, preproc);
  REQUIRE(rows.size() == 2);

  const auto& pair_row = rows[0].annotator_b == "-" ? rows[1] : rows[0];
  const auto& solo_row = rows[0].annotator_b == "-" ? rows[0] : rows[1];
  REQUIRE(pair_row.mean_jaccard.has_value());
  CHECK(pair_row.shared_docs == 2);
  CHECK(*pair_row.mean_jaccard == doctest::Approx(0.5));  // (1 + 0) / 2
  CHECK(solo_row.annotator_a == "ann_solo");
  CHECK_FALSE(solo_row.mean_jaccard.has_value());

  SUBCASE("identical summaries score 1") {
    const auto only = annotator_jaccard_table(
        {{"d", "p", "quake relief", {}}, {"d", "q", "quake relief", {}}}, preproc);
    REQUIRE(only.size() == 1);
    CHECK(*only[0].mean_jaccard == doctest::Approx(1.0));
  }
}

TEST_CASE("timeliness bins by five days with strict positivity") {
  const auto report = timeliness_report({2.0, 7.0, -1.0});
  CHECK(report.counted == 3);
  CHECK(report.missing == 0);
  REQUIRE(report.pct_before.has_value());
  CHECK(*report.pct_before == doctest::Approx(2.0 / 3.0));
  CHECK(report.bins.at(0) == 1);   // [0, 5)
  CHECK(report.bins.at(1) == 1);   // [5, 10)
  CHECK(report.bins.at(-1) == 1);  // [-5, 0)

  SUBCASE("all-zero distances have pct_before 0") {
    const auto zeros = timeliness_report({0.0, 0.0});
    CHECK(*zeros.pct_before == 0.0);
    CHECK(zeros.bins.at(0) == 2);
  }
  SUBCASE("missing timestamps are excluded and counted") {
    const auto mixed = timeliness_report({std::nullopt, 3.0});
    CHECK(mixed.counted == 1);
    CHECK(mixed.missing == 1);
  }
  SUBCASE("bin counts sum to the timestamped pairs on random data") {
    std::mt19937 gen(5);
    std::vector<std::optional<double>> distances;
    for (int i = 0; i < 300; ++i) {
      if (gen() % 5 == 0) distances.push_back(std::nullopt);
      else distances.push_back((double(gen() % 2000) - 1000.0) / 17.0);
    }
    const auto r = timeliness_report(distances);
    size_t total = 0;
    for (const auto& [bin, count] : r.bins) total += count;
    CHECK(total == r.counted);
  }
  SUBCASE("labels are reported separately") {
    const auto by_label = timeliness_by_label(
        {{2.0, 2}, {7.0, 2}, {-1.0, 1}, {std::nullopt, 1}});
    CHECK(by_label.at(2).counted == 2);
    CHECK(*by_label.at(2).pct_before == doctest::Approx(1.0));
    CHECK(by_label.at(1).counted == 1);
    CHECK(by_label.at(1).missing == 1);
    CHECK(*by_label.at(1).pct_before == doctest::Approx(0.0));
  }
}

TEST_CASE("word frequencies filter and sort deterministically") {
  const auto preproc = default_preproc();
  const auto rows =
      word_frequencies({"quake quake relief", "relief quake aid"}, 2, preproc);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::pair<std::string, int>{"quak", 3});
  CHECK(rows[1] == std::pair<std::string, int>{"relief", 2});

  CHECK(word_frequencies({"singleton words only appear once"}, 2, preproc).empty());

  // {x, x, y} at the default filter keeps only the repeated word
  const auto pair_rows = word_frequencies({"quake quake aid"}, 2, preproc);
  REQUIRE(pair_rows.size() == 1);
  CHECK(pair_rows[0] == std::pair<std::string, int>{"quak", 2});

  // stopwords never appear in the counts
  const auto stop_rows = word_frequencies({"the the the quake quake"}, 2, preproc);
  REQUIRE(stop_rows.size() == 1);
  CHECK(stop_rows[0].first == "quak");

  // equal counts sort lexicographically
  const auto ties = word_frequencies({"zeta zeta echo echo"}, 2, preproc);
  REQUIRE(ties.size() == 2);
  CHECK(ties[0].first == "echo");
  CHECK(ties[1].first == "zeta");
}
