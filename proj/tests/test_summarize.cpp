#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "newslink/summarize.hpp"

using namespace newslink;

namespace {

Preprocessor default_preproc() {
  return Preprocessor::from_files(NEWSLINK_DATA_DIR "/stopwords_english.txt",
                                  NEWSLINK_DATA_DIR "/abbreviations_english.txt");
}

std::string gen_sentence(const std::string& prefix, int n_words, int distinct = -1) {
  if (distinct < 0) distinct = n_words;
  std::string s;
  for (int i = 0; i < n_words; ++i) {
    if (!s.empty()) s.push_back(' ');
    s += prefix + std::to_string(i % distinct);
  }
  s.push_back('.');
  return s;
}

Article make_article(const std::string& id, const std::string& title,
                     const std::vector<std::string>& sentences) {
  Article a;
  a.id = id;
  a.title = title;
  for (const auto& s : sentences) {
    if (!a.body.empty()) a.body.push_back(' ');
    a.body += s;
  }
  a.sentences = sentences;
  return a;
}

SummarizeOptions with_budget(int words) {
  SummarizeOptions o;
  o.budget.max_words = words;
  return o;
}

std::multiset<std::string> token_bag(const Preprocessor& p, const std::string& text) {
  const auto tt = p.tokenize(text);
  return {tt.tokens.begin(), tt.tokens.end()};
}

}  // namespace

TEST_CASE("lead fills a prefix under the word budget") {
  const auto preproc = default_preproc();
  const Article a = make_article(
      "a", "t", {gen_sentence("a", 40), gen_sentence("b", 50), gen_sentence("c", 30)});

  SUBCASE("40+50+30 with budget 100 picks the first two") {
    const Summary s = ArticleSummarizer(a, preproc, with_budget(100)).lead();
    CHECK(s.picked == std::vector<int>{1, 2});
    CHECK(s.word_count == 90);
  }
  SUBCASE("whole article fits an unbounded budget") {
    const Summary s = ArticleSummarizer(a, preproc, with_budget(1000)).lead();
    CHECK(s.picked == std::vector<int>{1, 2, 3});
    CHECK(token_bag(preproc, s.text) == token_bag(preproc, a.body));
  }
  SUBCASE("oversized first sentence is truncated at the boundary") {
    const Article big = make_article("b", "t", {gen_sentence("x", 120)});
    const Summary s = ArticleSummarizer(big, preproc, with_budget(100)).lead();
    CHECK(s.picked == std::vector<int>{1});
    CHECK(s.word_count == 100);
  }
}

TEST_CASE("centroid ranks on-topic sentences above an off-topic one") {
  const auto preproc = default_preproc();
  const Article a = make_article(
      "a", "t",
      {"Earthquake rescue teams search rubble for quake survivors.",
       "Rescue crews pulled quake survivors from the rubble downtown.",
       "Cricket scores rose sharply this cheerful season."});

  SUBCASE("one-sentence document summarizes to itself") {
    const Article one = make_article("one", "t", {"Quake hits the valley."});
    const Summary s = ArticleSummarizer(one, preproc, with_budget(100)).centroid();
    CHECK(s.picked == std::vector<int>{1});
    CHECK(s.text == "Quake hits the valley.");
  }
  SUBCASE("off-topic sentence is ranked last") {
    // budget 17 fits the two 8- and 9-word on-topic sentences exactly
    const Summary s = ArticleSummarizer(a, preproc, with_budget(17)).centroid();
    REQUIRE(s.picked.size() == 2);
    CHECK(std::find(s.picked.begin(), s.picked.end(), 3) == s.picked.end());
  }
  SUBCASE("duplicate sentences are skipped by the redundancy guard") {
    const Article dup = make_article(
        "dup", "t",
        {"Quake relief arrived today in trucks.",
         "Quake relief arrived today in trucks."});
    const Summary s = ArticleSummarizer(dup, preproc, with_budget(100)).centroid();
    CHECK(s.picked == std::vector<int>{1});
  }
}

TEST_CASE("stationary scores: uniform on the zero graph, hub highest on a star") {
  const std::vector<std::vector<double>> zero(3, std::vector<double>(3, 0.0));
  const auto uniform = stationary_scores(zero, 0.85, 1e-6, 100);
  for (double p : uniform) CHECK(p == doctest::Approx(1.0 / 3.0));

  // 4-node star: node 0 connected to 1,2,3
  std::vector<std::vector<double>> star(4, std::vector<double>(4, 0.0));
  for (int leaf : {1, 2, 3}) star[0][leaf] = star[leaf][0] = 1.0;
  const auto scores = stationary_scores(star, 0.85, 1e-6, 100);

  // independent dense power-iteration oracle
  std::vector<double> p(4, 0.25), next(4);
  for (int iter = 0; iter < 200; ++iter) {
    for (int i = 0; i < 4; ++i) {
      double flow = 0.0;
      for (int j = 0; j < 4; ++j) {
        double deg = 0.0;
        for (int l = 0; l < 4; ++l) deg += star[j][l];
        if (deg > 0.0) flow += star[j][i] / deg * p[j];
      }
      next[i] = 0.15 * 0.25 + 0.85 * flow;
    }
    p = next;
  }
  for (int i = 0; i < 4; ++i) CHECK(scores[i] == doctest::Approx(p[i]).epsilon(1e-3));
  CHECK(scores[0] > scores[1]);
  CHECK(scores[1] == doctest::Approx(scores[2]));
  CHECK(scores[2] == doctest::Approx(scores[3]));

  const double total = scores[0] + scores[1] + scores[2] + scores[3];
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("lexrank places the hub sentence first") {
  const auto preproc = default_preproc();
  // hub shares words with every leaf; leaves are pairwise disjoint
  const Article a = make_article(
      "a", "t",
      {"quake relief school flood response.",
       "quake alpha bravo charlie delta.",
       "relief echo foxtrot golf hotel.",
       "school india juliet kilo lima."});

  const Summary one = ArticleSummarizer(a, preproc, with_budget(5)).lexrank();
  CHECK(one.picked == std::vector<int>{1});

  SUBCASE("two identical sentences share the budget symmetrically") {
    const Article twin = make_article(
        "twin", "t",
        {"Rescue teams dig through rubble.", "Rescue teams dig through rubble."});
    const Summary s = ArticleSummarizer(twin, preproc, with_budget(100)).lexrank();
    CHECK(s.picked == std::vector<int>{1, 2});  // equal scores, index order
  }
  SUBCASE("budget of one word truncates the top sentence") {
    const Summary s = ArticleSummarizer(a, preproc, with_budget(1)).lexrank();
    REQUIRE(s.picked.size() == 1);
    CHECK(s.word_count <= 1);
  }
}

TEST_CASE("textrank overlap weights match a hand oracle ranking") {
  const auto preproc = default_preproc();
  // s1/s2 share two content stems; s3 shares one with s1; s4 is isolated
  const Article a = make_article(
      "a", "t",
      {"quake rubble rescue alpha.",
       "quake rubble bravo charlie.",
       "rescue delta echo foxtrot.",
       "golf hotel india juliet."});
  const ArticleSummarizer summarizer(a, preproc, with_budget(1000));
  const Summary s = summarizer.textrank();
  REQUIRE(s.picked.size() == 4);

  // oracle: hand-built weight matrix, same power iteration
  const size_t n = 4;
  std::vector<std::vector<std::string>> stems;
  for (const auto& sent : a.sentences) stems.push_back(preproc.tokenize(sent).content_stems);
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      std::set<std::string> si(stems[i].begin(), stems[i].end());
      size_t shared = 0;
      for (const auto& st : stems[j])
        if (si.count(st)) ++shared;
      if (shared && stems[i].size() > 1 && stems[j].size() > 1)
        w[i][j] = w[j][i] = static_cast<double>(shared) /
                            (std::log(double(stems[i].size())) +
                             std::log(double(stems[j].size())));
    }
  }
  const auto oracle = stationary_scores(w, 0.85, 1e-6, 100);
  std::vector<size_t> expected_order = {0, 1, 2, 3};
  std::stable_sort(expected_order.begin(), expected_order.end(),
                   [&](size_t x, size_t y) { return oracle[x] > oracle[y]; });
  for (size_t i = 0; i < n; ++i)
    CHECK(s.picked[i] == static_cast<int>(expected_order[i]) + 1);

  SUBCASE("single sentence summarizes to itself") {
    const Article one = make_article("one", "t", {"Floods swamp the relief camps."});
    const Summary single = ArticleSummarizer(one, preproc, with_budget(50)).textrank();
    CHECK(single.picked == std::vector<int>{1});
  }
}

TEST_CASE("submodular greedy prefers coverage over redundancy") {
  const auto preproc = default_preproc();
  const Article a = make_article(
      "a", "t",
      {"quake relief aid camp.",
       "quake relief aid camp.",
       "school flood water tent."});
  Summary s = ArticleSummarizer(a, preproc, with_budget(8)).submodular();
  std::sort(s.picked.begin(), s.picked.end());
  CHECK(s.picked == std::vector<int>{1, 3});

  SUBCASE("F is monotone: supersets never score lower") {
    const ArticleSummarizer summarizer(a, preproc, with_budget(8));
    const auto counts = summarizer.sentence_term_counts();
    const auto& idf = summarizer.term_idfs();
    auto value = [&](const std::vector<size_t>& set) {
      std::map<std::uint32_t, int> cov;
      for (size_t i : set)
        for (const auto& [t, c] : counts[i]) cov[t] += c;
      double v = 0.0;
      for (const auto& [t, c] : cov) v += idf[t] * std::sqrt(double(c));
      return v;
    };
    const std::vector<std::vector<size_t>> chains = {
        {}, {0}, {0, 1}, {0, 1, 2}};
    for (size_t i = 1; i < chains.size(); ++i)
      CHECK(value(chains[i]) >= value(chains[i - 1]) - 1e-12);
  }

  SUBCASE("unit-length sentences reduce to plain greedy coverage") {
    const Article units = make_article("u", "t", {"quake.", "quake.", "aid."});
    Summary two = ArticleSummarizer(units, preproc, with_budget(2)).submodular();
    std::sort(two.picked.begin(), two.picked.end());
    CHECK(two.picked == std::vector<int>{1, 3});
  }
}

TEST_CASE("greedy tfidf covers terms once") {
  const auto preproc = default_preproc();

  SUBCASE("a sentence containing every term suffices alone") {
    const Article a = make_article(
        "a", "t",
        {"quake relief school flood.", "quake relief.", "school flood."});
    const Summary s = ArticleSummarizer(a, preproc, with_budget(100)).greedy_tfidf();
    CHECK(s.picked == std::vector<int>{1});
  }
  SUBCASE("classic set-cover order") {
    const Article a = make_article(
        "a", "t", {"alpha beta gamma.", "alpha beta.", "delta."});
    const Summary s = ArticleSummarizer(a, preproc, with_budget(100)).greedy_tfidf();
    CHECK(s.picked == std::vector<int>{1, 3});
  }
  SUBCASE("all-stopword sentences are never picked while alternatives exist") {
    const Article a = make_article(
        "a", "t", {"the of a an.", "quake relief arrived."});
    const Summary s = ArticleSummarizer(a, preproc, with_budget(100)).greedy_tfidf();
    CHECK(s.picked == std::vector<int>{2});
  }
}

TEST_CASE("exact budgeted coverage matches subset enumeration") {
  const auto preproc = default_preproc();
  const Article a = make_article(
      "a", "t",
      {"alpha beta gamma delta.",
       "alpha beta echo.",
       "gamma delta foxtrot golf.",
       "echo foxtrot."});

  SUBCASE("budget covering everything selects all sentences") {
    const Summary s = ArticleSummarizer(a, preproc, with_budget(1000)).ilp_budget();
    CHECK(s.picked == std::vector<int>{1, 2, 3, 4});
    CHECK_FALSE(s.approximate);
  }
  SUBCASE("value equals brute force over all 16 subsets") {
    const ArticleSummarizer summarizer(a, preproc, with_budget(7));
    const auto term_sets = summarizer.sentence_term_sets();
    const auto& idf = summarizer.term_idfs();
    std::vector<int> wc;
    for (size_t i = 0; i < summarizer.sentence_count(); ++i)
      wc.push_back(summarizer.sentence_word_count(i));

    double best = 0.0;
    for (int mask = 0; mask < 16; ++mask) {
      int weight = 0;
      std::set<std::uint32_t> covered;
      for (int i = 0; i < 4; ++i) {
        if (!(mask & (1 << i))) continue;
        weight += wc[size_t(i)];
        covered.insert(term_sets[size_t(i)].begin(), term_sets[size_t(i)].end());
      }
      if (weight > 7) continue;
      double v = 0.0;
      for (auto t : covered) v += idf[t];
      best = std::max(best, v);
    }

    const Summary s = summarizer.ilp_budget();
    std::set<std::uint32_t> covered;
    for (int p : s.picked)
      covered.insert(term_sets[size_t(p - 1)].begin(), term_sets[size_t(p - 1)].end());
    double achieved = 0.0;
    for (auto t : covered) achieved += idf[t];
    CHECK(achieved == doctest::Approx(best).epsilon(1e-9));
  }
  SUBCASE("above the sentence cap the result is flagged approximate") {
    SummarizeOptions options = with_budget(7);
    options.ilp_sentence_cap = 3;
    const Summary s = ArticleSummarizer(a, preproc, options).ilp_budget();
    CHECK(s.approximate);
    CHECK(s.method == "ilp_budget");
  }
}

TEST_CASE("knapsack summarizer solves the pinned instance") {
  const auto preproc = default_preproc();
  // A: 50 words all distinct, B: 40 distinct, C: 60 words over 5 stems
  const Article a = make_article("a", "t",
                                 {gen_sentence("a", 50), gen_sentence("b", 40),
                                  gen_sentence("c", 60, 5)});
  const ArticleSummarizer summarizer(a, preproc, with_budget(100));
  const Summary s = summarizer.score_ilp_tfidf();
  std::vector<int> picked = s.picked;
  std::sort(picked.begin(), picked.end());
  CHECK(picked == std::vector<int>{1, 2});

  // exhaustive check over the 8 subsets
  const auto values = summarizer.sentence_values();
  const std::vector<int> wc = {50, 40, 60};
  double best = 0.0;
  int best_mask = 0;
  for (int mask = 0; mask < 8; ++mask) {
    int weight = 0;
    double value = 0.0;
    for (int i = 0; i < 3; ++i)
      if (mask & (1 << i)) {
        weight += wc[size_t(i)];
        value += values[size_t(i)];
      }
    if (weight <= 100 && value > best + 1e-12) {
      best = value;
      best_mask = mask;
    }
  }
  CHECK(best_mask == 0b011);

  SUBCASE("a single over-budget sentence yields an empty summary") {
    const Article big = make_article("big", "t", {gen_sentence("x", 120)});
    const Summary empty = ArticleSummarizer(big, preproc, with_budget(100)).score_ilp_tfidf();
    CHECK(empty.picked.empty());
    CHECK(empty.text.empty());
  }
  SUBCASE("zero-value sentences are excluded") {
    const Article with_stop = make_article(
        "z", "t", {"the of a.", "quake relief arrived."});
    const Summary s2 =
        ArticleSummarizer(with_stop, preproc, with_budget(100)).score_ilp_tfidf();
    CHECK(s2.picked == std::vector<int>{2});
  }
}

TEST_CASE("title reduction restricts the candidate pool") {
  const auto preproc = default_preproc();

  SUBCASE("no overlap falls back to the full document") {
    const Article a = make_article(
        "a", "cricket season",
        {"quake relief arrived.", "rubble cleared downtown."});
    const Summary s = ArticleSummarizer(a, preproc, with_budget(100)).title_reduction();
    CHECK_FALSE(s.picked.empty());
    CHECK(s.method == "title_reduction");
  }
  SUBCASE("two of five sentences share a title stem") {
    const Article a = make_article(
        "a", "school reopening",
        {"schools reopened in the valley.",
         "quake relief arrived by truck.",
         "rubble was cleared downtown.",
         "classes resumed as schools welcomed students.",
         "monsoon rain flooded the camps."});
    const Summary s = ArticleSummarizer(a, preproc, with_budget(1000)).title_reduction();
    for (int p : s.picked) CHECK((p == 1 || p == 4));
    CHECK_FALSE(s.picked.empty());
  }
  SUBCASE("title equal to the first sentence keeps it in the pool") {
    const Article a = make_article(
        "a", "Quake relief arrived by truck",
        {"Quake relief arrived by truck.", "Cricket scores rose."});
    const Summary s = ArticleSummarizer(a, preproc, with_budget(100)).title_reduction();
    CHECK(std::find(s.picked.begin(), s.picked.end(), 1) != s.picked.end());
  }
}

TEST_CASE("tweets form a deduplicated probability-ordered summary") {
  const auto preproc = default_preproc();
  std::vector<TweetSummaryInput> posts = {
      {"p1", "Rescue crews dig all night", 2, 0.9},
      {"p2", "Rescue crews dig all night", 2, 0.8},  // exact duplicate text
      {"p3", "Aid arrives in the valley", 1, 0.7},
      {"p4", "Nothing to see here", 0, 0.99},
  };

  const Summary rel2 = tweets_as_summary("a1", posts, 2, preproc);
  CHECK(rel2.text == "Rescue crews dig all night");

  const Summary rel1 = tweets_as_summary("a1", posts, 1, preproc);
  CHECK(rel1.text == "Rescue crews dig all night Aid arrives in the valley");

  // threshold-2 pool is contained in the threshold-1 pool
  CHECK(rel1.text.find(rel2.text) != std::string::npos);

  const Summary none = tweets_as_summary("a1", {{"p", "x", 0, 0.5}}, 2, preproc);
  CHECK(none.text.empty());
  CHECK(none.word_count == 0);
}

TEST_CASE("all methods respect the budget and are deterministic") {
  const auto preproc = default_preproc();
  const Article a = make_article(
      "a", "Relief effort grows",
      {"Rescue teams pulled survivors from the rubble of the quake today.",
       "Relief agencies airlifted food and blankets to remote villages.",
       "Officials appealed for international assistance and medical teams.",
       "Schools remained closed while engineers inspected classrooms.",
       "Monsoon rain threatened the relief camps near the river.",
       "Families moved their tents to higher ground before the storm."});

  TfidfIndex corpus = TfidfIndex::build(
      {{"a", preproc.tokenize(a.body).content_stems},
       {"b", {"cricket", "match", "score"}}});

  for (int budget : {5, 12, 30, 100}) {
    const ArticleSummarizer summarizer(a, preproc, with_budget(budget));
    for (const auto& method : ArticleSummarizer::method_names()) {
      const Summary first = summarizer.run(method, &corpus);
      const Summary second = summarizer.run(method, &corpus);
      INFO("method: ", method, " budget: ", budget);
      CHECK(first.word_count <= budget);
      CHECK(first.text == second.text);
      CHECK(first.picked == second.picked);
      CHECK(first.word_count ==
            static_cast<int>(preproc.tokenize(first.text).tokens.size()));

      // extractive output stays within the article's token multiset
      auto article_bag = token_bag(preproc, a.body);
      for (const auto& token : preproc.tokenize(first.text).tokens) {
        auto it = article_bag.find(token);
        REQUIRE(it != article_bag.end());
        article_bag.erase(it);
      }
      // picked indices are valid and distinct
      std::set<int> seen;
      for (int p : first.picked) {
        CHECK(p >= 1);
        CHECK(p <= static_cast<int>(a.sentences.size()));
        CHECK(seen.insert(p).second);
      }
    }
  }
}
