#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "newslink/corpus.hpp"

using namespace newslink;

namespace {

Preprocessor default_preproc() {
  return Preprocessor::from_files(NEWSLINK_DATA_DIR "/stopwords_english.txt",
                                  NEWSLINK_DATA_DIR "/abbreviations_english.txt");
}

// Writes content to a unique temp file; removed on destruction.
struct TempFile {
  std::string path;
  explicit TempFile(const std::string& content, const std::string& suffix) {
    static int counter = 0;
    path = std::string("/tmp/newslink_test_") + std::to_string(++counter) + suffix;
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

Article make_article(const std::string& id, const std::string& body, int pad_chars = 0) {
  Article a;
  a.id = id;
  a.body = body + std::string(static_cast<size_t>(pad_chars), 'x');
  Preprocessor p;
  a.sentences = p.split_sentences(a.body);
  return a;
}

}  // namespace

TEST_CASE("jsonl round trip: one good record") {
  const auto preproc = default_preproc();
  TempFile file(
      R"({"id":"p1","text":"Quake hit #valley @user http://a.b/c","created_at":"2015-05-01T06:15:00Z","author":"alice"})"
      "\n",
      ".jsonl");
  auto result = load_posts(file.path, FileFormat::Jsonl, preproc);
  CHECK(result.report.errors.empty());
  REQUIRE(result.posts.size() == 1);
  const Post& post = result.posts[0];
  CHECK(post.id == "p1");
  CHECK(post.hashtags == std::vector<std::string>{"valley"});
  CHECK(post.mentions == std::vector<std::string>{"user"});
  CHECK(post.urls == std::vector<std::string>{"http://a.b/c"});
}

TEST_CASE("missing created_at is an error naming the field") {
  const auto preproc = default_preproc();
  TempFile file(R"({"id":"p1","text":"hello"})" "\n", ".jsonl");
  auto result = load_posts(file.path, FileFormat::Jsonl, preproc);
  CHECK(result.posts.empty());
  REQUIRE(result.report.errors.size() == 1);
  CHECK(result.report.errors[0].line == 1);
  CHECK(result.report.errors[0].message.find("created_at") != std::string::npos);
}

TEST_CASE("20-record fixture with 2 malformed rows") {
  const auto preproc = default_preproc();
  std::string content;
  for (int i = 0; i < 20; ++i) {
    if (i == 4) {
      content += R"({"id":"bad4","text":"no timestamp"})" "\n";
    } else if (i == 11) {
      content += "not json at all\n";
    } else {
      content += R"({"id":"p)" + std::to_string(i) +
                 R"(","text":"post number )" + std::to_string(i) +
                 R"(","created_at":"2015-05-01T00:00:00Z","author":"u"})" "\n";
    }
  }
  TempFile file(content, ".jsonl");
  auto result = load_posts(file.path, FileFormat::Jsonl, preproc);
  CHECK(result.posts.size() == 18);
  CHECK(result.report.errors.size() == 2);
}

TEST_CASE("csv posts load with header mapping") {
  const auto preproc = default_preproc();
  TempFile file(
      "id,text,created_at,author\n"
      "p1,\"Roads blocked, aid delayed\",2015-05-02,carol\n",
      ".csv");
  auto result = load_posts(file.path, FileFormat::Csv, preproc);
  CHECK(result.report.errors.empty());
  REQUIRE(result.posts.size() == 1);
  CHECK(result.posts[0].text == "Roads blocked, aid delayed");
}

TEST_CASE("duplicate post ids are rejected per record") {
  const auto preproc = default_preproc();
  TempFile file(
      R"({"id":"p1","text":"first","created_at":"2015-05-01T00:00:00Z"})" "\n"
      R"({"id":"p1","text":"again","created_at":"2015-05-01T00:00:00Z"})" "\n",
      ".jsonl");
  auto result = load_posts(file.path, FileFormat::Jsonl, preproc);
  CHECK(result.posts.size() == 1);
  REQUIRE(result.report.errors.size() == 1);
  CHECK(result.report.errors[0].message.find("duplicate") != std::string::npos);
}

TEST_CASE("unreadable file is fatal") {
  const auto preproc = default_preproc();
  CHECK_THROWS(load_posts("/nonexistent/posts.jsonl", FileFormat::Jsonl, preproc));
}

TEST_CASE("article loading segments sentences") {
  const auto preproc = default_preproc();
  TempFile file(
      R"({"id":"a1","title":"T","body":"One here. Two there. Three now.","published_at":"2015-05-03"})"
      "\n"
      R"({"id":"a2","title":"T","body":""})" "\n"
      R"({"id":"a3","title":"T","body":"Title only no terminator"})" "\n",
      ".jsonl");
  auto result = load_articles(file.path, FileFormat::Jsonl, preproc);
  REQUIRE(result.articles.size() == 2);
  CHECK(result.articles[0].sentences.size() == 3);
  CHECK(result.articles[1].sentences.size() == 1);
  REQUIRE(result.report.errors.size() == 1);
  CHECK(result.report.errors[0].message.find("empty document") != std::string::npos);
}

TEST_CASE("filter stages run in order with inclusive thresholds") {
  FilterOptions options;
  options.min_chars = 1000;
  options.min_sentences = 10;

  // exactly 1000 chars, 10 sentences: nine 99-char sentences + space each,
  // then one 100-char sentence
  std::string exact_body;
  for (int i = 0; i < 9; ++i) exact_body += std::string(98, 'a') + ". ";
  exact_body += std::string(99, 'a') + ".";
  Article at_threshold = make_article("a1", exact_body);
  REQUIRE(at_threshold.body.size() == 1000);
  REQUIRE(at_threshold.sentences.size() == 10);
  std::string ten_sentences;
  for (int i = 0; i < 10; ++i) ten_sentences += "This is sentence number something. ";

  Article too_short = make_article("a2", "Short body. Second sentence.");
  Article non_ascii = make_article("a3", ten_sentences + "caf\xC3\xA9");
  Article few_sentences = make_article("a4", std::string(1200, 'y') + ". Done. Ok.");

  auto result =
      filter_articles({at_threshold, too_short, non_ascii, few_sentences}, options);
  CHECK(result.kept.size() == 1);
  CHECK(result.kept[0].id == "a1");
  CHECK(result.report.removed_non_ascii == 1);
  CHECK(result.report.removed_min_chars == 1);
  CHECK(result.report.removed_min_sentences == 1);
  CHECK(result.report.input_count == 4);
}

TEST_CASE("filter is idempotent and counts add up") {
  FilterOptions options;
  options.min_chars = 30;
  options.min_sentences = 2;
  std::vector<Article> articles;
  for (int i = 0; i < 8; ++i) {
    std::string body;
    for (int s = 0; s <= i; ++s) body += "Sentence number " + std::to_string(s) + " here. ";
    articles.push_back(make_article("a" + std::to_string(i), body));
  }
  articles.push_back(make_article("bad", "caf\xC3\xA9 short"));

  auto first = filter_articles(articles, options);
  CHECK(first.report.input_count ==
        first.report.kept_count + first.report.removed_non_ascii +
            first.report.removed_min_chars + first.report.removed_min_sentences);

  auto second = filter_articles(first.kept, options);
  CHECK(second.kept.size() == first.kept.size());
  CHECK(second.report.removed_non_ascii == 0);
  CHECK(second.report.removed_min_chars == 0);
  CHECK(second.report.removed_min_sentences == 0);
}

TEST_CASE("five-article fixture: one with nine sentences is removed") {
  FilterOptions options;
  options.min_chars = 0;
  options.min_sentences = 10;
  std::vector<Article> articles;
  for (int i = 0; i < 4; ++i) {
    std::string body;
    for (int s = 0; s < 10 + i; ++s) body += "Sentence " + std::to_string(s) + " ok. ";
    articles.push_back(make_article("good" + std::to_string(i), body));
  }
  std::string nine;
  for (int s = 0; s < 9; ++s) nine += "Sentence " + std::to_string(s) + " ok. ";
  articles.push_back(make_article("nine", nine));

  auto result = filter_articles(articles, options);
  CHECK(result.kept.size() == 4);
  CHECK(result.report.removed_min_sentences == 1);
}

TEST_CASE("label aggregation: ceiling of the mean equals the sum rule") {
  // exhaustive over all 9 ordered pairs
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; b <= 2; ++b) {
      const int sum = a + b;
      const int expected = sum == 0 ? 0 : sum <= 2 ? 1 : 2;
      CHECK(aggregate_labels(a, b) == expected);
    }
  }
}

TEST_CASE("labeled pair loading aggregates finals") {
  TempFile file(
      "post_id,article_id,label1,label2\n"
      "p1,a1,2,1\n"
      "p2,a1,0,0\n"
      "p3,a1,1,\n"
      "p4,a1,3,0\n",
      ".csv");
  auto result = load_labeled_pairs(file.path);
  REQUIRE(result.pairs.size() == 3);
  CHECK(result.pairs[0].final == 2);
  CHECK(result.pairs[1].final == 0);
  CHECK(result.pairs[2].final == 1);  // single label
  CHECK(result.report.errors.size() == 1);
}

TEST_CASE("descriptive stats over a hand-built fixture") {
  const auto preproc = default_preproc();
  auto post = [&](const std::string& id, const std::string& text) {
    Post p;
    p.id = id;
    p.text = text;
    p.author = "author_" + id;
    Markers m = preproc.extract_markers(text);
    p.hashtags = m.hashtags;
    p.mentions = m.mentions;
    p.urls = m.urls;
    return p;
  };

  SUBCASE("two posts, one with a URL") {
    auto stats = descriptive_stats(
        {post("1", "plain text"), post("2", "see http://a.b/c")}, {}, preproc);
    CHECK(*stats.frac_with_urls == doctest::Approx(0.5));
  }

  SUBCASE("keyword fraction 3 of 4") {
    auto stats = descriptive_stats(
        {post("1", "the quake was strong"), post("2", "quake again"),
         post("3", "aftermath of the quake"), post("4", "sunny day")},
        {"quake"}, preproc);
    CHECK(*stats.frac_with_keyword == doctest::Approx(0.75));
  }

  SUBCASE("empty input leaves fractions undefined") {
    auto stats = descriptive_stats({}, {"quake"}, preproc);
    CHECK_FALSE(stats.frac_with_urls.has_value());
    CHECK_FALSE(stats.frac_with_keyword.has_value());
    CHECK(stats.post_count == 0);
  }

  SUBCASE("keyword fraction is undefined without a keyword list") {
    auto stats = descriptive_stats({post("1", "quake news")}, {}, preproc);
    CHECK_FALSE(stats.frac_with_keyword.has_value());
    CHECK(stats.frac_with_urls.has_value());
  }

  SUBCASE("fractions stay within [0,1] and phrases match as sequences") {
    auto stats = descriptive_stats(
        {post("1", "extreme weather warning issued #alert @office http://x.y/z"),
         post("2", "weather was extreme today")},
        {"extreme weather"}, preproc);
    CHECK(*stats.frac_with_keyword == doctest::Approx(0.5));
    for (auto frac : {stats.frac_with_mentions, stats.frac_with_urls,
                      stats.frac_with_hashtags, stats.frac_with_keyword}) {
      REQUIRE(frac.has_value());
      CHECK(*frac >= 0.0);
      CHECK(*frac <= 1.0);
    }
    CHECK(stats.unique_users == 2);
  }
}
