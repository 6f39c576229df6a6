#include "newslink/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "newslink/csv.hpp"

namespace newslink {
namespace {

using nlohmann::json;

std::string lowercase(std::string s) {
  for (char& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return s;
}

std::string require_string(const json& record, const char* field) {
  auto it = record.find(field);
  if (it == record.end() || it->is_null())
    throw std::runtime_error(std::string("missing field '") + field + "'");
  if (!it->is_string())
    throw std::runtime_error(std::string("field '") + field + "' is not a string");
  return it->get<std::string>();
}

std::string optional_string(const json& record, const char* field) {
  auto it = record.find(field);
  if (it == record.end() || it->is_null()) return "";
  if (!it->is_string())
    throw std::runtime_error(std::string("field '") + field + "' is not a string");
  return it->get<std::string>();
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return in;
}

// Column lookup for CSV inputs; extra columns are ignored.
struct HeaderMap {
  std::vector<std::string> names;

  int find(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
      if (lowercase(names[i]) == name) return static_cast<int>(i);
    return -1;
  }
};

std::string csv_field(const csv::Row& row, int idx) {
  if (idx < 0 || idx >= static_cast<int>(row.size())) return "";
  return row[static_cast<size_t>(idx)];
}

Post finish_post(Post post, const Preprocessor& preproc) {
  Markers markers = preproc.extract_markers(post.text);
  post.hashtags = std::move(markers.hashtags);
  post.mentions = std::move(markers.mentions);
  post.urls = std::move(markers.urls);
  return post;
}

Article finish_article(Article article, const Preprocessor& preproc) {
  article.sentences = preproc.split_sentences(article.body);
  return article;
}

}  // namespace

bool is_valid_label(int value) { return value >= 0 && value <= 2; }

RelevanceLabel aggregate_labels(RelevanceLabel a, RelevanceLabel b) {
  return (a + b + 1) / 2;
}

std::optional<FileFormat> parse_format(const std::string& name) {
  const std::string lowered = lowercase(name);
  if (lowered == "jsonl" || lowered == "json") return FileFormat::Jsonl;
  if (lowered == "csv") return FileFormat::Csv;
  auto dot = lowered.rfind('.');
  if (dot != std::string::npos) {
    const std::string ext = lowered.substr(dot + 1);
    if (ext == "jsonl" || ext == "json") return FileFormat::Jsonl;
    if (ext == "csv") return FileFormat::Csv;
  }
  return std::nullopt;
}

PostLoadResult load_posts(const std::string& path, FileFormat format,
                          const Preprocessor& preproc) {
  PostLoadResult result;
  std::unordered_set<std::string> seen_ids;

  auto add_post = [&](Post post, size_t line) {
    if (post.id.empty()) {
      result.report.errors.push_back({line, "empty id"});
      return;
    }
    if (!seen_ids.insert(post.id).second) {
      result.report.errors.push_back({line, "duplicate id '" + post.id + "'"});
      return;
    }
    if (post.text.empty()) {
      result.report.errors.push_back({line, "empty text"});
      return;
    }
    result.posts.push_back(finish_post(std::move(post), preproc));
  };

  std::ifstream in = open_or_throw(path);
  if (format == FileFormat::Jsonl) {
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        json record = json::parse(line);
        Post post;
        post.id = require_string(record, "id");
        post.text = require_string(record, "text");
        const std::string created = require_string(record, "created_at");
        auto t = parse_iso8601(created);
        if (!t) throw std::runtime_error("unparseable created_at '" + created + "'");
        post.created_at = *t;
        post.author = optional_string(record, "author");
        add_post(std::move(post), line_no);
      } catch (const std::exception& e) {
        result.report.errors.push_back({line_no, e.what()});
      }
    }
  } else {
    auto rows = csv::read_all(in);
    if (rows.empty()) return result;
    HeaderMap header{rows[0]};
    const int id_col = header.find("id");
    const int text_col = header.find("text");
    const int created_col = header.find("created_at");
    const int author_col = header.find("author");
    if (id_col < 0 || text_col < 0 || created_col < 0)
      throw std::runtime_error("posts CSV must have id,text,created_at columns");
    for (size_t r = 1; r < rows.size(); ++r) {
      const size_t line_no = r + 1;
      Post post;
      post.id = csv_field(rows[r], id_col);
      post.text = csv_field(rows[r], text_col);
      post.author = csv_field(rows[r], author_col);
      const std::string created = csv_field(rows[r], created_col);
      auto t = parse_iso8601(created);
      if (!t) {
        result.report.errors.push_back(
            {line_no, created.empty() ? "missing field 'created_at'"
                                      : "unparseable created_at '" + created + "'"});
        continue;
      }
      post.created_at = *t;
      add_post(std::move(post), line_no);
    }
  }
  return result;
}

ArticleLoadResult load_articles(const std::string& path, FileFormat format,
                                const Preprocessor& preproc) {
  ArticleLoadResult result;
  std::unordered_set<std::string> seen_ids;

  auto add_article = [&](Article article, size_t line) {
    if (article.id.empty()) {
      result.report.errors.push_back({line, "empty id"});
      return;
    }
    if (!seen_ids.insert(article.id).second) {
      result.report.errors.push_back({line, "duplicate id '" + article.id + "'"});
      return;
    }
    if (article.body.empty()) {
      result.report.errors.push_back({line, "empty document"});
      return;
    }
    result.articles.push_back(finish_article(std::move(article), preproc));
  };

  std::ifstream in = open_or_throw(path);
  if (format == FileFormat::Jsonl) {
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        json record = json::parse(line);
        Article article;
        article.id = require_string(record, "id");
        article.source = optional_string(record, "source");
        article.title = optional_string(record, "title");
        article.body = require_string(record, "body");
        const std::string published = optional_string(record, "published_at");
        if (!published.empty()) {
          auto t = parse_iso8601(published);
          if (!t)
            throw std::runtime_error("unparseable published_at '" + published + "'");
          article.published_at = *t;
        }
        add_article(std::move(article), line_no);
      } catch (const std::exception& e) {
        result.report.errors.push_back({line_no, e.what()});
      }
    }
  } else {
    auto rows = csv::read_all(in);
    if (rows.empty()) return result;
    HeaderMap header{rows[0]};
    const int id_col = header.find("id");
    const int source_col = header.find("source");
    const int title_col = header.find("title");
    const int body_col = header.find("body");
    const int published_col = header.find("published_at");
    if (id_col < 0 || body_col < 0)
      throw std::runtime_error("articles CSV must have id,body columns");
    for (size_t r = 1; r < rows.size(); ++r) {
      const size_t line_no = r + 1;
      Article article;
      article.id = csv_field(rows[r], id_col);
      article.source = csv_field(rows[r], source_col);
      article.title = csv_field(rows[r], title_col);
      article.body = csv_field(rows[r], body_col);
      const std::string published = csv_field(rows[r], published_col);
      if (!published.empty()) {
        auto t = parse_iso8601(published);
        if (!t) {
          result.report.errors.push_back(
              {line_no, "unparseable published_at '" + published + "'"});
          continue;
        }
        article.published_at = *t;
      }
      add_article(std::move(article), line_no);
    }
  }
  return result;
}

LabeledPairLoadResult load_labeled_pairs(const std::string& path) {
  LabeledPairLoadResult result;
  std::ifstream in = open_or_throw(path);
  auto rows = csv::read_all(in);
  if (rows.empty()) return result;
  HeaderMap header{rows[0]};
  const int post_col = header.find("post_id");
  const int article_col = header.find("article_id");
  const int l1_col = header.find("label1");
  const int l2_col = header.find("label2");
  if (post_col < 0 || article_col < 0 || l1_col < 0)
    throw std::runtime_error(
        "labels CSV must have post_id,article_id,label1[,label2] columns");

  auto parse_label = [](const std::string& s) -> std::optional<int> {
    if (s.empty()) return std::nullopt;
    if (s.size() != 1 || s[0] < '0' || s[0] > '2') return std::optional<int>(-1);
    return s[0] - '0';
  };

  for (size_t r = 1; r < rows.size(); ++r) {
    const size_t line_no = r + 1;
    AnnotatedPair pair;
    pair.post_id = csv_field(rows[r], post_col);
    pair.article_id = csv_field(rows[r], article_col);
    if (pair.post_id.empty() || pair.article_id.empty()) {
      result.report.errors.push_back({line_no, "missing pair ids"});
      continue;
    }
    auto l1 = parse_label(csv_field(rows[r], l1_col));
    auto l2 = parse_label(csv_field(rows[r], l2_col));
    if (!l1 || *l1 < 0 || (l2 && *l2 < 0)) {
      result.report.errors.push_back({line_no, "labels must be 0, 1 or 2"});
      continue;
    }
    pair.labels.push_back(*l1);
    if (l2) pair.labels.push_back(*l2);
    if (pair.labels.size() == 2)
      pair.final = aggregate_labels(pair.labels[0], pair.labels[1]);
    else
      pair.final = pair.labels[0];
    result.pairs.push_back(std::move(pair));
  }
  return result;
}

AnnotationLoadResult load_summary_annotations(const std::string& path) {
  AnnotationLoadResult result;
  std::ifstream in = open_or_throw(path);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json record = json::parse(line);
      SummaryAnnotation ann;
      ann.article_id = require_string(record, "article_id");
      ann.annotator = require_string(record, "annotator");
      ann.abstractive = optional_string(record, "abstractive");
      if (record.contains("extractive")) {
        if (!record["extractive"].is_array())
          throw std::runtime_error("field 'extractive' is not an array");
        for (const auto& v : record["extractive"]) {
          if (!v.is_number_integer())
            throw std::runtime_error("extractive indices must be integers");
          ann.extractive.push_back(v.get<int>());
        }
      }
      if (ann.extractive.size() > 5)
        throw std::runtime_error("more than 5 extractive sentence indices");
      for (int idx : ann.extractive)
        if (idx < 1) throw std::runtime_error("sentence indices are 1-based");
      result.annotations.push_back(std::move(ann));
    } catch (const std::exception& e) {
      result.report.errors.push_back({line_no, e.what()});
    }
  }
  return result;
}

FilterResult filter_articles(const std::vector<Article>& articles,
                             const FilterOptions& options) {
  FilterResult result;
  result.report.input_count = articles.size();

  auto ascii_ok = [](const std::string& body) {
    for (unsigned char c : body) {
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v')
        continue;
      if (c >= 0x80) return false;
    }
    return true;
  };

  for (const Article& article : articles) {
    if (options.ascii_only && !ascii_ok(article.body)) {
      ++result.report.removed_non_ascii;
      continue;
    }
    if (static_cast<int>(article.body.size()) < options.min_chars) {
      ++result.report.removed_min_chars;
      continue;
    }
    if (static_cast<int>(article.sentences.size()) < options.min_sentences) {
      ++result.report.removed_min_sentences;
      continue;
    }
    result.kept.push_back(article);
  }
  result.report.kept_count = result.kept.size();
  return result;
}

PostStats descriptive_stats(const std::vector<Post>& posts,
                            const std::vector<std::string>& keywords,
                            const Preprocessor& preproc) {
  PostStats stats;
  stats.post_count = posts.size();
  if (posts.empty()) return stats;  // fractions stay undefined

  // keyword phrases as token sequences
  std::vector<std::vector<std::string>> phrases;
  for (const auto& kw : keywords) {
    auto tokens = preproc.tokenize(kw).tokens;
    if (!tokens.empty()) phrases.push_back(std::move(tokens));
  }

  size_t with_mentions = 0, with_urls = 0, with_hashtags = 0, with_keyword = 0;
  std::unordered_set<std::string> users;
  std::unordered_set<std::string> words;

  for (const Post& post : posts) {
    if (!post.mentions.empty()) ++with_mentions;
    if (!post.urls.empty()) ++with_urls;
    if (!post.hashtags.empty()) ++with_hashtags;
    if (!post.author.empty()) users.insert(post.author);

    const auto tokens = preproc.tokenize(post.text).tokens;
    words.insert(tokens.begin(), tokens.end());

    bool hit = false;
    for (const auto& phrase : phrases) {
      if (phrase.size() > tokens.size()) continue;
      for (size_t i = 0; i + phrase.size() <= tokens.size() && !hit; ++i)
        hit = std::equal(phrase.begin(), phrase.end(), tokens.begin() + i);
      if (hit) break;
    }
    if (hit) ++with_keyword;
  }

  const double n = static_cast<double>(posts.size());
  stats.frac_with_mentions = with_mentions / n;
  stats.frac_with_urls = with_urls / n;
  stats.frac_with_hashtags = with_hashtags / n;
  if (!phrases.empty()) stats.frac_with_keyword = with_keyword / n;
  stats.unique_users = users.size();
  stats.unique_words = words.size();
  return stats;
}

std::vector<std::string> load_keyword_list(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::vector<std::string> keywords;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (!line.empty()) keywords.push_back(line);
  }
  return keywords;
}

}  // namespace newslink
