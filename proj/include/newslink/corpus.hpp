#pragma once

#include <optional>
#include <string>
#include <vector>

#include "newslink/textproc.hpp"
#include "newslink/timeutil.hpp"

namespace newslink {

struct Post {
  std::string id;
  std::string text;
  UtcTime created_at;
  std::string author;
  std::vector<std::string> hashtags;  // without leading '#'
  std::vector<std::string> mentions;
  std::vector<std::string> urls;
};

struct Article {
  std::string id;
  std::string source;
  std::string title;
  std::string body;
  std::optional<UtcTime> published_at;
  std::vector<std::string> sentences;  // sentence i has annotator index i+1
};

// 0 = irrelevant, 1 = partially relevant, 2 = relevant.
using RelevanceLabel = int;
bool is_valid_label(int value);

// Ceiling of the mean of two labels: sum 0 -> 0, sum 1..2 -> 1, sum 3..4 -> 2.
RelevanceLabel aggregate_labels(RelevanceLabel a, RelevanceLabel b);

struct AnnotatedPair {
  std::string post_id;
  std::string article_id;
  std::vector<RelevanceLabel> labels;
  std::optional<RelevanceLabel> final;
};

struct SummaryAnnotation {
  std::string article_id;
  std::string annotator;
  std::string abstractive;          // free text, <= 100 words
  std::vector<int> extractive;      // up to 5 sentence indices, 1-based,
                                    // decreasing importance
};

enum class FileFormat { Jsonl, Csv };

// "jsonl" / "csv", or by file extension when `name` is a path.
std::optional<FileFormat> parse_format(const std::string& name);

struct RecordError {
  size_t line = 0;
  std::string message;
};

struct LoadReport {
  std::vector<RecordError> errors;
};

struct PostLoadResult {
  std::vector<Post> posts;
  LoadReport report;
};

struct ArticleLoadResult {
  std::vector<Article> articles;
  LoadReport report;
};

// Loaders throw std::runtime_error when the file cannot be read; per-record
// schema violations are collected in the report with their line number.
// Hashtags, mentions and URLs are always re-derived from the text.
PostLoadResult load_posts(const std::string& path, FileFormat format,
                          const Preprocessor& preproc);
ArticleLoadResult load_articles(const std::string& path, FileFormat format,
                                const Preprocessor& preproc);

struct LabeledPairLoadResult {
  std::vector<AnnotatedPair> pairs;
  LoadReport report;
};

// CSV with header post_id,article_id,label1,label2. An empty label2 yields a
// single-label pair whose final is that label.
LabeledPairLoadResult load_labeled_pairs(const std::string& path);

struct AnnotationLoadResult {
  std::vector<SummaryAnnotation> annotations;
  LoadReport report;
};

// JSONL with fields article_id, annotator, abstractive, extractive.
AnnotationLoadResult load_summary_annotations(const std::string& path);

struct FilterOptions {
  int min_chars = 1000;       // inclusive: >= passes
  int min_sentences = 10;     // inclusive
  bool ascii_only = true;
};

struct FilterReport {
  size_t input_count = 0;
  size_t removed_non_ascii = 0;
  size_t removed_min_chars = 0;
  size_t removed_min_sentences = 0;
  size_t kept_count = 0;
};

struct FilterResult {
  std::vector<Article> kept;
  FilterReport report;
};

// Filters in order: ascii-decodable, body length, sentence count.
FilterResult filter_articles(const std::vector<Article>& articles,
                             const FilterOptions& options);

struct PostStats {
  size_t post_count = 0;
  std::optional<double> frac_with_mentions;
  std::optional<double> frac_with_urls;
  std::optional<double> frac_with_hashtags;
  std::optional<double> frac_with_keyword;  // absent without a keyword list
  size_t unique_users = 0;
  size_t unique_words = 0;
};

// Keyword phrases match as contiguous token sequences after tokenization.
// Empty input leaves every fraction undefined rather than 0.
PostStats descriptive_stats(const std::vector<Post>& posts,
                            const std::vector<std::string>& keywords,
                            const Preprocessor& preproc);

std::vector<std::string> load_keyword_list(const std::string& path);

}  // namespace newslink
