#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "newslink/corpus.hpp"
#include "newslink/textproc.hpp"

namespace newslink {

struct RougeScore {
  int n = 1;
  // triple of the max-F1 reference
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // per-reference means, for transparency with multiple references
  double mean_precision = 0.0;
  double mean_recall = 0.0;
  double mean_f1 = 0.0;
};

// Clipped n-gram overlap between a peer token sequence and one or more
// reference token sequences. A side with fewer than n tokens contributes no
// n-grams and zeroes the affected ratio.
RougeScore rouge_n(const std::vector<std::string>& peer_tokens,
                   const std::vector<std::vector<std::string>>& reference_token_lists,
                   int n);

struct RougeOptions {
  bool stem = true;
  bool remove_stopwords = false;
};

std::vector<std::string> rouge_tokens(const std::string& text,
                                      const Preprocessor& preproc,
                                      const RougeOptions& options);

RougeScore rouge_n_text(const std::string& peer,
                        const std::vector<std::string>& references, int n,
                        const Preprocessor& preproc, const RougeOptions& options);

// Whole article body as the peer; the recall field is the extractive upper
// bound for this article/reference pair.
RougeScore recall_ceiling(const Article& article,
                          const std::vector<std::string>& references, int n,
                          const Preprocessor& preproc, const RougeOptions& options);

// Word set (support) with its companion multiset.
struct WordSet {
  std::unordered_set<std::string> elements;
  std::unordered_map<std::string, int> counts;

  static WordSet from_tokens(const std::vector<std::string>& tokens);
  // content stems of the text
  static WordSet from_text(const std::string& text, const Preprocessor& preproc);
};

// |a intersect b| / |a union b|; 1 when both sets are empty.
double jaccard(const WordSet& a, const WordSet& b);

// (|a - a∩b| / |a|, |b - a∩b| / |b|); an empty side scores 0.
std::pair<double, double> uniq(const WordSet& a, const WordSet& b);

// Removes every occurrence of any word shared with b from a.
std::unordered_map<std::string, int> content_difference(
    const std::unordered_map<std::string, int>& a,
    const std::unordered_map<std::string, int>& b);

struct AnnotatorPairRow {
  std::string annotator_a;
  std::string annotator_b;  // "-" when the annotator had no partner
  std::optional<double> mean_jaccard;
  size_t shared_docs = 0;
};

// Mean Jaccard of abstractive summaries over the documents each annotator
// pair shares. Annotators without a partner are reported without a score.
std::vector<AnnotatorPairRow> annotator_jaccard_table(
    const std::vector<SummaryAnnotation>& annotations, const Preprocessor& preproc);

struct TimelinessReport {
  // bin m covers temporal distances in [5m, 5m+5) days
  std::map<long long, size_t> bins;
  size_t counted = 0;
  size_t missing = 0;
  std::optional<double> pct_before;  // fraction with distance > 0
};

TimelinessReport timeliness_report(const std::vector<std::optional<double>>& distances);

// Separate reports for each final label value present.
std::map<int, TimelinessReport> timeliness_by_label(
    const std::vector<std::pair<std::optional<double>, int>>& labeled_distances);

// Stem-level counts over all texts, filtered at min_freq, sorted by count
// descending then lexicographic.
std::vector<std::pair<std::string, int>> word_frequencies(
    const std::vector<std::string>& texts, int min_freq, const Preprocessor& preproc);

std::vector<std::pair<std::string, int>> sorted_frequency_rows(
    const std::unordered_map<std::string, int>& counts, int min_freq);

}  // namespace newslink
