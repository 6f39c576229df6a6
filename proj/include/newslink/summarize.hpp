#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "newslink/corpus.hpp"
#include "newslink/retrieval.hpp"
#include "newslink/textproc.hpp"

namespace newslink {

struct Budget {
  int max_words = 100;
};

struct Summary {
  std::string article_id;
  std::string method;
  std::vector<int> picked;  // 1-based sentence indices, selection order
  std::string text;
  int word_count = 0;
  bool approximate = false;  // exact solver fell back to the greedy heuristic
};

struct SummarizeOptions {
  Budget budget;
  double lexrank_threshold = 0.1;
  double damping = 0.85;
  double power_tolerance = 1e-6;
  int power_max_iterations = 100;
  double redundancy_cutoff = 0.95;
  int ilp_sentence_cap = 25;
};

// PageRank-style stationary distribution over a symmetric nonnegative weight
// matrix. Nodes without outgoing weight spread their mass uniformly; an
// all-zero graph yields uniform scores.
std::vector<double> stationary_scores(const std::vector<std::vector<double>>& weights,
                                      double damping, double tolerance,
                                      int max_iterations);

// Extractive summarizers over one article. Sentence statistics (tokens, word
// counts, smoothed-idf term weights and vectors over the article's own
// sentences) are computed once at construction.
class ArticleSummarizer {
 public:
  ArticleSummarizer(const Article& article, const Preprocessor& preproc,
                    SummarizeOptions options = {});

  Summary lead() const;
  // Scores sentences by cosine to the document centroid. When a corpus index
  // is supplied its idf weights the sentence vectors; otherwise the local
  // ones do. Falls back to the lead picks when every sentence vector is zero.
  Summary centroid(const TfidfIndex* corpus_index = nullptr) const;
  Summary lexrank() const;
  Summary textrank() const;
  Summary submodular() const;
  Summary greedy_tfidf() const;
  Summary ilp_budget() const;
  Summary score_ilp_tfidf() const;
  Summary title_reduction() const;

  Summary run(const std::string& method, const TfidfIndex* corpus_index = nullptr) const;
  static const std::vector<std::string>& method_names();

  size_t sentence_count() const { return sentences_.size(); }
  int sentence_word_count(size_t i) const { return word_counts_[i]; }

  // Instance data for oracle checks: term ids (with counts) per sentence,
  // idf per term, and the knapsack value of each sentence.
  std::vector<std::vector<std::uint32_t>> sentence_term_sets() const;
  const std::vector<std::vector<std::pair<std::uint32_t, int>>>& sentence_term_counts()
      const {
    return term_counts_;
  }
  const std::vector<double>& term_idfs() const { return term_idf_; }
  std::vector<double> sentence_values() const;

 private:
  Summary empty_summary(const std::string& method) const;
  Summary from_picked(const std::string& method, const std::vector<size_t>& picked0,
                      bool approximate = false) const;
  Summary truncated_single(const std::string& method, size_t index) const;
  Summary fill_by_score(const std::string& method, const std::vector<double>& scores,
                        const std::vector<SparseVec>* redundancy_vectors) const;
  Summary greedy_over_pool(const std::string& method,
                           const std::vector<size_t>& pool) const;
  std::vector<size_t> exact_coverage_search(double* achieved_value) const;
  double term_weight(std::uint32_t term, int count) const;

  std::string article_id_;
  std::string title_;
  std::vector<std::string> sentences_;
  std::vector<int> word_counts_;
  std::vector<std::vector<std::string>> content_stems_;
  // per sentence: (term id, count), sorted by id
  std::vector<std::vector<std::pair<std::uint32_t, int>>> term_counts_;
  std::vector<double> term_idf_;  // ln((S+1)/df)
  std::vector<SparseVec> vectors_;
  const Preprocessor* preproc_;
  SummarizeOptions options_;
};

struct TweetSummaryInput {
  std::string post_id;
  std::string text;
  RelevanceLabel final = 0;
  double probability = 0.0;
};

// Posts with final >= threshold, probability descending (ties by post_id),
// exact duplicate texts dropped, concatenated. No budget applies.
Summary tweets_as_summary(const std::string& article_id,
                          std::vector<TweetSummaryInput> posts, int threshold,
                          const Preprocessor& preproc);

}  // namespace newslink
