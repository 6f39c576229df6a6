#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "newslink/corpus.hpp"
#include "newslink/retrieval.hpp"
#include "newslink/textproc.hpp"
#include "newslink/wordnet.hpp"

namespace newslink {

// The seven per-pair features. Similarities lie in [0,1]; temporal distance
// is article time minus post time in fractional days (positive when the post
// came first) and may be missing.
struct PairFeatures {
  double char2gram_sim = 0.0;
  double char3gram_sim = 0.0;
  double exp_char2gram_sim = 0.0;
  double exp_char3gram_sim = 0.0;
  double temporal_distance = 0.0;
  bool has_temporal = false;
  double tfidf_sim = 0.0;
  double hashtag_sim = 0.0;

  static const std::array<const char*, 7>& field_names();
  std::array<double, 7> values() const;
};

// |multiset intersection of char n-gram bags| / min(bag sizes); 0 when
// either bag is empty.
double char_ngram_sim(const std::vector<std::string>& post_tokens,
                      const std::vector<std::string>& article_tokens, int n);

double expanded_char_ngram_sim(const std::vector<std::string>& post_tokens,
                               const std::vector<std::string>& article_tokens,
                               int n, const LexicalDb& lexdb,
                               const Preprocessor& preproc);

// Fraction of the post's hashtags whose camel-case-split part stems match an
// article stem; 0 when the post has no hashtags.
double hashtag_similarity(const std::vector<std::string>& hashtags,
                          const std::unordered_set<std::string>& article_stems);

// Camel-case split at lower->upper boundaries; "NepalQuake" -> Nepal, Quake.
std::vector<std::string> split_camel_case(const std::string& word);

// (article published - post created) in fractional days; nullopt when the
// article has no timestamp.
std::optional<double> temporal_distance(const Post& post, const Article& article);

// Precomputed per-text state so corpus-scale pair scoring does not repeat
// tokenization, expansion or vectorization.
struct TextProfile {
  std::vector<std::string> content_tokens;
  CharNgramBag grams2, grams3;
  CharNgramBag exp_grams2, exp_grams3;
  std::unordered_set<std::string> stem_set;
  SparseVec tfidf;
  std::vector<std::string> hashtags;
  std::optional<UtcTime> time;
};

TextProfile profile_post(const Post& post, const Preprocessor& preproc,
                         const LexicalDb& lexdb, const TfidfIndex& index);
// Articles are profiled over title + body.
TextProfile profile_article(const Article& article, const Preprocessor& preproc,
                            const LexicalDb& lexdb, const TfidfIndex& index);

PairFeatures pair_features(const TextProfile& post, const TextProfile& article);

PairFeatures make_features(const Post& post, const Article& article,
                           const TfidfIndex& index, const LexicalDb& lexdb,
                           const Preprocessor& preproc);

// Seeded random undersampling of the majority class to an exact 1:1 ratio.
// Returns kept indices in ascending order. Throws std::invalid_argument on a
// single-class input ("degenerate training set").
std::vector<size_t> undersample(const std::vector<int>& labels, std::uint64_t seed);

struct TrainOptions {
  std::uint64_t seed = 0;
  std::vector<double> c_grid = {0.01, 0.1, 1.0, 10.0, 100.0};
  int cv_folds = 5;
  int iterations = 500;
};

// Calibrated linear scorer: probability = sigmoid(w . z + b) over
// standardized features. The inverse-regularization constant is picked by
// grid search with k-fold cross-validation on a held-out random fifth of the
// training data.
struct LinkModel {
  std::array<double, 7> weights{};
  double bias = 0.0;
  std::array<double, 7> feature_means{};
  std::array<double, 7> feature_stds{};
  double chosen_c = 1.0;
  double cv_accuracy = 0.0;
  std::vector<double> c_grid;
  int cv_folds = 5;
  std::uint64_t seed = 0;

  double margin(const PairFeatures& f) const;
  double probability(const PairFeatures& f) const;

  void save(const std::string& path) const;
  static LinkModel load(const std::string& path);
};

// labels are 0/1. Throws on non-finite features (naming the row) and on
// single-class input.
LinkModel train_link_model(const std::vector<PairFeatures>& features,
                           const std::vector<int>& labels,
                           const TrainOptions& options);

struct RankedPost {
  std::string post_id;
  double probability = 0.0;
};

struct LinkResult {
  std::string article_id;
  std::vector<RankedPost> ranked;  // probability descending, ties by post_id

  // Top-10 view for annotation export.
  std::vector<RankedPost> annotation_export() const;
};

LinkResult rank_posts(const std::string& article_id,
                      const std::vector<std::pair<std::string, PairFeatures>>& candidates,
                      const LinkModel& model);

// (#label2 + 0.5 * #label1) / n; nullopt for empty input.
std::optional<double> weighted_precision(const std::vector<RelevanceLabel>& finals);

struct AgreementResult {
  std::optional<double> score;
  size_t used = 0;
  size_t skipped = 0;  // items without exactly two labels
};

// Mean of w(|l1 - l2|) with w(0)=1, w(1)=0.5, w(2)=0.
AgreementResult annotator_agreement(const std::vector<std::vector<RelevanceLabel>>& label_sets);

}  // namespace newslink
