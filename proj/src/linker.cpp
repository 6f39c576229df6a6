#include "newslink/linker.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "newslink/stemmer.hpp"

namespace newslink {
namespace {

using nlohmann::json;

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// Deterministic Fisher-Yates; std::shuffle is not pinned across library
// versions.
template <typename T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& gen) {
  for (size_t i = v.size(); i > 1; --i) {
    const size_t j = static_cast<size_t>(gen() % i);
    std::swap(v[i - 1], v[j]);
  }
}

struct Standardized {
  std::vector<std::array<double, 7>> rows;
  std::array<double, 7> means{};
  std::array<double, 7> stds{};
};

Standardized standardize(const std::vector<PairFeatures>& features) {
  Standardized s;
  s.rows.reserve(features.size());
  for (const auto& f : features) s.rows.push_back(f.values());

  const double n = static_cast<double>(s.rows.size());
  for (int d = 0; d < 7; ++d) {
    double sum = 0.0;
    for (const auto& row : s.rows) sum += row[d];
    s.means[d] = sum / n;
    double var = 0.0;
    for (const auto& row : s.rows) {
      const double diff = row[d] - s.means[d];
      var += diff * diff;
    }
    s.stds[d] = std::sqrt(var / n);
    if (s.stds[d] < 1e-12) s.stds[d] = 1.0;  // constant feature
  }
  for (auto& row : s.rows)
    for (int d = 0; d < 7; ++d) row[d] = (row[d] - s.means[d]) / s.stds[d];
  return s;
}

struct LinearFit {
  std::array<double, 7> w{};
  double b = 0.0;
};

double logloss(const std::vector<std::array<double, 7>>& x, const std::vector<int>& y,
               const std::vector<size_t>& idx, const LinearFit& fit, double lambda) {
  double loss = 0.0;
  for (size_t i : idx) {
    double z = fit.b;
    for (int d = 0; d < 7; ++d) z += fit.w[d] * x[i][d];
    // numerically stable log(1 + exp(-y z))
    const double yz = (y[i] ? 1.0 : -1.0) * z;
    loss += yz > 0 ? std::log1p(std::exp(-yz)) : -yz + std::log1p(std::exp(yz));
  }
  loss /= static_cast<double>(idx.size());
  double reg = 0.0;
  for (int d = 0; d < 7; ++d) reg += fit.w[d] * fit.w[d];
  return loss + 0.5 * lambda * reg;
}

// Full-batch gradient descent with halving step control. Deterministic.
LinearFit fit_logistic(const std::vector<std::array<double, 7>>& x,
                       const std::vector<int>& y, const std::vector<size_t>& idx,
                       double c, int iterations) {
  const double lambda = 1.0 / c;
  LinearFit fit;
  double step = 1.0;
  double best_loss = logloss(x, y, idx, fit, lambda);
  const double inv_n = 1.0 / static_cast<double>(idx.size());

  for (int iter = 0; iter < iterations; ++iter) {
    std::array<double, 7> grad{};
    double grad_b = 0.0;
    for (size_t i : idx) {
      double z = fit.b;
      for (int d = 0; d < 7; ++d) z += fit.w[d] * x[i][d];
      const double err = sigmoid(z) - static_cast<double>(y[i]);
      for (int d = 0; d < 7; ++d) grad[d] += err * x[i][d];
      grad_b += err;
    }
    for (int d = 0; d < 7; ++d) grad[d] = grad[d] * inv_n + lambda * fit.w[d];
    grad_b *= inv_n;

    LinearFit trial = fit;
    while (true) {
      for (int d = 0; d < 7; ++d) trial.w[d] = fit.w[d] - step * grad[d];
      trial.b = fit.b - step * grad_b;
      const double loss = logloss(x, y, idx, trial, lambda);
      if (loss <= best_loss) {
        fit = trial;
        best_loss = loss;
        step = std::min(step * 2.0, 1.0);
        break;
      }
      if (step < 1e-10) return fit;  // no descent direction left
      step *= 0.5;
    }
  }
  return fit;
}

double fold_accuracy(const std::vector<std::array<double, 7>>& x,
                     const std::vector<int>& y, const std::vector<size_t>& train_idx,
                     const std::vector<size_t>& test_idx, double c, int iterations) {
  const LinearFit fit = fit_logistic(x, y, train_idx, c, iterations);
  size_t correct = 0;
  for (size_t i : test_idx) {
    double z = fit.b;
    for (int d = 0; d < 7; ++d) z += fit.w[d] * x[i][d];
    if ((z >= 0.0 ? 1 : 0) == y[i]) ++correct;
  }
  return test_idx.empty() ? 0.0
                          : static_cast<double>(correct) / static_cast<double>(test_idx.size());
}

}  // namespace

const std::array<const char*, 7>& PairFeatures::field_names() {
  static const std::array<const char*, 7> names = {
      "char2gramSim",     "char3gramSim", "exp_char2gramSim", "exp_char3gramSim",
      "temporal_distance", "tfidf_sim",    "hashtag_sim"};
  return names;
}

std::array<double, 7> PairFeatures::values() const {
  return {char2gram_sim,     char3gram_sim, exp_char2gram_sim, exp_char3gram_sim,
          temporal_distance, tfidf_sim,     hashtag_sim};
}

double char_ngram_sim(const std::vector<std::string>& post_tokens,
                      const std::vector<std::string>& article_tokens, int n) {
  const CharNgramBag post_bag = char_ngrams(post_tokens, n);
  const CharNgramBag article_bag = char_ngrams(article_tokens, n);
  const size_t post_total = post_bag.total();
  const size_t article_total = article_bag.total();
  if (post_total == 0 || article_total == 0) return 0.0;
  const size_t matched = bag_intersection_size(post_bag, article_bag);
  return static_cast<double>(matched) /
         static_cast<double>(std::min(post_total, article_total));
}

double expanded_char_ngram_sim(const std::vector<std::string>& post_tokens,
                               const std::vector<std::string>& article_tokens,
                               int n, const LexicalDb& lexdb,
                               const Preprocessor& preproc) {
  return char_ngram_sim(expand_synsets(post_tokens, lexdb, preproc),
                        expand_synsets(article_tokens, lexdb, preproc), n);
}

std::vector<std::string> split_camel_case(const std::string& word) {
  std::vector<std::string> parts;
  std::string current;
  for (size_t i = 0; i < word.size(); ++i) {
    if (i > 0 && std::islower(static_cast<unsigned char>(word[i - 1])) &&
        std::isupper(static_cast<unsigned char>(word[i]))) {
      parts.push_back(current);
      current.clear();
    }
    current.push_back(word[i]);
  }
  if (!current.empty()) parts.push_back(current);
  return parts;
}

double hashtag_similarity(const std::vector<std::string>& hashtags,
                          const std::unordered_set<std::string>& article_stems) {
  if (hashtags.empty()) return 0.0;
  size_t matched = 0;
  for (const auto& tag : hashtags) {
    bool hit = false;
    for (const auto& part : split_camel_case(tag)) {
      std::string lowered;
      for (char c : part)
        lowered.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
      if (article_stems.count(porter_stem(lowered))) {
        hit = true;
        break;
      }
    }
    if (hit) ++matched;
  }
  return static_cast<double>(matched) / static_cast<double>(hashtags.size());
}

std::optional<double> temporal_distance(const Post& post, const Article& article) {
  if (!article.published_at) return std::nullopt;
  return days_between(*article.published_at, post.created_at);
}

TextProfile profile_post(const Post& post, const Preprocessor& preproc,
                         const LexicalDb& lexdb, const TfidfIndex& index) {
  TextProfile profile;
  const TokenizedText tt = preproc.tokenize(post.text);
  profile.content_tokens = tt.content_tokens;
  profile.grams2 = char_ngrams(tt.content_tokens, 2);
  profile.grams3 = char_ngrams(tt.content_tokens, 3);
  const auto expanded = expand_synsets(tt.content_tokens, lexdb, preproc);
  profile.exp_grams2 = char_ngrams(expanded, 2);
  profile.exp_grams3 = char_ngrams(expanded, 3);
  profile.stem_set.insert(tt.stems.begin(), tt.stems.end());
  profile.tfidf = index.vectorize(tt.content_stems);
  profile.hashtags = post.hashtags;
  profile.time = post.created_at;
  return profile;
}

TextProfile profile_article(const Article& article, const Preprocessor& preproc,
                            const LexicalDb& lexdb, const TfidfIndex& index) {
  TextProfile profile;
  const TokenizedText tt = preproc.tokenize(article.title + " " + article.body);
  profile.content_tokens = tt.content_tokens;
  profile.grams2 = char_ngrams(tt.content_tokens, 2);
  profile.grams3 = char_ngrams(tt.content_tokens, 3);
  const auto expanded = expand_synsets(tt.content_tokens, lexdb, preproc);
  profile.exp_grams2 = char_ngrams(expanded, 2);
  profile.exp_grams3 = char_ngrams(expanded, 3);
  profile.stem_set.insert(tt.stems.begin(), tt.stems.end());
  profile.tfidf = index.vectorize(tt.content_stems);
  profile.time = article.published_at;
  return profile;
}

namespace {

double bag_sim(const CharNgramBag& a, const CharNgramBag& b) {
  const size_t ta = a.total(), tb = b.total();
  if (ta == 0 || tb == 0) return 0.0;
  return static_cast<double>(bag_intersection_size(a, b)) /
         static_cast<double>(std::min(ta, tb));
}

}  // namespace

PairFeatures pair_features(const TextProfile& post, const TextProfile& article) {
  PairFeatures f;
  f.char2gram_sim = bag_sim(post.grams2, article.grams2);
  f.char3gram_sim = bag_sim(post.grams3, article.grams3);
  f.exp_char2gram_sim = bag_sim(post.exp_grams2, article.exp_grams2);
  f.exp_char3gram_sim = bag_sim(post.exp_grams3, article.exp_grams3);
  if (post.time && article.time) {
    f.temporal_distance = days_between(*article.time, *post.time);
    f.has_temporal = true;
  }
  f.tfidf_sim = cosine(post.tfidf, article.tfidf);
  f.hashtag_sim = hashtag_similarity(post.hashtags, article.stem_set);
  return f;
}

PairFeatures make_features(const Post& post, const Article& article,
                           const TfidfIndex& index, const LexicalDb& lexdb,
                           const Preprocessor& preproc) {
  return pair_features(profile_post(post, preproc, lexdb, index),
                       profile_article(article, preproc, lexdb, index));
}

std::vector<size_t> undersample(const std::vector<int>& labels, std::uint64_t seed) {
  std::vector<size_t> positives, negatives;
  for (size_t i = 0; i < labels.size(); ++i)
    (labels[i] ? positives : negatives).push_back(i);
  if (positives.empty() || negatives.empty())
    throw std::invalid_argument("degenerate training set: single class");

  auto& majority = positives.size() > negatives.size() ? positives : negatives;
  auto& minority = positives.size() > negatives.size() ? negatives : positives;

  std::mt19937_64 gen(seed);
  seeded_shuffle(majority, gen);
  majority.resize(minority.size());

  std::vector<size_t> kept;
  kept.reserve(2 * minority.size());
  kept.insert(kept.end(), minority.begin(), minority.end());
  kept.insert(kept.end(), majority.begin(), majority.end());
  std::sort(kept.begin(), kept.end());
  return kept;
}

double LinkModel::margin(const PairFeatures& f) const {
  const auto row = f.values();
  double z = bias;
  for (int d = 0; d < 7; ++d)
    z += weights[d] * ((row[d] - feature_means[d]) / feature_stds[d]);
  return z;
}

double LinkModel::probability(const PairFeatures& f) const {
  return sigmoid(margin(f));
}

void LinkModel::save(const std::string& path) const {
  json j;
  j["weights"] = weights;
  j["bias"] = bias;
  j["feature_means"] = feature_means;
  j["feature_stds"] = feature_stds;
  j["chosen_c"] = chosen_c;
  j["cv_accuracy"] = cv_accuracy;
  j["c_grid"] = c_grid;
  j["cv_folds"] = cv_folds;
  j["seed"] = seed;
  j["feature_names"] = PairFeatures::field_names();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model: " + path);
  out << j.dump(2) << '\n';
}

LinkModel LinkModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model: " + path);
  json j;
  in >> j;
  LinkModel m;
  auto w = j.at("weights").get<std::vector<double>>();
  auto means = j.at("feature_means").get<std::vector<double>>();
  auto stds = j.at("feature_stds").get<std::vector<double>>();
  if (w.size() != 7 || means.size() != 7 || stds.size() != 7)
    throw std::runtime_error("corrupt model file: " + path);
  std::copy(w.begin(), w.end(), m.weights.begin());
  std::copy(means.begin(), means.end(), m.feature_means.begin());
  std::copy(stds.begin(), stds.end(), m.feature_stds.begin());
  m.bias = j.at("bias").get<double>();
  m.chosen_c = j.at("chosen_c").get<double>();
  m.cv_accuracy = j.value("cv_accuracy", 0.0);
  m.c_grid = j.value("c_grid", std::vector<double>{});
  m.cv_folds = j.value("cv_folds", 5);
  m.seed = j.value("seed", std::uint64_t{0});
  return m;
}

LinkModel train_link_model(const std::vector<PairFeatures>& features,
                           const std::vector<int>& labels,
                           const TrainOptions& options) {
  if (features.size() != labels.size() || features.empty())
    throw std::invalid_argument("train: features/labels size mismatch");
  for (size_t i = 0; i < features.size(); ++i) {
    for (double v : features[i].values())
      if (!std::isfinite(v))
        throw std::invalid_argument("non-finite feature in training row " +
                                    std::to_string(i));
  }
  {
    const bool has_pos = std::find(labels.begin(), labels.end(), 1) != labels.end();
    const bool has_neg = std::find(labels.begin(), labels.end(), 0) != labels.end();
    if (!has_pos || !has_neg)
      throw std::invalid_argument("degenerate training set: single class");
  }

  Standardized s = standardize(features);

  // Hold out a random fifth as the validation set for the grid search.
  std::vector<size_t> order(features.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 gen(options.seed);
  seeded_shuffle(order, gen);
  const size_t val_size = std::max<size_t>(1, order.size() / 5);
  std::vector<size_t> validation(order.begin(), order.begin() + val_size);

  const int folds = std::min<int>(options.cv_folds,
                                  static_cast<int>(validation.size()));
  double best_c = options.c_grid.empty() ? 1.0 : options.c_grid.front();
  double best_acc = -1.0;
  for (double c : options.c_grid) {
    double acc_sum = 0.0;
    int fold_count = 0;
    for (int f = 0; f < folds; ++f) {
      std::vector<size_t> train_idx, test_idx;
      for (size_t i = 0; i < validation.size(); ++i) {
        if (static_cast<int>(i % folds) == f) test_idx.push_back(validation[i]);
        else train_idx.push_back(validation[i]);
      }
      if (train_idx.empty() || test_idx.empty()) continue;
      // a fold may be single-class; accuracy is still defined
      acc_sum += fold_accuracy(s.rows, labels, train_idx, test_idx, c,
                               options.iterations);
      ++fold_count;
    }
    const double acc = fold_count ? acc_sum / fold_count : 0.0;
    if (acc > best_acc + 1e-12) {
      best_acc = acc;
      best_c = c;
    }
  }

  std::vector<size_t> all_idx(features.size());
  std::iota(all_idx.begin(), all_idx.end(), 0);
  const LinearFit fit = fit_logistic(s.rows, labels, all_idx, best_c,
                                     options.iterations);

  LinkModel model;
  model.weights = fit.w;
  model.bias = fit.b;
  model.feature_means = s.means;
  model.feature_stds = s.stds;
  model.chosen_c = best_c;
  model.cv_accuracy = best_acc < 0 ? 0.0 : best_acc;
  model.c_grid = options.c_grid;
  model.cv_folds = options.cv_folds;
  model.seed = options.seed;
  return model;
}

std::vector<RankedPost> LinkResult::annotation_export() const {
  std::vector<RankedPost> top(ranked.begin(),
                              ranked.begin() + std::min<size_t>(10, ranked.size()));
  return top;
}

LinkResult rank_posts(const std::string& article_id,
                      const std::vector<std::pair<std::string, PairFeatures>>& candidates,
                      const LinkModel& model) {
  LinkResult result;
  result.article_id = article_id;
  result.ranked.reserve(candidates.size());
  for (const auto& [post_id, features] : candidates)
    result.ranked.push_back({post_id, model.probability(features)});
  std::sort(result.ranked.begin(), result.ranked.end(),
            [](const RankedPost& a, const RankedPost& b) {
              if (a.probability != b.probability) return a.probability > b.probability;
              return a.post_id < b.post_id;
            });
  return result;
}

std::optional<double> weighted_precision(const std::vector<RelevanceLabel>& finals) {
  if (finals.empty()) return std::nullopt;
  double score = 0.0;
  for (int label : finals) {
    if (label == 2) score += 1.0;
    else if (label == 1) score += 0.5;
  }
  return score / static_cast<double>(finals.size());
}

AgreementResult annotator_agreement(
    const std::vector<std::vector<RelevanceLabel>>& label_sets) {
  AgreementResult result;
  double sum = 0.0;
  for (const auto& labels : label_sets) {
    if (labels.size() != 2) {
      ++result.skipped;
      continue;
    }
    const int diff = std::abs(labels[0] - labels[1]);
    sum += diff == 0 ? 1.0 : diff == 1 ? 0.5 : 0.0;
    ++result.used;
  }
  if (result.used > 0) result.score = sum / static_cast<double>(result.used);
  return result;
}

}  // namespace newslink
