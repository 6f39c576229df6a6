#include "newslink/summarize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace newslink {
namespace {

std::vector<size_t> order_by_score(const std::vector<double>& scores) {
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return scores[a] > scores[b];
  });
  return order;
}

std::string join_with_space(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& part : parts) {
    if (!out.empty()) out.push_back(' ');
    out += part;
  }
  return out;
}

std::vector<std::string> whitespace_words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

}  // namespace

std::vector<double> stationary_scores(const std::vector<std::vector<double>>& weights,
                                      double damping, double tolerance,
                                      int max_iterations) {
  const size_t n = weights.size();
  if (n == 0) return {};
  std::vector<double> degree(n, 0.0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) degree[i] += weights[i][j];

  const double uniform = 1.0 / static_cast<double>(n);
  std::vector<double> p(n, uniform), next(n, 0.0);
  for (int iter = 0; iter < max_iterations; ++iter) {
    double dangling = 0.0;
    for (size_t j = 0; j < n; ++j)
      if (degree[j] <= 0.0) dangling += p[j];
    for (size_t i = 0; i < n; ++i) {
      double in_flow = dangling * uniform;
      for (size_t j = 0; j < n; ++j)
        if (degree[j] > 0.0 && weights[j][i] > 0.0)
          in_flow += weights[j][i] / degree[j] * p[j];
      next[i] = (1.0 - damping) * uniform + damping * in_flow;
    }
    double delta = 0.0;
    for (size_t i = 0; i < n; ++i) delta += std::fabs(next[i] - p[i]);
    p.swap(next);
    if (delta < tolerance) break;
  }
  return p;
}

ArticleSummarizer::ArticleSummarizer(const Article& article,
                                     const Preprocessor& preproc,
                                     SummarizeOptions options)
    : article_id_(article.id),
      title_(article.title),
      sentences_(article.sentences),
      preproc_(&preproc),
      options_(options) {
  if (options_.budget.max_words < 1)
    throw std::invalid_argument("budget must be positive");

  const size_t n = sentences_.size();
  word_counts_.resize(n);
  content_stems_.resize(n);

  std::map<std::string, std::uint32_t> vocab;
  std::vector<std::map<std::uint32_t, int>> counts(n);
  for (size_t i = 0; i < n; ++i) {
    const TokenizedText tt = preproc.tokenize(sentences_[i]);
    word_counts_[i] = static_cast<int>(tt.tokens.size());
    content_stems_[i] = tt.content_stems;
    for (const auto& stem : tt.content_stems) {
      auto [it, inserted] = vocab.emplace(stem, static_cast<std::uint32_t>(vocab.size()));
      ++counts[i][it->second];
    }
  }

  std::vector<int> df(vocab.size(), 0);
  for (const auto& tf : counts)
    for (const auto& [term, c] : tf) ++df[term];

  term_idf_.resize(vocab.size());
  for (size_t t = 0; t < vocab.size(); ++t)
    term_idf_[t] = std::log(static_cast<double>(n + 1) / df[t]);

  term_counts_.resize(n);
  vectors_.resize(n);
  for (size_t i = 0; i < n; ++i) {
    SparseVec vec;
    for (const auto& [term, c] : counts[i]) {
      term_counts_[i].emplace_back(term, c);
      vec.emplace_back(term, term_weight(term, c));
    }
    double norm_sq = 0.0;
    for (const auto& [t, w] : vec) norm_sq += w * w;
    if (norm_sq > 0.0) {
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (auto& [t, w] : vec) w *= inv;
      vectors_[i] = std::move(vec);
    }
  }
}

double ArticleSummarizer::term_weight(std::uint32_t term, int count) const {
  return (1.0 + std::log(static_cast<double>(count))) * term_idf_[term];
}

Summary ArticleSummarizer::empty_summary(const std::string& method) const {
  Summary s;
  s.article_id = article_id_;
  s.method = method;
  return s;
}

Summary ArticleSummarizer::from_picked(const std::string& method,
                                       const std::vector<size_t>& picked0,
                                       bool approximate) const {
  Summary s = empty_summary(method);
  s.approximate = approximate;
  std::vector<std::string> parts;
  for (size_t idx : picked0) {
    s.picked.push_back(static_cast<int>(idx) + 1);
    parts.push_back(sentences_[idx]);
  }
  s.text = join_with_space(parts);
  s.word_count = static_cast<int>(preproc_->tokenize(s.text).tokens.size());
  return s;
}

Summary ArticleSummarizer::truncated_single(const std::string& method,
                                            size_t index) const {
  Summary s = empty_summary(method);
  auto words = whitespace_words(sentences_[index]);
  if (words.size() > static_cast<size_t>(options_.budget.max_words))
    words.resize(static_cast<size_t>(options_.budget.max_words));
  s.picked.push_back(static_cast<int>(index) + 1);
  s.text = join_with_space(words);
  s.word_count = static_cast<int>(preproc_->tokenize(s.text).tokens.size());
  return s;
}

Summary ArticleSummarizer::lead() const {
  if (sentences_.empty()) return empty_summary("lead");
  const int budget = options_.budget.max_words;
  std::vector<size_t> picked;
  int used = 0;
  for (size_t i = 0; i < sentences_.size(); ++i) {
    if (used + word_counts_[i] > budget) break;
    picked.push_back(i);
    used += word_counts_[i];
  }
  if (picked.empty()) return truncated_single("lead", 0);
  return from_picked("lead", picked);
}

Summary ArticleSummarizer::fill_by_score(
    const std::string& method, const std::vector<double>& scores,
    const std::vector<SparseVec>* redundancy_vectors) const {
  if (sentences_.empty()) return empty_summary(method);
  const int budget = options_.budget.max_words;
  const auto order = order_by_score(scores);

  std::vector<size_t> picked;
  int used = 0;
  for (size_t idx : order) {
    if (word_counts_[idx] == 0) continue;
    if (used + word_counts_[idx] > budget) continue;
    if (redundancy_vectors) {
      bool redundant = false;
      for (size_t p : picked) {
        if (cosine((*redundancy_vectors)[idx], (*redundancy_vectors)[p]) >=
            options_.redundancy_cutoff) {
          redundant = true;
          break;
        }
      }
      if (redundant) continue;
    }
    picked.push_back(idx);
    used += word_counts_[idx];
  }
  if (picked.empty()) return truncated_single(method, order.front());
  return from_picked(method, picked);
}

Summary ArticleSummarizer::centroid(const TfidfIndex* corpus_index) const {
  if (sentences_.empty()) return empty_summary("centroid");

  const std::vector<SparseVec>* vectors = &vectors_;
  std::vector<SparseVec> corpus_vectors;
  if (corpus_index) {
    corpus_vectors.reserve(sentences_.size());
    for (const auto& stems : content_stems_)
      corpus_vectors.push_back(corpus_index->vectorize(stems));
    vectors = &corpus_vectors;
  }

  std::map<std::uint32_t, double> centroid_acc;
  bool any = false;
  for (const auto& vec : *vectors) {
    for (const auto& [t, w] : vec) centroid_acc[t] += w;
    if (!vec.empty()) any = true;
  }
  if (!any) {
    Summary s = lead();
    s.method = "centroid";
    return s;
  }
  SparseVec centroid_vec(centroid_acc.begin(), centroid_acc.end());
  double norm_sq = 0.0;
  for (const auto& [t, w] : centroid_vec) norm_sq += w * w;
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& [t, w] : centroid_vec) w *= inv;

  std::vector<double> scores(sentences_.size(), 0.0);
  for (size_t i = 0; i < sentences_.size(); ++i)
    scores[i] = cosine((*vectors)[i], centroid_vec);
  return fill_by_score("centroid", scores, vectors);
}

Summary ArticleSummarizer::lexrank() const {
  if (sentences_.empty()) return empty_summary("lexrank");
  const size_t n = sentences_.size();
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const double sim = cosine(vectors_[i], vectors_[j]);
      if (sim >= options_.lexrank_threshold) w[i][j] = w[j][i] = sim;
    }
  }
  const auto scores = stationary_scores(w, options_.damping, options_.power_tolerance,
                                        options_.power_max_iterations);
  return fill_by_score("lexrank", scores, nullptr);
}

Summary ArticleSummarizer::textrank() const {
  if (sentences_.empty()) return empty_summary("textrank");
  const size_t n = sentences_.size();
  std::vector<std::set<std::string>> stem_sets(n);
  for (size_t i = 0; i < n; ++i)
    stem_sets[i] = {content_stems_[i].begin(), content_stems_[i].end()};

  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    const size_t ni = content_stems_[i].size();
    if (ni <= 1) continue;
    for (size_t j = i + 1; j < n; ++j) {
      const size_t nj = content_stems_[j].size();
      if (nj <= 1) continue;
      size_t shared = 0;
      for (const auto& stem : stem_sets[i])
        if (stem_sets[j].count(stem)) ++shared;
      if (shared == 0) continue;
      const double weight = static_cast<double>(shared) /
                            (std::log(static_cast<double>(ni)) +
                             std::log(static_cast<double>(nj)));
      w[i][j] = w[j][i] = weight;
    }
  }
  const auto scores = stationary_scores(w, options_.damping, options_.power_tolerance,
                                        options_.power_max_iterations);
  return fill_by_score("textrank", scores, nullptr);
}

Summary ArticleSummarizer::submodular() const {
  if (sentences_.empty()) return empty_summary("submodular");
  const int budget = options_.budget.max_words;
  const size_t n = sentences_.size();

  std::vector<int> coverage(term_idf_.size(), 0);
  auto gain = [&](size_t s) {
    double g = 0.0;
    for (const auto& [t, c] : term_counts_[s])
      g += term_idf_[t] * (std::sqrt(static_cast<double>(coverage[t] + c)) -
                           std::sqrt(static_cast<double>(coverage[t])));
    return g;
  };

  std::vector<bool> taken(n, false);
  std::vector<size_t> picked;
  int used = 0;
  while (true) {
    double best_ratio = 0.0;
    int best = -1;
    for (size_t s = 0; s < n; ++s) {
      if (taken[s] || word_counts_[s] == 0) continue;
      if (used + word_counts_[s] > budget) continue;
      const double ratio = gain(s) / static_cast<double>(word_counts_[s]);
      if (ratio > best_ratio + 1e-12) {
        best_ratio = ratio;
        best = static_cast<int>(s);
      }
    }
    if (best < 0) break;
    taken[best] = true;
    picked.push_back(static_cast<size_t>(best));
    used += word_counts_[best];
    for (const auto& [t, c] : term_counts_[best]) coverage[t] += c;
  }

  // standard safeguard: compare against the best single sentence in budget
  auto set_value = [&](const std::vector<size_t>& set) {
    std::map<std::uint32_t, int> cov;
    for (size_t s : set)
      for (const auto& [t, c] : term_counts_[s]) cov[t] += c;
    double v = 0.0;
    for (const auto& [t, c] : cov)
      v += term_idf_[t] * std::sqrt(static_cast<double>(c));
    return v;
  };
  double best_single_value = -1.0;
  int best_single = -1;
  for (size_t s = 0; s < n; ++s) {
    if (word_counts_[s] == 0 || word_counts_[s] > budget) continue;
    const double v = set_value({s});
    if (v > best_single_value + 1e-12) {
      best_single_value = v;
      best_single = static_cast<int>(s);
    }
  }
  if (best_single >= 0 && best_single_value > set_value(picked) + 1e-12)
    picked = {static_cast<size_t>(best_single)};

  if (picked.empty()) return truncated_single("submodular", 0);
  return from_picked("submodular", picked);
}

Summary ArticleSummarizer::greedy_over_pool(const std::string& method,
                                            const std::vector<size_t>& pool) const {
  const int budget = options_.budget.max_words;
  std::vector<bool> covered(term_idf_.size(), false);
  std::vector<bool> taken(sentences_.size(), false);
  std::vector<size_t> picked;
  int used = 0;
  while (true) {
    double best_gain = 0.0;
    int best = -1;
    for (size_t s : pool) {
      if (taken[s] || word_counts_[s] == 0) continue;
      if (used + word_counts_[s] > budget) continue;
      double g = 0.0;
      for (const auto& [t, c] : term_counts_[s])
        if (!covered[t]) g += term_weight(t, c);
      if (g > best_gain + 1e-12) {
        best_gain = g;
        best = static_cast<int>(s);
      }
    }
    if (best < 0) break;
    taken[best] = true;
    picked.push_back(static_cast<size_t>(best));
    used += word_counts_[best];
    for (const auto& [t, c] : term_counts_[best]) covered[t] = true;
  }
  if (picked.empty()) return empty_summary(method);
  return from_picked(method, picked);
}

Summary ArticleSummarizer::greedy_tfidf() const {
  if (sentences_.empty()) return empty_summary("greedy_tfidf");
  std::vector<size_t> all(sentences_.size());
  std::iota(all.begin(), all.end(), 0);
  return greedy_over_pool("greedy_tfidf", all);
}

std::vector<size_t> ArticleSummarizer::exact_coverage_search(double* achieved_value) const {
  const int budget = options_.budget.max_words;
  const size_t n = sentences_.size();

  // candidate sentences with any weight and within budget
  std::vector<size_t> items;
  for (size_t s = 0; s < n; ++s)
    if (word_counts_[s] > 0 && word_counts_[s] <= budget) items.push_back(s);

  // density order improves pruning
  auto single_value = [&](size_t s) {
    double v = 0.0;
    for (const auto& [t, c] : term_counts_[s]) v += term_idf_[t];
    return v;
  };
  std::stable_sort(items.begin(), items.end(), [&](size_t a, size_t b) {
    return single_value(a) / word_counts_[a] > single_value(b) / word_counts_[b];
  });

  std::vector<int> cover_count(term_idf_.size(), 0);
  std::vector<size_t> current, best;
  double current_value = 0.0, best_value = 0.0;

  // upper bound: current value plus idf mass of uncovered terms reachable
  // from the remaining items
  auto bound = [&](size_t from) {
    std::vector<bool> seen(term_idf_.size(), false);
    double extra = 0.0;
    for (size_t k = from; k < items.size(); ++k)
      for (const auto& [t, c] : term_counts_[items[k]])
        if (!seen[t] && cover_count[t] == 0) {
          seen[t] = true;
          extra += term_idf_[t];
        }
    return current_value + extra;
  };

  std::function<void(size_t, int)> dfs = [&](size_t i, int used) {
    if (current_value > best_value + 1e-12) {
      best_value = current_value;
      best = current;
    }
    if (i >= items.size()) return;
    if (bound(i) <= best_value + 1e-12) return;

    const size_t s = items[i];
    if (used + word_counts_[s] <= budget) {
      double added = 0.0;
      for (const auto& [t, c] : term_counts_[s]) {
        if (cover_count[t] == 0) added += term_idf_[t];
        ++cover_count[t];
      }
      current.push_back(s);
      current_value += added;
      dfs(i + 1, used + word_counts_[s]);
      current_value -= added;
      current.pop_back();
      for (const auto& [t, c] : term_counts_[s]) --cover_count[t];
    }
    dfs(i + 1, used);
  };
  dfs(0, 0);

  if (achieved_value) *achieved_value = best_value;
  std::sort(best.begin(), best.end());
  return best;
}

Summary ArticleSummarizer::ilp_budget() const {
  if (sentences_.empty()) return empty_summary("ilp_budget");
  int total_words = 0;
  for (int wc : word_counts_) total_words += wc;
  if (total_words <= options_.budget.max_words) {
    std::vector<size_t> all(sentences_.size());
    std::iota(all.begin(), all.end(), 0);
    return from_picked("ilp_budget", all);
  }
  if (static_cast<int>(sentences_.size()) > options_.ilp_sentence_cap) {
    Summary s = submodular();
    s.method = "ilp_budget";
    s.approximate = true;
    return s;
  }
  const auto picked = exact_coverage_search(nullptr);
  return from_picked("ilp_budget", picked);
}

Summary ArticleSummarizer::score_ilp_tfidf() const {
  if (sentences_.empty()) return empty_summary("score_ilp_tfidf");
  // capacities beyond the article length are equivalent to its total
  int total_words = 0;
  for (int wc : word_counts_) total_words += wc;
  const int budget = std::min(options_.budget.max_words, total_words);
  const size_t n = sentences_.size();
  const auto values = sentence_values();

  // 0/1 knapsack over word counts; ties resolved toward not taking, which
  // keeps zero-value sentences out
  std::vector<double> dp(static_cast<size_t>(budget) + 1, 0.0);
  std::vector<std::vector<bool>> take(n, std::vector<bool>(budget + 1, false));
  for (size_t i = 0; i < n; ++i) {
    const int wc = word_counts_[i];
    if (wc <= 0 || wc > budget) continue;
    for (int w = budget; w >= wc; --w) {
      const double candidate = dp[w - wc] + values[i];
      if (candidate > dp[w] + 1e-12) {
        dp[w] = candidate;
        take[i][w] = true;
      }
    }
  }

  std::vector<size_t> picked;
  int w = budget;
  for (size_t i = n; i-- > 0;) {
    if (w >= 0 && take[i][w]) {
      picked.push_back(i);
      w -= word_counts_[i];
    }
  }
  std::sort(picked.begin(), picked.end());
  return from_picked("score_ilp_tfidf", picked);
}

Summary ArticleSummarizer::title_reduction() const {
  if (sentences_.empty()) return empty_summary("title_reduction");
  const auto title_stems_vec = preproc_->tokenize(title_).content_stems;
  const std::set<std::string> title_stems(title_stems_vec.begin(),
                                          title_stems_vec.end());
  std::vector<size_t> pool;
  if (!title_stems.empty()) {
    for (size_t s = 0; s < sentences_.size(); ++s) {
      for (const auto& stem : content_stems_[s]) {
        if (title_stems.count(stem)) {
          pool.push_back(s);
          break;
        }
      }
    }
  }
  if (pool.empty()) {
    std::vector<size_t> all(sentences_.size());
    std::iota(all.begin(), all.end(), 0);
    return greedy_over_pool("title_reduction", all);
  }

  // re-run the greedy over the reduced document with idf recomputed there
  Article reduced;
  reduced.id = article_id_;
  reduced.title = title_;
  std::vector<std::string> pool_sentences;
  for (size_t s : pool) pool_sentences.push_back(sentences_[s]);
  reduced.body = join_with_space(pool_sentences);
  reduced.sentences = pool_sentences;
  ArticleSummarizer inner(reduced, *preproc_, options_);
  Summary s = inner.greedy_tfidf();
  s.method = "title_reduction";
  for (int& p : s.picked) p = static_cast<int>(pool[static_cast<size_t>(p - 1)]) + 1;
  return s;
}

Summary ArticleSummarizer::run(const std::string& method,
                               const TfidfIndex* corpus_index) const {
  if (method == "lead") return lead();
  if (method == "centroid") return centroid(corpus_index);
  if (method == "lexrank") return lexrank();
  if (method == "textrank") return textrank();
  if (method == "submodular") return submodular();
  if (method == "greedy_tfidf") return greedy_tfidf();
  if (method == "ilp_budget") return ilp_budget();
  if (method == "score_ilp_tfidf") return score_ilp_tfidf();
  if (method == "title_reduction") return title_reduction();
  throw std::invalid_argument("unknown summarizer: " + method);
}

const std::vector<std::string>& ArticleSummarizer::method_names() {
  static const std::vector<std::string> names = {
      "lead",         "centroid",   "lexrank",         "textrank",
      "submodular",   "greedy_tfidf", "ilp_budget",    "score_ilp_tfidf",
      "title_reduction"};
  return names;
}

std::vector<std::vector<std::uint32_t>> ArticleSummarizer::sentence_term_sets() const {
  std::vector<std::vector<std::uint32_t>> sets(term_counts_.size());
  for (size_t i = 0; i < term_counts_.size(); ++i)
    for (const auto& [t, c] : term_counts_[i]) sets[i].push_back(t);
  return sets;
}

std::vector<double> ArticleSummarizer::sentence_values() const {
  std::vector<double> values(term_counts_.size(), 0.0);
  for (size_t i = 0; i < term_counts_.size(); ++i)
    for (const auto& [t, c] : term_counts_[i]) values[i] += term_weight(t, c);
  return values;
}

Summary tweets_as_summary(const std::string& article_id,
                          std::vector<TweetSummaryInput> posts, int threshold,
                          const Preprocessor& preproc) {
  Summary s;
  s.article_id = article_id;
  s.method = "tweets_min_rel_" + std::to_string(threshold);

  std::sort(posts.begin(), posts.end(),
            [](const TweetSummaryInput& a, const TweetSummaryInput& b) {
              if (a.probability != b.probability) return a.probability > b.probability;
              return a.post_id < b.post_id;
            });
  std::unordered_set<std::string> seen;
  std::vector<std::string> parts;
  for (const auto& post : posts) {
    if (post.final < threshold) continue;
    if (!seen.insert(post.text).second) continue;
    parts.push_back(post.text);
  }
  s.text = join_with_space(parts);
  s.word_count = static_cast<int>(preproc.tokenize(s.text).tokens.size());
  return s;
}

}  // namespace newslink
