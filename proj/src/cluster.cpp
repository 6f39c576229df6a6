#include "newslink/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace newslink {
namespace {

// Portable uniform double in [0,1); uniform_real_distribution is not pinned
// across standard libraries.
double next_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

struct Doc {
  std::vector<std::pair<std::uint32_t, int>> term_counts;
  int length = 0;
};

}  // namespace

namespace gsdmm_detail {

void add_to_cluster(ClusterState& state, size_t doc,
                    const std::vector<std::pair<std::uint32_t, int>>& term_counts,
                    int doc_length, int k) {
  state.assignments[doc] = k;
  state.docs_per_cluster[k] += 1;
  state.words_per_cluster[k] += doc_length;
  for (const auto& [t, c] : term_counts) state.word_counts[k][t] += c;
}

void remove_from_cluster(ClusterState& state, size_t doc,
                         const std::vector<std::pair<std::uint32_t, int>>& term_counts,
                         int doc_length) {
  const int k = state.assignments[doc];
  state.docs_per_cluster[k] -= 1;
  state.words_per_cluster[k] -= doc_length;
  auto& counts = state.word_counts[k];
  for (const auto& [t, c] : term_counts) {
    auto it = counts.find(t);
    it->second -= c;
    if (it->second == 0) counts.erase(it);
  }
}

}  // namespace gsdmm_detail

ClusterState gsdmm_fit(
    const std::vector<std::vector<std::string>>& docs, const GsdmmConfig& config,
    const std::function<void(const ClusterState&, int)>& on_sweep) {
  if (config.num_clusters < 1) throw std::invalid_argument("K must be >= 1");
  if (config.alpha <= 0.0 || config.beta <= 0.0)
    throw std::invalid_argument("alpha and beta must be positive");
  if (config.iterations < 1) throw std::invalid_argument("iterations must be >= 1");

  ClusterState state;
  const int k_max = config.num_clusters;
  state.docs_per_cluster.assign(k_max, 0);
  state.words_per_cluster.assign(k_max, 0);
  state.word_counts.assign(k_max, {});
  state.assignments.assign(docs.size(), 0);

  std::unordered_map<std::string, std::uint32_t> vocab;
  std::vector<Doc> compact(docs.size());
  for (size_t d = 0; d < docs.size(); ++d) {
    std::unordered_map<std::uint32_t, int> counts;
    for (const auto& word : docs[d]) {
      auto [it, inserted] = vocab.emplace(word, static_cast<std::uint32_t>(vocab.size()));
      if (inserted) state.vocab.push_back(word);
      ++counts[it->second];
    }
    compact[d].term_counts.assign(counts.begin(), counts.end());
    std::sort(compact[d].term_counts.begin(), compact[d].term_counts.end());
    compact[d].length = static_cast<int>(docs[d].size());
  }

  const double v_beta = static_cast<double>(state.vocab.size()) * config.beta;
  std::mt19937_64 gen(config.seed);

  auto add_doc = [&](size_t d, int k) {
    gsdmm_detail::add_to_cluster(state, d, compact[d].term_counts, compact[d].length, k);
  };
  auto remove_doc = [&](size_t d) {
    gsdmm_detail::remove_from_cluster(state, d, compact[d].term_counts,
                                      compact[d].length);
  };

  for (size_t d = 0; d < docs.size(); ++d)
    add_doc(d, static_cast<int>(gen() % static_cast<std::uint64_t>(k_max)));

  std::vector<double> log_p(k_max);
  std::vector<double> p(k_max);
  for (int sweep = 0; sweep < config.iterations; ++sweep) {
    for (size_t d = 0; d < docs.size(); ++d) {
      remove_doc(d);

      for (int k = 0; k < k_max; ++k) {
        double lp = std::log(state.docs_per_cluster[k] + config.alpha);
        const auto& counts = state.word_counts[k];
        for (const auto& [t, c] : compact[d].term_counts) {
          auto it = counts.find(t);
          const double base = (it == counts.end() ? 0.0 : it->second) + config.beta;
          for (int j = 0; j < c; ++j) lp += std::log(base + j);
        }
        const double denom_base = static_cast<double>(state.words_per_cluster[k]) + v_beta;
        for (int i = 0; i < compact[d].length; ++i) lp -= std::log(denom_base + i);
        log_p[k] = lp;
      }

      const double max_lp = *std::max_element(log_p.begin(), log_p.end());
      double total = 0.0;
      for (int k = 0; k < k_max; ++k) {
        p[k] = std::exp(log_p[k] - max_lp);
        total += p[k];
      }
      double check = 0.0;
      for (int k = 0; k < k_max; ++k) {
        p[k] /= total;
        check += p[k];
      }
      if (std::fabs(check - 1.0) > 1e-9)
        throw std::logic_error("sampling distribution does not normalize");

      const double u = next_uniform(gen);
      double cum = 0.0;
      int chosen = k_max - 1;
      for (int k = 0; k < k_max; ++k) {
        cum += p[k];
        if (u < cum) {
          chosen = k;
          break;
        }
      }
      add_doc(d, chosen);
    }
#ifndef NDEBUG
    check_state_invariants(state);
#endif
    if (on_sweep) on_sweep(state, sweep);
  }
  return state;
}

void check_state_invariants(const ClusterState& state) {
  std::int64_t doc_total = 0;
  for (size_t k = 0; k < state.docs_per_cluster.size(); ++k) {
    const int m = state.docs_per_cluster[k];
    if (m < 0) throw std::logic_error("negative cluster document count");
    doc_total += m;
    std::int64_t word_total = 0;
    for (const auto& [t, c] : state.word_counts[k]) {
      if (c < 0) throw std::logic_error("negative word count");
      word_total += c;
    }
    if (word_total != state.words_per_cluster[k])
      throw std::logic_error("word counts disagree with cluster totals");
    if (state.words_per_cluster[k] < 0)
      throw std::logic_error("negative cluster word total");
  }
  if (doc_total != static_cast<std::int64_t>(state.assignments.size()))
    throw std::logic_error("cluster document counts do not sum to D");
}

ClusterSizeStats cluster_stats(const ClusterState& state) {
  ClusterSizeStats stats;
  std::vector<int> sizes;
  for (int m : state.docs_per_cluster)
    if (m > 0) sizes.push_back(m);
  if (sizes.empty()) return stats;

  stats.nonempty_clusters = sizes.size();
  stats.min_size = *std::min_element(sizes.begin(), sizes.end());
  stats.max_size = *std::max_element(sizes.begin(), sizes.end());
  double sum = 0.0;
  for (int s : sizes) sum += s;
  stats.mean_size = sum / static_cast<double>(sizes.size());

  std::unordered_map<int, int> freq;
  for (int s : sizes) ++freq[s];
  int best_count = 0, best_size = 0;
  std::sort(sizes.begin(), sizes.end());
  for (int s : sizes) {
    const int c = freq[s];
    if (c > best_count) {  // ties keep the smaller size (first seen)
      best_count = c;
      best_size = s;
    }
  }
  stats.mode_size = best_size;
  return stats;
}

std::vector<std::pair<std::string, int>> top_terms(const ClusterState& state,
                                                   int k, size_t n) {
  if (k < 0 || k >= static_cast<int>(state.word_counts.size()))
    throw std::out_of_range("cluster index out of range");
  std::vector<std::pair<std::string, int>> terms;
  for (const auto& [t, c] : state.word_counts[k])
    if (c > 0) terms.emplace_back(state.vocab[t], c);
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (terms.size() > n) terms.resize(n);
  return terms;
}

}  // namespace newslink
