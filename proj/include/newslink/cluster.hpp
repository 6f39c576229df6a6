#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

namespace newslink {

struct GsdmmConfig {
  int num_clusters = 15;  // upper bound; occupied clusters are emergent
  double alpha = 0.1;
  double beta = 0.1;
  int iterations = 50;
  std::uint64_t seed = 0;
};

// Assignments plus the collapsed sampler's sufficient statistics.
struct ClusterState {
  std::vector<int> assignments;                         // per document
  std::vector<int> docs_per_cluster;                    // m_k
  std::vector<std::int64_t> words_per_cluster;          // n_k
  std::vector<std::unordered_map<std::uint32_t, int>> word_counts;  // n_kw
  std::vector<std::string> vocab;                       // term id -> term

  size_t doc_count() const { return assignments.size(); }
  size_t vocab_size() const { return vocab.size(); }
};

// Collapsed Gibbs sampler for the Dirichlet multinomial mixture over short
// texts. Each document sits in exactly one cluster; per sweep it is removed
// from its cluster and reassigned from
//   p(z=k | rest) ~ (m_k + alpha)
//                   * prod_w prod_{j=1..c_w} (n_kw + beta + j - 1)
//                   / prod_{i=1..N_d} (n_k + V*beta + i - 1)
// evaluated in log space. Deterministic for a fixed seed. `on_sweep`, when
// set, observes the state after each completed sweep.
ClusterState gsdmm_fit(
    const std::vector<std::vector<std::string>>& docs, const GsdmmConfig& config,
    const std::function<void(const ClusterState&, int)>& on_sweep = {});

// Throws std::logic_error when the count invariants are violated.
void check_state_invariants(const ClusterState& state);

struct ClusterSizeStats {
  int min_size = 0;
  int max_size = 0;
  double mean_size = 0.0;
  int mode_size = 0;  // ties go to the smaller size
  size_t nonempty_clusters = 0;
};

ClusterSizeStats cluster_stats(const ClusterState& state);

// Terms of cluster k by count descending, ties lexicographic.
std::vector<std::pair<std::string, int>> top_terms(const ClusterState& state,
                                                   int k, size_t n);

namespace gsdmm_detail {

// Incremental count updates used by the sampler; exposed so the
// remove-then-re-add restoration property is testable directly.
void add_to_cluster(ClusterState& state, size_t doc,
                    const std::vector<std::pair<std::uint32_t, int>>& term_counts,
                    int doc_length, int k);
void remove_from_cluster(ClusterState& state, size_t doc,
                         const std::vector<std::pair<std::uint32_t, int>>& term_counts,
                         int doc_length);

}  // namespace gsdmm_detail

}  // namespace newslink
