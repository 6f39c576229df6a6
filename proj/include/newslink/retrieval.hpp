#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace newslink {

// Sparse vector sorted by term id.
using SparseVec = std::vector<std::pair<std::uint32_t, double>>;

double dot(const SparseVec& a, const SparseVec& b);

// Cosine of two L2-normalized vectors; 0 when either is empty.
double cosine(const SparseVec& a, const SparseVec& b);

struct ScoredDoc {
  std::string id;
  double score = 0.0;
};

// TFIDF vector-space index. Weights are (1 + ln tf) * ln(N / df), vectors
// L2-normalized; terms present in every document get weight 0. Immutable
// after build.
class TfidfIndex {
 public:
  struct DocInput {
    std::string id;
    std::vector<std::string> terms;  // preprocessed stems
  };

  TfidfIndex() = default;
  static TfidfIndex build(const std::vector<DocInput>& docs);

  size_t doc_count() const { return doc_ids_.size(); }
  size_t vocab_size() const { return vocabulary_.size(); }
  const std::string& doc_id(size_t i) const { return doc_ids_[i]; }
  const SparseVec& doc_vector(size_t i) const { return vectors_[i]; }
  std::optional<size_t> doc_position(const std::string& id) const;

  // Weighs a term multiset with this index's idf; unknown terms are dropped.
  // Result is L2-normalized (possibly empty).
  SparseVec vectorize(const std::vector<std::string>& terms) const;

  // Documents with positive cosine to the query, sorted by score descending,
  // ties broken by id ascending, truncated to k.
  std::vector<ScoredDoc> top_k(const std::vector<std::string>& query_terms,
                               size_t k) const;

  void save(const std::string& path) const;
  static TfidfIndex load(const std::string& path);

 private:
  std::unordered_map<std::string, std::uint32_t> vocabulary_;
  std::vector<std::string> terms_;       // id -> term
  std::vector<std::uint32_t> df_;
  std::vector<std::string> doc_ids_;
  std::vector<SparseVec> vectors_;
};

}  // namespace newslink
