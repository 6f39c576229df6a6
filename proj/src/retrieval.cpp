#include "newslink/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace newslink {
namespace {

using nlohmann::json;

SparseVec normalize(SparseVec v) {
  double norm_sq = 0.0;
  for (const auto& [id, w] : v) norm_sq += w * w;
  if (norm_sq <= 0.0) return {};
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& [id, w] : v) w *= inv;
  return v;
}

}  // namespace

double dot(const SparseVec& a, const SparseVec& b) {
  double sum = 0.0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) ++i;
    else if (a[i].first > b[j].first) ++j;
    else {
      sum += a[i].second * b[j].second;
      ++i;
      ++j;
    }
  }
  return sum;
}

double cosine(const SparseVec& a, const SparseVec& b) {
  if (a.empty() || b.empty()) return 0.0;
  return dot(a, b);
}

TfidfIndex TfidfIndex::build(const std::vector<DocInput>& docs) {
  if (docs.empty()) throw std::invalid_argument("build_index: no documents");

  TfidfIndex index;
  index.doc_ids_.reserve(docs.size());

  // term ids in first-seen order
  std::vector<std::map<std::uint32_t, int>> doc_tfs;
  doc_tfs.reserve(docs.size());
  for (const auto& doc : docs) {
    index.doc_ids_.push_back(doc.id);
    std::map<std::uint32_t, int> tf;
    for (const auto& term : doc.terms) {
      auto [it, inserted] =
          index.vocabulary_.emplace(term, static_cast<std::uint32_t>(index.terms_.size()));
      if (inserted) index.terms_.push_back(term);
      ++tf[it->second];
    }
    doc_tfs.push_back(std::move(tf));
  }

  index.df_.assign(index.terms_.size(), 0);
  for (const auto& tf : doc_tfs)
    for (const auto& [term_id, count] : tf) ++index.df_[term_id];

  const double n_docs = static_cast<double>(docs.size());
  index.vectors_.reserve(docs.size());
  for (const auto& tf : doc_tfs) {
    SparseVec vec;
    vec.reserve(tf.size());
    for (const auto& [term_id, count] : tf) {
      const double idf = std::log(n_docs / index.df_[term_id]);
      const double w = (1.0 + std::log(static_cast<double>(count))) * idf;
      if (w > 0.0) vec.emplace_back(term_id, w);
    }
    index.vectors_.push_back(normalize(std::move(vec)));
  }
  return index;
}

std::optional<size_t> TfidfIndex::doc_position(const std::string& id) const {
  for (size_t i = 0; i < doc_ids_.size(); ++i)
    if (doc_ids_[i] == id) return i;
  return std::nullopt;
}

SparseVec TfidfIndex::vectorize(const std::vector<std::string>& terms) const {
  std::map<std::uint32_t, int> tf;
  for (const auto& term : terms) {
    auto it = vocabulary_.find(term);
    if (it != vocabulary_.end()) ++tf[it->second];
  }
  SparseVec vec;
  vec.reserve(tf.size());
  const double n_docs = static_cast<double>(doc_ids_.size());
  for (const auto& [term_id, count] : tf) {
    const double idf = std::log(n_docs / df_[term_id]);
    const double w = (1.0 + std::log(static_cast<double>(count))) * idf;
    if (w > 0.0) vec.emplace_back(term_id, w);
  }
  return normalize(std::move(vec));
}

std::vector<ScoredDoc> TfidfIndex::top_k(const std::vector<std::string>& query_terms,
                                         size_t k) const {
  const SparseVec query = vectorize(query_terms);
  std::vector<ScoredDoc> scored;
  if (query.empty()) return scored;
  for (size_t i = 0; i < vectors_.size(); ++i) {
    const double score = cosine(query, vectors_[i]);
    if (score > 0.0) scored.push_back({doc_ids_[i], score});
  }
  std::sort(scored.begin(), scored.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

void TfidfIndex::save(const std::string& path) const {
  json j;
  j["doc_ids"] = doc_ids_;
  j["terms"] = terms_;
  j["df"] = df_;
  json vecs = json::array();
  for (const auto& vec : vectors_) {
    json v = json::array();
    for (const auto& [id, w] : vec) v.push_back({id, w});
    vecs.push_back(std::move(v));
  }
  j["vectors"] = std::move(vecs);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write index: " + path);
  out << j.dump() << '\n';
}

TfidfIndex TfidfIndex::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open index: " + path);
  json j;
  in >> j;
  TfidfIndex index;
  index.doc_ids_ = j.at("doc_ids").get<std::vector<std::string>>();
  index.terms_ = j.at("terms").get<std::vector<std::string>>();
  index.df_ = j.at("df").get<std::vector<std::uint32_t>>();
  for (size_t i = 0; i < index.terms_.size(); ++i)
    index.vocabulary_.emplace(index.terms_[i], static_cast<std::uint32_t>(i));
  for (const auto& v : j.at("vectors")) {
    SparseVec vec;
    for (const auto& entry : v)
      vec.emplace_back(entry[0].get<std::uint32_t>(), entry[1].get<double>());
    index.vectors_.push_back(std::move(vec));
  }
  if (index.vectors_.size() != index.doc_ids_.size())
    throw std::runtime_error("corrupt index file: " + path);
  return index;
}

}  // namespace newslink
