#include "newslink/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace newslink {
namespace {

std::unordered_map<std::string, int> ngram_counts(const std::vector<std::string>& tokens,
                                                  int n) {
  std::unordered_map<std::string, int> counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string gram = tokens[i];
    for (int j = 1; j < n; ++j) {
      gram.push_back(' ');
      gram += tokens[i + j];
    }
    ++counts[gram];
  }
  return counts;
}

size_t total_count(const std::unordered_map<std::string, int>& counts) {
  size_t total = 0;
  for (const auto& [g, c] : counts) total += static_cast<size_t>(c);
  return total;
}

}  // namespace

RougeScore rouge_n(const std::vector<std::string>& peer_tokens,
                   const std::vector<std::vector<std::string>>& reference_token_lists,
                   int n) {
  RougeScore score;
  score.n = n;
  if (reference_token_lists.empty()) return score;

  const auto peer_grams = ngram_counts(peer_tokens, n);
  const size_t peer_total = total_count(peer_grams);

  bool first = true;
  double sum_p = 0.0, sum_r = 0.0, sum_f = 0.0;
  for (const auto& ref_tokens : reference_token_lists) {
    const auto ref_grams = ngram_counts(ref_tokens, n);
    const size_t ref_total = total_count(ref_grams);

    size_t matched = 0;
    for (const auto& [gram, count] : peer_grams) {
      auto it = ref_grams.find(gram);
      if (it != ref_grams.end())
        matched += static_cast<size_t>(std::min(count, it->second));
    }
    const double p = peer_total == 0
                         ? 0.0
                         : static_cast<double>(matched) / static_cast<double>(peer_total);
    const double r = ref_total == 0
                         ? 0.0
                         : static_cast<double>(matched) / static_cast<double>(ref_total);
    const double f = (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
    sum_p += p;
    sum_r += r;
    sum_f += f;
    if (first || f > score.f1) {
      score.precision = p;
      score.recall = r;
      score.f1 = f;
      first = false;
    }
  }
  const double k = static_cast<double>(reference_token_lists.size());
  score.mean_precision = sum_p / k;
  score.mean_recall = sum_r / k;
  score.mean_f1 = sum_f / k;
  return score;
}

std::vector<std::string> rouge_tokens(const std::string& text,
                                      const Preprocessor& preproc,
                                      const RougeOptions& options) {
  const TokenizedText tt = preproc.tokenize(text);
  const auto& base = options.remove_stopwords
                         ? (options.stem ? tt.content_stems : tt.content_tokens)
                         : (options.stem ? tt.stems : tt.tokens);
  return base;
}

RougeScore rouge_n_text(const std::string& peer,
                        const std::vector<std::string>& references, int n,
                        const Preprocessor& preproc, const RougeOptions& options) {
  std::vector<std::vector<std::string>> ref_tokens;
  ref_tokens.reserve(references.size());
  for (const auto& ref : references)
    ref_tokens.push_back(rouge_tokens(ref, preproc, options));
  return rouge_n(rouge_tokens(peer, preproc, options), ref_tokens, n);
}

RougeScore recall_ceiling(const Article& article,
                          const std::vector<std::string>& references, int n,
                          const Preprocessor& preproc, const RougeOptions& options) {
  return rouge_n_text(article.body, references, n, preproc, options);
}

WordSet WordSet::from_tokens(const std::vector<std::string>& tokens) {
  WordSet ws;
  for (const auto& t : tokens) {
    ws.elements.insert(t);
    ++ws.counts[t];
  }
  return ws;
}

WordSet WordSet::from_text(const std::string& text, const Preprocessor& preproc) {
  return from_tokens(preproc.tokenize(text).content_stems);
}

double jaccard(const WordSet& a, const WordSet& b) {
  if (a.elements.empty() && b.elements.empty()) return 1.0;
  size_t intersection = 0;
  for (const auto& e : a.elements)
    if (b.elements.count(e)) ++intersection;
  const size_t uni = a.elements.size() + b.elements.size() - intersection;
  return static_cast<double>(intersection) / static_cast<double>(uni);
}

std::pair<double, double> uniq(const WordSet& a, const WordSet& b) {
  size_t intersection = 0;
  for (const auto& e : a.elements)
    if (b.elements.count(e)) ++intersection;
  const double uniq_ab =
      a.elements.empty()
          ? 0.0
          : static_cast<double>(a.elements.size() - intersection) /
                static_cast<double>(a.elements.size());
  const double uniq_ba =
      b.elements.empty()
          ? 0.0
          : static_cast<double>(b.elements.size() - intersection) /
                static_cast<double>(b.elements.size());
  return {uniq_ab, uniq_ba};
}

std::unordered_map<std::string, int> content_difference(
    const std::unordered_map<std::string, int>& a,
    const std::unordered_map<std::string, int>& b) {
  std::unordered_map<std::string, int> out;
  for (const auto& [word, count] : a)
    if (!b.count(word)) out.emplace(word, count);
  return out;
}

std::vector<AnnotatorPairRow> annotator_jaccard_table(
    const std::vector<SummaryAnnotation>& annotations, const Preprocessor& preproc) {
  // article -> (annotator -> abstractive)
  std::map<std::string, std::map<std::string, const SummaryAnnotation*>> by_article;
  for (const auto& ann : annotations)
    by_article[ann.article_id][ann.annotator] = &ann;

  std::map<std::pair<std::string, std::string>, std::pair<double, size_t>> pair_acc;
  std::set<std::string> paired, seen;
  for (const auto& [article_id, annotators] : by_article) {
    std::vector<std::pair<std::string, const SummaryAnnotation*>> list(
        annotators.begin(), annotators.end());
    for (const auto& [name, ann] : list) seen.insert(name);
    for (size_t i = 0; i < list.size(); ++i) {
      for (size_t j = i + 1; j < list.size(); ++j) {
        const double score =
            jaccard(WordSet::from_text(list[i].second->abstractive, preproc),
                    WordSet::from_text(list[j].second->abstractive, preproc));
        auto key = std::make_pair(list[i].first, list[j].first);
        pair_acc[key].first += score;
        pair_acc[key].second += 1;
        paired.insert(list[i].first);
        paired.insert(list[j].first);
      }
    }
  }

  std::vector<AnnotatorPairRow> rows;
  for (const auto& [key, acc] : pair_acc) {
    AnnotatorPairRow row;
    row.annotator_a = key.first;
    row.annotator_b = key.second;
    row.mean_jaccard = acc.first / static_cast<double>(acc.second);
    row.shared_docs = acc.second;
    rows.push_back(std::move(row));
  }
  for (const auto& name : seen) {
    if (paired.count(name)) continue;
    AnnotatorPairRow row;
    row.annotator_a = name;
    row.annotator_b = "-";
    rows.push_back(std::move(row));
  }
  return rows;
}

TimelinessReport timeliness_report(const std::vector<std::optional<double>>& distances) {
  TimelinessReport report;
  size_t before = 0;
  for (const auto& d : distances) {
    if (!d) {
      ++report.missing;
      continue;
    }
    ++report.counted;
    const long long bin = static_cast<long long>(std::floor(*d / 5.0));
    ++report.bins[bin];
    if (*d > 0.0) ++before;
  }
  if (report.counted > 0)
    report.pct_before =
        static_cast<double>(before) / static_cast<double>(report.counted);
  return report;
}

std::map<int, TimelinessReport> timeliness_by_label(
    const std::vector<std::pair<std::optional<double>, int>>& labeled_distances) {
  std::map<int, std::vector<std::optional<double>>> grouped;
  for (const auto& [distance, label] : labeled_distances)
    grouped[label].push_back(distance);
  std::map<int, TimelinessReport> reports;
  for (const auto& [label, distances] : grouped)
    reports.emplace(label, timeliness_report(distances));
  return reports;
}

std::vector<std::pair<std::string, int>> sorted_frequency_rows(
    const std::unordered_map<std::string, int>& counts, int min_freq) {
  std::vector<std::pair<std::string, int>> rows;
  for (const auto& [word, count] : counts)
    if (count >= min_freq) rows.emplace_back(word, count);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return rows;
}

std::vector<std::pair<std::string, int>> word_frequencies(
    const std::vector<std::string>& texts, int min_freq, const Preprocessor& preproc) {
  std::unordered_map<std::string, int> counts;
  for (const auto& text : texts)
    for (const auto& stem : preproc.tokenize(text).content_stems) ++counts[stem];
  return sorted_frequency_rows(counts, min_freq);
}

}  // namespace newslink
