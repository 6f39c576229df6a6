#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace newslink::cli {

struct IngestArgs {
  std::string posts_path;
  std::string articles_path;
  std::string posts_format;     // "", "jsonl" or "csv"
  std::string articles_format;
  std::string keywords_path;
  std::string stopwords_path;
  std::string abbreviations_path;
  std::string out_dir;
  int min_chars = 1000;
  int min_sentences = 10;
  bool no_ascii_filter = false;
};

struct LinkArgs {
  std::string posts_path;
  std::string articles_path;
  std::string labels_path;    // optional
  std::string index_in_path;  // optional: reuse a saved TFIDF index
  std::string stopwords_path;
  std::string abbreviations_path;
  std::string wordnet_dir;  // optional; env NEWSLINK_WORDNET_DIR fallback
  std::string out_dir;
  int top_k = 100;
  std::uint64_t seed = 0;
};

struct SummarizeArgs {
  std::string articles_path;
  std::string stopwords_path;
  std::string abbreviations_path;
  std::string out_dir;
  std::vector<std::string> methods;  // empty = all
  int budget = 100;
  double lexrank_threshold = 0.1;
  double damping = 0.85;
  double redundancy_cutoff = 0.95;
  int ilp_cap = 25;
  std::uint64_t seed = 0;  // recorded; summarizers are deterministic
};

struct ClusterArgs {
  std::string posts_path;
  std::string stopwords_path;
  std::string out_dir;
  int k = 15;
  double alpha = 0.1;
  double beta = 0.1;
  int iters = 50;
  std::uint64_t seed = 0;
};

struct EvaluateArgs {
  std::string articles_path;
  std::string annotations_path;
  std::string summaries_path;   // summaries.jsonl from `summarize`
  std::string rankings_path;    // optional, from `link`
  std::string labels_path;      // optional
  std::string posts_path;       // optional, for tweet summaries
  std::string stopwords_path;
  std::string abbreviations_path;
  std::string out_dir;
  int min_freq = 2;
  bool rouge_no_stem = false;
  bool rouge_remove_stopwords = false;
};

struct ReportArgs {
  std::string in_dir;   // directory holding earlier artifacts
  std::string out_dir;
};

int run_ingest(const IngestArgs& args);
int run_link(const LinkArgs& args);
int run_summarize(const SummarizeArgs& args);
int run_cluster(const ClusterArgs& args);
int run_evaluate(const EvaluateArgs& args);
int run_report(const ReportArgs& args);

}  // namespace newslink::cli
