#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using namespace newslink::cli;

void add_text_options(CLI::App* cmd, std::string* stopwords, std::string* abbreviations) {
  cmd->add_option("--stopwords", *stopwords, "newline-delimited stopword list");
  cmd->add_option("--abbreviations", *abbreviations,
                  "abbreviation guard list for sentence splitting");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"newslink: link social-media posts to news articles, summarize, "
               "cluster and evaluate"};
  app.require_subcommand(1);
  app.set_config("--config", "", "declarative config file; flags win");

  IngestArgs ingest;
  {
    CLI::App* cmd = app.add_subcommand("ingest",
                                       "load posts/articles, filter, report stats");
    cmd->add_option("--posts", ingest.posts_path, "posts file (jsonl or csv)")
        ->required();
    cmd->add_option("--articles", ingest.articles_path, "articles file (jsonl or csv)")
        ->required();
    cmd->add_option("--posts-format", ingest.posts_format, "jsonl|csv");
    cmd->add_option("--articles-format", ingest.articles_format, "jsonl|csv");
    cmd->add_option("--keywords", ingest.keywords_path, "disaster keyword list");
    add_text_options(cmd, &ingest.stopwords_path, &ingest.abbreviations_path);
    cmd->add_option("--min-chars", ingest.min_chars, "minimum article characters");
    cmd->add_option("--min-sentences", ingest.min_sentences,
                    "minimum article sentences");
    cmd->add_flag("--no-ascii-filter", ingest.no_ascii_filter,
                  "keep articles with non-ASCII content");
    cmd->add_option("--out", ingest.out_dir, "output directory")->required();
  }

  LinkArgs link;
  {
    CLI::App* cmd = app.add_subcommand("link", "pair features, training and ranking");
    cmd->add_option("--posts", link.posts_path)->required();
    cmd->add_option("--articles", link.articles_path)->required();
    cmd->add_option("--labels", link.labels_path,
                    "CSV post_id,article_id,label1,label2");
    cmd->add_option("--index-in", link.index_in_path,
                    "reuse a saved index.json instead of rebuilding");
    add_text_options(cmd, &link.stopwords_path, &link.abbreviations_path);
    cmd->add_option("--wordnet", link.wordnet_dir,
                    "WordNet database dir (or NEWSLINK_WORDNET_DIR)");
    cmd->add_option("--top-k", link.top_k, "candidate articles per post");
    cmd->add_option("--seed", link.seed, "undersampling / training seed");
    cmd->add_option("--out", link.out_dir)->required();
  }

  SummarizeArgs summarize;
  {
    CLI::App* cmd = app.add_subcommand("summarize", "run the extractive summarizers");
    cmd->add_option("--articles", summarize.articles_path)->required();
    add_text_options(cmd, &summarize.stopwords_path, &summarize.abbreviations_path);
    cmd->add_option("--methods", summarize.methods,
                    "summarizers to run (default: all)");
    cmd->add_option("--budget", summarize.budget, "word budget");
    cmd->add_option("--lexrank-threshold", summarize.lexrank_threshold);
    cmd->add_option("--damping", summarize.damping);
    cmd->add_option("--redundancy-cutoff", summarize.redundancy_cutoff);
    cmd->add_option("--ilp-cap", summarize.ilp_cap,
                    "sentence cap for the exact solver");
    cmd->add_option("--seed", summarize.seed);
    cmd->add_option("--out", summarize.out_dir)->required();
  }

  ClusterArgs cluster;
  {
    CLI::App* cmd = app.add_subcommand("cluster", "GSDMM event clustering of posts");
    cmd->add_option("--posts", cluster.posts_path)->required();
    cmd->add_option("--stopwords", cluster.stopwords_path);
    cmd->add_option("--k", cluster.k, "cluster count upper bound");
    cmd->add_option("--alpha", cluster.alpha);
    cmd->add_option("--beta", cluster.beta);
    cmd->add_option("--iters", cluster.iters);
    cmd->add_option("--seed", cluster.seed);
    cmd->add_option("--out", cluster.out_dir)->required();
  }

  EvaluateArgs evaluate;
  {
    CLI::App* cmd = app.add_subcommand("evaluate", "score summaries and linked pairs");
    cmd->add_option("--articles", evaluate.articles_path)->required();
    cmd->add_option("--annotations", evaluate.annotations_path,
                    "summary annotations jsonl")
        ->required();
    cmd->add_option("--summaries", evaluate.summaries_path,
                    "summaries.jsonl from `summarize`")
        ->required();
    cmd->add_option("--rankings", evaluate.rankings_path, "rankings.csv from `link`");
    cmd->add_option("--labels", evaluate.labels_path);
    cmd->add_option("--posts", evaluate.posts_path);
    add_text_options(cmd, &evaluate.stopwords_path, &evaluate.abbreviations_path);
    cmd->add_option("--min-freq", evaluate.min_freq,
                    "minimum count for frequency exports");
    cmd->add_flag("--rouge-no-stem", evaluate.rouge_no_stem);
    cmd->add_flag("--rouge-remove-stopwords", evaluate.rouge_remove_stopwords);
    cmd->add_option("--out", evaluate.out_dir)->required();
  }

  ReportArgs report;
  {
    CLI::App* cmd = app.add_subcommand("report", "human-readable tables from artifacts");
    cmd->add_option("--in", report.in_dir, "directory with earlier artifacts")
        ->required();
    cmd->add_option("--out", report.out_dir)->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand("ingest")) return run_ingest(ingest);
    if (app.got_subcommand("link")) return run_link(link);
    if (app.got_subcommand("summarize")) return run_summarize(summarize);
    if (app.got_subcommand("cluster")) return run_cluster(cluster);
    if (app.got_subcommand("evaluate")) return run_evaluate(evaluate);
    if (app.got_subcommand("report")) return run_report(report);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 2;
}
