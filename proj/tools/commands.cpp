#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "newslink/cluster.hpp"
#include "newslink/corpus.hpp"
#include "newslink/csv.hpp"
#include "newslink/evalkit.hpp"
#include "newslink/linker.hpp"
#include "newslink/manifest.hpp"
#include "newslink/parallel.hpp"
#include "newslink/retrieval.hpp"
#include "newslink/summarize.hpp"
#include "newslink/textproc.hpp"
#include "newslink/timeutil.hpp"
#include "newslink/wordnet.hpp"

namespace newslink::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void ensure_out_dir(const std::string& out_dir) {
  if (out_dir.empty()) throw std::runtime_error("--out directory is required");
  fs::create_directories(out_dir);
}

std::ofstream open_artifact(const std::string& out_dir, const std::string& name) {
  std::ofstream out(out_dir + "/" + name);
  if (!out) throw std::runtime_error("cannot write artifact: " + out_dir + "/" + name);
  return out;
}

FileFormat resolve_format(const std::string& explicit_format, const std::string& path) {
  if (!explicit_format.empty()) {
    auto f = parse_format(explicit_format);
    if (!f) throw std::runtime_error("unknown format: " + explicit_format);
    return *f;
  }
  auto f = parse_format(path);
  if (!f)
    throw std::runtime_error("cannot infer format (use --format): " + path);
  return *f;
}

json errors_to_json(const LoadReport& report) {
  json arr = json::array();
  for (const auto& e : report.errors)
    arr.push_back({{"line", e.line}, {"message", e.message}});
  return arr;
}

json post_to_json(const Post& post) {
  return json{{"id", post.id},
              {"text", post.text},
              {"created_at", format_iso8601(post.created_at)},
              {"author", post.author},
              {"hashtags", post.hashtags},
              {"mentions", post.mentions},
              {"urls", post.urls}};
}

json article_to_json(const Article& article) {
  json j{{"id", article.id},
         {"source", article.source},
         {"title", article.title},
         {"body", article.body},
         {"sentences", article.sentences}};
  if (article.published_at) j["published_at"] = format_iso8601(*article.published_at);
  return j;
}

LexicalDb load_wordnet(const std::string& flag_dir) {
  std::string dir = flag_dir;
  if (dir.empty()) {
    const char* env = std::getenv("NEWSLINK_WORDNET_DIR");
    if (env) dir = env;
  }
  if (dir.empty()) return {};
  return LexicalDb::load(dir);
}

struct RankingRow {
  std::string article_id;
  std::string post_id;
  double probability = 0.0;
  int rank = 0;
};

std::vector<RankingRow> read_rankings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open rankings: " + path);
  auto rows = csv::read_all(in);
  std::vector<RankingRow> out;
  for (size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() < 4) continue;
    RankingRow row;
    row.article_id = rows[r][0];
    row.post_id = rows[r][1];
    row.probability = std::atof(rows[r][2].c_str());
    row.rank = std::atoi(rows[r][3].c_str());
    out.push_back(std::move(row));
  }
  return out;
}

struct SummaryRow {
  std::string article_id;
  std::string method;
  std::string text;
};

std::vector<SummaryRow> read_summaries(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open summaries: " + path);
  std::vector<SummaryRow> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    out.push_back({j.at("article_id").get<std::string>(),
                   j.at("method").get<std::string>(),
                   j.at("text").get<std::string>()});
  }
  return out;
}

}  // namespace

int run_ingest(const IngestArgs& args) {
  ensure_out_dir(args.out_dir);
  const Preprocessor preproc =
      Preprocessor::from_files(args.stopwords_path, args.abbreviations_path);

  auto posts_result = load_posts(
      args.posts_path, resolve_format(args.posts_format, args.posts_path), preproc);
  auto articles_result = load_articles(
      args.articles_path, resolve_format(args.articles_format, args.articles_path),
      preproc);

  FilterOptions filter_options;
  filter_options.min_chars = args.min_chars;
  filter_options.min_sentences = args.min_sentences;
  filter_options.ascii_only = !args.no_ascii_filter;
  auto filtered = filter_articles(articles_result.articles, filter_options);

  {
    auto out = open_artifact(args.out_dir, "posts.jsonl");
    for (const auto& post : posts_result.posts) out << post_to_json(post).dump() << '\n';
  }
  {
    auto out = open_artifact(args.out_dir, "articles.jsonl");
    for (const auto& article : filtered.kept)
      out << article_to_json(article).dump() << '\n';
  }
  {
    json report{{"input_count", filtered.report.input_count},
                {"removed_non_ascii", filtered.report.removed_non_ascii},
                {"removed_min_chars", filtered.report.removed_min_chars},
                {"removed_min_sentences", filtered.report.removed_min_sentences},
                {"kept_count", filtered.report.kept_count}};
    auto out = open_artifact(args.out_dir, "filter_report.json");
    out << report.dump(2) << '\n';
  }
  {
    json errors{{"posts", errors_to_json(posts_result.report)},
                {"articles", errors_to_json(articles_result.report)}};
    auto out = open_artifact(args.out_dir, "load_errors.json");
    out << errors.dump(2) << '\n';
  }
  {
    std::vector<std::string> keywords;
    if (!args.keywords_path.empty()) keywords = load_keyword_list(args.keywords_path);
    const PostStats stats = descriptive_stats(posts_result.posts, keywords, preproc);
    json j{{"post_count", stats.post_count},
           {"unique_users", stats.unique_users},
           {"unique_words", stats.unique_words}};
    auto frac = [](const std::optional<double>& v) {
      return v ? json(*v) : json(nullptr);
    };
    j["frac_with_mentions"] = frac(stats.frac_with_mentions);
    j["frac_with_urls"] = frac(stats.frac_with_urls);
    j["frac_with_hashtags"] = frac(stats.frac_with_hashtags);
    j["frac_with_keyword"] = frac(stats.frac_with_keyword);
    auto out = open_artifact(args.out_dir, "post_stats.json");
    out << j.dump(2) << '\n';
  }

  Manifest manifest(args.out_dir);
  manifest.set_config("subcommand", "ingest");
  manifest.set_config("min_chars", std::to_string(args.min_chars));
  manifest.set_config("min_sentences", std::to_string(args.min_sentences));
  manifest.set_config("ascii_filter", args.no_ascii_filter ? "off" : "on");
  for (const char* name : {"posts.jsonl", "articles.jsonl", "filter_report.json",
                           "load_errors.json", "post_stats.json"})
    manifest.add(name);
  manifest.write();

  std::cout << "ingest: " << posts_result.posts.size() << " posts, "
            << filtered.kept.size() << "/" << filtered.report.input_count
            << " articles kept, " << posts_result.report.errors.size() << "+"
            << articles_result.report.errors.size() << " record errors\n";
  return 0;
}

int run_link(const LinkArgs& args) {
  ensure_out_dir(args.out_dir);
  const Preprocessor preproc =
      Preprocessor::from_files(args.stopwords_path, args.abbreviations_path);
  const LexicalDb lexdb = load_wordnet(args.wordnet_dir);

  auto posts_result =
      load_posts(args.posts_path, resolve_format("", args.posts_path), preproc);
  auto articles_result =
      load_articles(args.articles_path, resolve_format("", args.articles_path), preproc);
  const auto& posts = posts_result.posts;
  const auto& articles = articles_result.articles;
  if (articles.empty()) throw std::runtime_error("no articles to link against");

  // index over article title + body stems, or a saved one
  TfidfIndex index;
  if (!args.index_in_path.empty()) {
    index = TfidfIndex::load(args.index_in_path);
    if (index.doc_count() != articles.size())
      throw std::runtime_error("saved index covers " +
                               std::to_string(index.doc_count()) + " documents, not " +
                               std::to_string(articles.size()));
    for (const auto& article : articles)
      if (!index.doc_position(article.id))
        throw std::runtime_error("saved index is missing article " + article.id);
  } else {
    std::vector<TfidfIndex::DocInput> docs;
    docs.reserve(articles.size());
    for (const auto& article : articles) {
      docs.push_back(
          {article.id,
           preproc.tokenize(article.title + " " + article.body).content_stems});
    }
    index = TfidfIndex::build(docs);
  }
  index.save(args.out_dir + "/index.json");

  std::unordered_map<std::string, size_t> article_pos, post_pos;
  for (size_t i = 0; i < articles.size(); ++i) article_pos[articles[i].id] = i;
  for (size_t i = 0; i < posts.size(); ++i) post_pos[posts[i].id] = i;

  // profiling is pure per text; parallel by index
  std::vector<TextProfile> post_profiles(posts.size());
  parallel_for_index(posts.size(), [&](size_t i) {
    post_profiles[i] = profile_post(posts[i], preproc, lexdb, index);
  });
  std::vector<TextProfile> article_profiles(articles.size());
  parallel_for_index(articles.size(), [&](size_t i) {
    article_profiles[i] = profile_article(articles[i], preproc, lexdb, index);
  });

  // candidate pairs: each post against its top-k articles
  struct Candidate {
    size_t post = 0;
    size_t article = 0;
    PairFeatures features;
  };
  std::vector<Candidate> candidates;
  std::map<std::string, std::vector<size_t>> by_article;  // article id -> candidate idx
  for (size_t p = 0; p < posts.size(); ++p) {
    const auto scored =
        index.top_k(preproc.tokenize(posts[p].text).content_stems,
                    static_cast<size_t>(args.top_k));
    for (const auto& sd : scored) {
      Candidate c;
      c.post = p;
      c.article = article_pos.at(sd.id);
      c.features = pair_features(post_profiles[p], article_profiles[c.article]);
      by_article[sd.id].push_back(candidates.size());
      candidates.push_back(std::move(c));
    }
  }

  {
    auto out = open_artifact(args.out_dir, "pairs.csv");
    csv::Row header = {"post_id", "article_id"};
    for (const char* name : PairFeatures::field_names()) header.push_back(name);
    csv::write_row(out, header);
    for (const auto& c : candidates) {
      csv::Row row = {posts[c.post].id, articles[c.article].id};
      const auto values = c.features.values();
      for (int d = 0; d < 7; ++d) {
        if (d == 4 && !c.features.has_temporal) {
          row.push_back("");
          continue;
        }
        row.push_back(fmt_double(values[d]));
      }
      csv::write_row(out, row);
    }
  }

  Manifest manifest(args.out_dir);
  manifest.set_config("subcommand", "link");
  manifest.set_config("seed", std::to_string(args.seed));
  manifest.set_config("top_k", std::to_string(args.top_k));
  manifest.add("index.json");
  manifest.add("pairs.csv");

  if (!args.labels_path.empty()) {
    auto labels_result = load_labeled_pairs(args.labels_path);
    json metrics;

    // training set: one feature row per labeled pair
    std::vector<PairFeatures> features;
    std::vector<int> binary;
    std::vector<RelevanceLabel> finals;
    std::vector<std::vector<RelevanceLabel>> label_sets;
    size_t skipped_unknown = 0;
    for (const auto& pair : labels_result.pairs) {
      auto pp = post_pos.find(pair.post_id);
      auto ap = article_pos.find(pair.article_id);
      if (pp == post_pos.end() || ap == article_pos.end()) {
        ++skipped_unknown;
        continue;
      }
      features.push_back(
          pair_features(post_profiles[pp->second], article_profiles[ap->second]));
      binary.push_back(pair.final && *pair.final >= 1 ? 1 : 0);
      if (pair.final) finals.push_back(*pair.final);
      label_sets.push_back(pair.labels);
    }

    const auto kept = undersample(binary, args.seed);
    std::vector<PairFeatures> balanced_features;
    std::vector<int> balanced_labels;
    for (size_t i : kept) {
      balanced_features.push_back(features[i]);
      balanced_labels.push_back(binary[i]);
    }

    TrainOptions train_options;
    train_options.seed = args.seed;
    const LinkModel model = train_link_model(balanced_features, balanced_labels,
                                             train_options);
    model.save(args.out_dir + "/model.json");

    // rank candidates per article
    std::unordered_map<std::string, std::optional<RelevanceLabel>> final_by_pair;
    for (const auto& pair : labels_result.pairs)
      final_by_pair[pair.post_id + "\t" + pair.article_id] = pair.final;

    std::vector<RelevanceLabel> exported_finals;
    {
      auto out = open_artifact(args.out_dir, "rankings.csv");
      csv::write_row(out, {"article_id", "post_id", "probability", "rank"});
      auto exp = open_artifact(args.out_dir, "annotation_export.csv");
      csv::write_row(exp, {"article_id", "post_id", "probability", "rank", "final"});
      for (const auto& [article_id, cand_indices] : by_article) {
        std::vector<std::pair<std::string, PairFeatures>> pairs;
        pairs.reserve(cand_indices.size());
        for (size_t ci : cand_indices)
          pairs.emplace_back(posts[candidates[ci].post].id, candidates[ci].features);
        const LinkResult result = rank_posts(article_id, pairs, model);
        int rank = 1;
        for (const auto& rp : result.ranked) {
          csv::write_row(out, {article_id, rp.post_id, fmt_double(rp.probability),
                               std::to_string(rank)});
          ++rank;
        }
        rank = 1;
        for (const auto& rp : result.annotation_export()) {
          auto it = final_by_pair.find(rp.post_id + "\t" + article_id);
          std::string final_str;
          if (it != final_by_pair.end() && it->second) {
            final_str = std::to_string(*it->second);
            exported_finals.push_back(*it->second);
          }
          csv::write_row(exp, {article_id, rp.post_id, fmt_double(rp.probability),
                               std::to_string(rank), final_str});
          ++rank;
        }
      }
    }

    const auto precision = weighted_precision(exported_finals);
    const auto agreement = annotator_agreement(label_sets);
    {
      size_t relevant = 0, partial = 0;
      for (int label : exported_finals) {
        if (label == 2) ++relevant;
        else if (label == 1) ++partial;
      }
      auto out = open_artifact(args.out_dir, "precision.csv");
      csv::write_row(out, {"relevant_pairs", "partially_relevant_pairs",
                           "labeled_pairs", "precision"});
      csv::write_row(out, {std::to_string(relevant), std::to_string(partial),
                           std::to_string(exported_finals.size()),
                           precision ? fmt_double(*precision) : "N/A"});
    }
    metrics["labeled_pairs"] = labels_result.pairs.size();
    metrics["labeled_pairs_unknown_ids"] = skipped_unknown;
    metrics["training_rows_balanced"] = balanced_features.size();
    metrics["chosen_c"] = model.chosen_c;
    metrics["cv_accuracy"] = model.cv_accuracy;
    metrics["exported_pairs_with_final"] = exported_finals.size();
    metrics["weighted_precision"] = precision ? json(*precision) : json(nullptr);
    metrics["annotator_agreement"] =
        agreement.score ? json(*agreement.score) : json(nullptr);
    metrics["agreement_pairs_used"] = agreement.used;
    metrics["agreement_pairs_skipped"] = agreement.skipped;
    {
      auto out = open_artifact(args.out_dir, "metrics.json");
      out << metrics.dump(2) << '\n';
    }
    manifest.add("model.json");
    manifest.add("rankings.csv");
    manifest.add("annotation_export.csv");
    manifest.add("precision.csv");
    manifest.add("metrics.json");
  }

  manifest.write();
  std::cout << "link: " << candidates.size() << " candidate pairs over "
            << posts.size() << " posts x " << articles.size() << " articles\n";
  return 0;
}

int run_summarize(const SummarizeArgs& args) {
  ensure_out_dir(args.out_dir);
  const Preprocessor preproc =
      Preprocessor::from_files(args.stopwords_path, args.abbreviations_path);
  auto articles_result =
      load_articles(args.articles_path, resolve_format("", args.articles_path), preproc);
  const auto& articles = articles_result.articles;

  std::vector<std::string> methods = args.methods;
  if (methods.empty()) methods = ArticleSummarizer::method_names();
  for (const auto& m : methods) {
    const auto& known = ArticleSummarizer::method_names();
    if (std::find(known.begin(), known.end(), m) == known.end())
      throw std::runtime_error("unknown summarizer: " + m);
  }

  SummarizeOptions options;
  options.budget.max_words = args.budget;
  options.lexrank_threshold = args.lexrank_threshold;
  options.damping = args.damping;
  options.redundancy_cutoff = args.redundancy_cutoff;
  options.ilp_sentence_cap = args.ilp_cap;

  // corpus index for the centroid scorer
  std::vector<TfidfIndex::DocInput> docs;
  docs.reserve(articles.size());
  for (const auto& article : articles)
    docs.push_back(
        {article.id, preproc.tokenize(article.title + " " + article.body).content_stems});
  std::unique_ptr<TfidfIndex> corpus_index;
  if (!docs.empty())
    corpus_index = std::make_unique<TfidfIndex>(TfidfIndex::build(docs));

  {
    // per-article runs are pure; emit in article order to stay deterministic
    std::vector<std::string> blocks(articles.size());
    parallel_for_index(articles.size(), [&](size_t i) {
      const ArticleSummarizer summarizer(articles[i], preproc, options);
      std::string block;
      for (const auto& method : methods) {
        const Summary s = summarizer.run(method, corpus_index.get());
        json j{{"article_id", s.article_id}, {"method", s.method},
               {"indices", s.picked},       {"text", s.text},
               {"word_count", s.word_count}, {"approximate", s.approximate}};
        block += j.dump();
        block.push_back('\n');
      }
      blocks[i] = std::move(block);
    });
    auto out = open_artifact(args.out_dir, "summaries.jsonl");
    for (const auto& block : blocks) out << block;
  }

  Manifest manifest(args.out_dir);
  manifest.set_config("subcommand", "summarize");
  manifest.set_config("seed", std::to_string(args.seed));
  manifest.set_config("budget", std::to_string(args.budget));
  manifest.set_config("methods", std::to_string(methods.size()));
  manifest.add("summaries.jsonl");
  manifest.write();

  std::cout << "summarize: " << methods.size() << " methods x " << articles.size()
            << " articles\n";
  return 0;
}

int run_cluster(const ClusterArgs& args) {
  ensure_out_dir(args.out_dir);
  const Preprocessor preproc = Preprocessor::from_files(args.stopwords_path, "");
  auto posts_result =
      load_posts(args.posts_path, resolve_format("", args.posts_path), preproc);
  const auto& posts = posts_result.posts;
  if (posts.empty()) throw std::runtime_error("no posts to cluster");

  std::vector<std::vector<std::string>> docs;
  docs.reserve(posts.size());
  for (const auto& post : posts)
    docs.push_back(preproc.tokenize(post.text).content_tokens);

  GsdmmConfig config;
  config.num_clusters = args.k;
  config.alpha = args.alpha;
  config.beta = args.beta;
  config.iterations = args.iters;
  config.seed = args.seed;
  const ClusterState state = gsdmm_fit(docs, config);
  check_state_invariants(state);

  {
    auto out = open_artifact(args.out_dir, "assignments.csv");
    csv::write_row(out, {"doc_id", "cluster"});
    for (size_t d = 0; d < posts.size(); ++d)
      csv::write_row(out, {posts[d].id, std::to_string(state.assignments[d])});
  }
  {
    const ClusterSizeStats stats = cluster_stats(state);
    auto out = open_artifact(args.out_dir, "cluster_stats.csv");
    csv::write_row(out, {"min_size", "max_size", "mean_size", "mode_size",
                         "nonempty_clusters"});
    csv::write_row(out, {std::to_string(stats.min_size), std::to_string(stats.max_size),
                         fmt_double(stats.mean_size), std::to_string(stats.mode_size),
                         std::to_string(stats.nonempty_clusters)});
  }
  {
    auto out = open_artifact(args.out_dir, "cluster_terms.csv");
    csv::write_row(out, {"cluster", "term", "count"});
    for (int k = 0; k < args.k; ++k)
      for (const auto& [term, count] : top_terms(state, k, docs.size() * 100))
        csv::write_row(out, {std::to_string(k), term, std::to_string(count)});
  }

  Manifest manifest(args.out_dir);
  manifest.set_config("subcommand", "cluster");
  manifest.set_config("seed", std::to_string(args.seed));
  manifest.set_config("k", std::to_string(args.k));
  manifest.set_config("alpha", fmt_double(args.alpha));
  manifest.set_config("beta", fmt_double(args.beta));
  manifest.set_config("iters", std::to_string(args.iters));
  manifest.add("assignments.csv");
  manifest.add("cluster_stats.csv");
  manifest.add("cluster_terms.csv");
  manifest.write();

  const auto stats = cluster_stats(state);
  std::cout << "cluster: " << posts.size() << " docs into " << stats.nonempty_clusters
            << " nonempty clusters\n";
  return 0;
}

int run_evaluate(const EvaluateArgs& args) {
  ensure_out_dir(args.out_dir);
  const Preprocessor preproc =
      Preprocessor::from_files(args.stopwords_path, args.abbreviations_path);
  RougeOptions rouge_options;
  rouge_options.stem = !args.rouge_no_stem;
  rouge_options.remove_stopwords = args.rouge_remove_stopwords;

  auto articles_result =
      load_articles(args.articles_path, resolve_format("", args.articles_path), preproc);
  const auto& articles = articles_result.articles;
  std::unordered_map<std::string, const Article*> article_by_id;
  for (const auto& article : articles) article_by_id[article.id] = &article;

  auto annotations_result = load_summary_annotations(args.annotations_path);
  const auto& annotations = annotations_result.annotations;

  // references per article: abstractive texts and extractive sentence picks
  std::map<std::string, std::vector<std::string>> abstractive_refs, extractive_refs;
  for (const auto& ann : annotations) {
    auto it = article_by_id.find(ann.article_id);
    if (it == article_by_id.end()) continue;
    if (!ann.abstractive.empty())
      abstractive_refs[ann.article_id].push_back(ann.abstractive);
    if (!ann.extractive.empty()) {
      std::string text;
      for (int idx : ann.extractive) {
        if (idx < 1 || idx > static_cast<int>(it->second->sentences.size())) continue;
        if (!text.empty()) text.push_back(' ');
        text += it->second->sentences[static_cast<size_t>(idx - 1)];
      }
      if (!text.empty()) extractive_refs[ann.article_id].push_back(text);
    }
  }

  Manifest manifest(args.out_dir);
  manifest.set_config("subcommand", "evaluate");
  manifest.set_config("min_freq", std::to_string(args.min_freq));
  manifest.set_config("rouge_stem", rouge_options.stem ? "on" : "off");
  manifest.set_config("rouge_stopwords",
                      rouge_options.remove_stopwords ? "removed" : "kept");

  // summarizer scores: mean P/R/F1 over articles, per method / ref kind / n
  const auto summaries = read_summaries(args.summaries_path);
  {
    struct Acc {
      double p = 0, r = 0, f = 0;
      size_t count = 0;
    };
    std::map<std::tuple<std::string, std::string, int>, Acc> table;
    for (const auto& row : summaries) {
      for (int n : {1, 2}) {
        auto add = [&](const char* kind,
                       const std::map<std::string, std::vector<std::string>>& refs) {
          auto it = refs.find(row.article_id);
          if (it == refs.end()) return;
          const RougeScore score =
              rouge_n_text(row.text, it->second, n, preproc, rouge_options);
          Acc& acc = table[{row.method, kind, n}];
          acc.p += score.precision;
          acc.r += score.recall;
          acc.f += score.f1;
          ++acc.count;
        };
        add("abstractive", abstractive_refs);
        add("extractive", extractive_refs);
      }
    }
    auto out = open_artifact(args.out_dir, "rouge_scores.csv");
    csv::write_row(out, {"method", "reference", "n", "precision", "recall", "f1",
                         "articles"});
    for (const auto& [key, acc] : table) {
      const auto& [method, kind, n] = key;
      const double c = static_cast<double>(acc.count);
      csv::write_row(out, {method, kind, std::to_string(n), fmt_double(acc.p / c),
                           fmt_double(acc.r / c), fmt_double(acc.f / c),
                           std::to_string(acc.count)});
    }
    manifest.add("rouge_scores.csv");
  }

  // annotator agreement (Jaccard) table
  {
    auto out = open_artifact(args.out_dir, "jaccard_table.csv");
    csv::write_row(out, {"annotator_a", "annotator_b", "mean_jaccard", "shared_docs"});
    for (const auto& row : annotator_jaccard_table(annotations, preproc)) {
      csv::write_row(out, {row.annotator_a, row.annotator_b,
                           row.mean_jaccard ? fmt_double(*row.mean_jaccard) : "N/A",
                           std::to_string(row.shared_docs)});
    }
    manifest.add("jaccard_table.csv");
  }

  // extractive recall ceiling, article as its own peer
  {
    auto out = open_artifact(args.out_dir, "ceiling.csv");
    csv::write_row(out, {"article_id", "n", "recall", "precision"});
    double sum_r1 = 0.0;
    size_t count = 0;
    for (const auto& article : articles) {
      auto it = abstractive_refs.find(article.id);
      if (it == abstractive_refs.end()) continue;
      for (int n : {1, 2}) {
        const RougeScore score =
            recall_ceiling(article, it->second, n, preproc, rouge_options);
        csv::write_row(out, {article.id, std::to_string(n), fmt_double(score.recall),
                             fmt_double(score.precision)});
        if (n == 1) {
          sum_r1 += score.recall;
          ++count;
        }
      }
    }
    csv::write_row(out, {"MEAN_R1", "1",
                         count ? fmt_double(sum_r1 / static_cast<double>(count)) : "N/A",
                         ""});
    manifest.add("ceiling.csv");
  }

  // word frequencies for the word-cloud exports
  {
    std::vector<std::string> summary_texts, article_texts;
    for (const auto& row : summaries) summary_texts.push_back(row.text);
    for (const auto& article : articles) article_texts.push_back(article.body);

    auto write_freq = [&](const std::string& name,
                          const std::vector<std::pair<std::string, int>>& rows) {
      auto out = open_artifact(args.out_dir, name);
      csv::write_row(out, {"word", "count"});
      for (const auto& [word, count] : rows)
        csv::write_row(out, {word, std::to_string(count)});
      manifest.add(name);
    };
    write_freq("word_freq_summaries.csv",
               word_frequencies(summary_texts, args.min_freq, preproc));
    write_freq("word_freq_articles.csv",
               word_frequencies(article_texts, args.min_freq, preproc));

    // articles with all summary words removed entirely
    std::unordered_map<std::string, int> article_counts, summary_counts;
    for (const auto& text : article_texts)
      for (const auto& stem : preproc.tokenize(text).content_stems)
        ++article_counts[stem];
    for (const auto& text : summary_texts)
      for (const auto& stem : preproc.tokenize(text).content_stems)
        ++summary_counts[stem];
    write_freq("word_freq_articles_minus_summaries.csv",
               sorted_frequency_rows(content_difference(article_counts, summary_counts),
                                     args.min_freq));
  }

  // tweet summaries + timeliness need rankings, labels and posts
  if (!args.rankings_path.empty() && !args.labels_path.empty() &&
      !args.posts_path.empty()) {
    auto posts_result =
        load_posts(args.posts_path, resolve_format("", args.posts_path), preproc);
    std::unordered_map<std::string, const Post*> post_by_id;
    for (const auto& post : posts_result.posts) post_by_id[post.id] = &post;

    auto labels_result = load_labeled_pairs(args.labels_path);
    std::map<std::pair<std::string, std::string>, std::optional<RelevanceLabel>> finals;
    for (const auto& pair : labels_result.pairs)
      finals[{pair.post_id, pair.article_id}] = pair.final;

    const auto rankings = read_rankings(args.rankings_path);

    // timeliness over labeled, ranked pairs
    std::vector<std::pair<std::optional<double>, int>> labeled_distances;
    for (const auto& row : rankings) {
      auto fin = finals.find({row.post_id, row.article_id});
      if (fin == finals.end() || !fin->second || *fin->second < 1) continue;
      std::optional<double> distance;
      auto post = post_by_id.find(row.post_id);
      auto article = article_by_id.find(row.article_id);
      if (post != post_by_id.end() && article != article_by_id.end())
        distance = temporal_distance(*post->second, *article->second);
      labeled_distances.emplace_back(distance, *fin->second);
    }
    const auto reports = timeliness_by_label(labeled_distances);
    for (const auto& [label, report] : reports) {
      const std::string name = "timeliness_label" + std::to_string(label) + ".csv";
      auto out = open_artifact(args.out_dir, name);
      csv::write_row(out, {"bin_start_days", "count"});
      for (const auto& [bin, count] : report.bins)
        csv::write_row(out, {std::to_string(bin * 5), std::to_string(count)});
      manifest.add(name);
    }
    {
      json j;
      for (const auto& [label, report] : reports) {
        j["label" + std::to_string(label)] = {
            {"pairs_with_time", report.counted},
            {"pairs_missing_time", report.missing},
            {"pct_before",
             report.pct_before ? json(*report.pct_before) : json(nullptr)}};
      }
      auto out = open_artifact(args.out_dir, "timeliness.json");
      out << j.dump(2) << '\n';
      manifest.add("timeliness.json");
    }

    // tweets as summaries, evaluated like any other summary
    {
      std::map<std::string, std::vector<TweetSummaryInput>> by_article;
      for (const auto& row : rankings) {
        auto fin = finals.find({row.post_id, row.article_id});
        if (fin == finals.end() || !fin->second) continue;
        auto post = post_by_id.find(row.post_id);
        if (post == post_by_id.end()) continue;
        by_article[row.article_id].push_back(
            {row.post_id, post->second->text, *fin->second, row.probability});
      }

      auto out = open_artifact(args.out_dir, "tweet_summaries.csv");
      csv::write_row(out, {"relevancy", "reference", "n", "precision", "recall", "f1",
                           "articles"});
      struct Acc {
        double p = 0, r = 0, f = 0;
        size_t count = 0;
      };
      std::map<std::tuple<int, std::string, int>, Acc> table;
      std::map<std::pair<int, std::string>, std::pair<double, double>> uniq_acc;
      std::map<std::pair<int, std::string>, size_t> uniq_count;
      for (const auto& [article_id, inputs] : by_article) {
        auto art = article_by_id.find(article_id);
        if (art == article_by_id.end()) continue;
        for (int threshold : {1, 2}) {
          const Summary tweet_summary =
              tweets_as_summary(article_id, inputs, threshold, preproc);
          if (tweet_summary.text.empty()) continue;
          auto add_rouge = [&](const std::string& kind,
                               const std::vector<std::string>& refs) {
            for (int n : {1, 2}) {
              const RougeScore score =
                  rouge_n_text(tweet_summary.text, refs, n, preproc, rouge_options);
              Acc& acc = table[{threshold, kind, n}];
              acc.p += score.precision;
              acc.r += score.recall;
              acc.f += score.f1;
              ++acc.count;
            }
          };
          auto abs_it = abstractive_refs.find(article_id);
          if (abs_it != abstractive_refs.end()) add_rouge("abstractive", abs_it->second);
          auto ext_it = extractive_refs.find(article_id);
          if (ext_it != extractive_refs.end()) add_rouge("extractive", ext_it->second);
          add_rouge("article", {art->second->body});

          // uniqueness against the article and both reference kinds
          const WordSet tweet_set = WordSet::from_text(tweet_summary.text, preproc);
          auto add_uniq = [&](const std::string& kind, const std::string& text) {
            const auto [ab, ba] = uniq(tweet_set, WordSet::from_text(text, preproc));
            auto key = std::make_pair(threshold, kind);
            uniq_acc[key].first += ab;
            uniq_acc[key].second += ba;
            ++uniq_count[key];
          };
          add_uniq("article", art->second->body);
          if (abs_it != abstractive_refs.end()) {
            std::string joined;
            for (const auto& t : abs_it->second) {
              joined += t;
              joined.push_back(' ');
            }
            add_uniq("abstractive", joined);
          }
          if (ext_it != extractive_refs.end()) {
            std::string joined;
            for (const auto& t : ext_it->second) {
              joined += t;
              joined.push_back(' ');
            }
            add_uniq("extractive", joined);
          }
        }
      }
      for (const auto& [key, acc] : table) {
        const auto& [threshold, kind, n] = key;
        const double c = static_cast<double>(acc.count);
        csv::write_row(out, {std::to_string(threshold), kind, std::to_string(n),
                             fmt_double(acc.p / c), fmt_double(acc.r / c),
                             fmt_double(acc.f / c), std::to_string(acc.count)});
      }
      manifest.add("tweet_summaries.csv");

      auto uout = open_artifact(args.out_dir, "uniq.csv");
      csv::write_row(uout, {"relevancy", "against", "uniq_tweets_given_other",
                            "uniq_other_given_tweets", "articles"});
      for (const auto& [key, acc] : uniq_acc) {
        const double c = static_cast<double>(uniq_count[key]);
        csv::write_row(uout, {std::to_string(key.first), key.second,
                              fmt_double(acc.first / c), fmt_double(acc.second / c),
                              std::to_string(uniq_count[key])});
      }
      manifest.add("uniq.csv");
    }
  }

  manifest.write();
  std::cout << "evaluate: " << summaries.size() << " summaries scored against "
            << annotations.size() << " annotations\n";
  return 0;
}

int run_report(const ReportArgs& args) {
  ensure_out_dir(args.out_dir);
  std::ostringstream report;

  // an artifact may live in --in itself or in one of its stage subdirectories
  auto locate = [&](const std::string& name) -> std::optional<std::string> {
    const std::string direct = args.in_dir + "/" + name;
    if (fs::exists(direct)) return direct;
    std::vector<std::string> subdirs;
    if (fs::is_directory(args.in_dir)) {
      for (const auto& entry : fs::directory_iterator(args.in_dir))
        if (entry.is_directory()) subdirs.push_back(entry.path().string());
    }
    std::sort(subdirs.begin(), subdirs.end());
    for (const auto& dir : subdirs) {
      const std::string nested = dir + "/" + name;
      if (fs::exists(nested)) return nested;
    }
    return std::nullopt;
  };
  auto maybe = [&](const std::string& name) -> std::optional<std::string> {
    const auto path = locate(name);
    if (!path) return std::nullopt;
    std::ifstream in(*path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };

  auto format_csv = [&](const std::string& content, const std::string& title) {
    report << "== " << title << " ==\n";
    for (const auto& row : csv::parse(content)) {
      for (size_t i = 0; i < row.size(); ++i) {
        if (i) report << "  ";
        report << row[i];
      }
      report << '\n';
    }
    report << '\n';
  };

  if (auto content = maybe("rouge_scores.csv"))
    format_csv(*content, "summarizer scores");
  if (auto content = maybe("precision.csv")) format_csv(*content, "linking precision");
  if (auto content = maybe("metrics.json")) {
    report << "== linking metrics ==\n" << *content << '\n';
  }
  if (auto content = maybe("cluster_stats.csv")) format_csv(*content, "cluster sizes");
  if (auto content = maybe("timeliness.json"))
    report << "== timeliness ==\n" << *content << '\n';
  if (auto content = maybe("jaccard_table.csv"))
    format_csv(*content, "annotator agreement (jaccard)");
  if (auto content = maybe("ceiling.csv")) format_csv(*content, "extractive ceiling");

  bool any_freq = false;
  for (const char* name :
       {"word_freq_summaries.csv", "word_freq_articles.csv",
        "word_freq_articles_minus_summaries.csv"}) {
    if (auto content = maybe(name)) {
      any_freq = true;
      std::ofstream out(args.out_dir + "/" + std::string(name));
      out << *content;
    }
  }
  if (report.str().empty() && !any_freq)
    throw std::runtime_error(
        "missing artifacts under " + args.in_dir +
        ": expected rouge_scores.csv, metrics.json, cluster_stats.csv, "
        "timeliness.json or word frequency CSVs");

  {
    auto out = open_artifact(args.out_dir, "report.txt");
    out << report.str();
  }
  std::cout << report.str();

  Manifest manifest(args.out_dir);
  manifest.set_config("subcommand", "report");
  manifest.add("report.txt");
  if (any_freq)
    for (const char* name :
         {"word_freq_summaries.csv", "word_freq_articles.csv",
          "word_freq_articles_minus_summaries.csv"})
      if (fs::exists(args.out_dir + "/" + std::string(name))) manifest.add(name);
  manifest.write();
  return 0;
}

}  // namespace newslink::cli
