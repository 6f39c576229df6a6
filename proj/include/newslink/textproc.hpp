#pragma once

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace newslink {

class LexicalDb;

// A tokenized text. `stems` is aligned with `tokens`; `content_tokens` /
// `content_stems` are the positions whose token is not a stopword.
struct TokenizedText {
  std::string raw;
  std::vector<std::string> tokens;
  std::vector<std::string> stems;
  std::vector<std::string> content_tokens;
  std::vector<std::string> content_stems;
};

// Marker tokens pulled out of raw text before punctuation stripping.
// Hashtags and mentions keep their original case, markers removed.
struct Markers {
  std::vector<std::string> hashtags;
  std::vector<std::string> mentions;
  std::vector<std::string> urls;
};

// Multiset of within-token character n-grams.
struct CharNgramBag {
  int n = 2;
  std::unordered_map<std::string, int> counts;

  size_t total() const;
};

CharNgramBag char_ngrams(const std::vector<std::string>& tokens, int n);

// Sum over grams of min(count_a, count_b).
size_t bag_intersection_size(const CharNgramBag& a, const CharNgramBag& b);

// Shared preprocessing: stopword list and sentence-split abbreviation guard
// are loaded once and the object is immutable afterwards.
class Preprocessor {
 public:
  Preprocessor() = default;
  static Preprocessor from_files(const std::string& stopwords_path,
                                 const std::string& abbreviations_path);

  void set_stopwords(std::vector<std::string> words);
  void set_abbreviations(std::vector<std::string> words);

  bool is_stopword(const std::string& token) const;
  const std::unordered_set<std::string>& stopwords() const { return stopwords_; }

  // URL removal, then non-ASCII removal, then punctuation removal; whitespace
  // runs collapsed and trimmed. Case is preserved.
  static std::string clean(const std::string& text);

  TokenizedText tokenize(const std::string& text) const;
  Markers extract_markers(const std::string& text) const;

  // Split at '.', '!' or '?' followed by whitespace or end of text. A '.' is
  // not a boundary when the word carrying it is in the abbreviation list.
  std::vector<std::string> split_sentences(const std::string& text) const;

 private:
  std::unordered_set<std::string> stopwords_;
  std::unordered_set<std::string> abbreviations_;  // lowercased, with dot
};

// Input tokens plus, for every non-stopword token known to the database, the
// lemma names of all its synsets (deduplicated per token, multiword lemmas
// split on underscore, the token itself excluded), each appended once.
std::vector<std::string> expand_synsets(const std::vector<std::string>& tokens,
                                        const LexicalDb& lexdb,
                                        const Preprocessor& preproc);

}  // namespace newslink
