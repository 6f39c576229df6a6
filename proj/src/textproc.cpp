#include "newslink/textproc.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "newslink/stemmer.hpp"
#include "newslink/wordnet.hpp"

namespace newslink {
namespace {

bool is_ascii(unsigned char c) { return c < 0x80; }
bool is_punct(unsigned char c) { return is_ascii(c) && std::ispunct(c); }
bool is_space(unsigned char c) { return is_ascii(c) && std::isspace(c); }

char to_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string lowercase(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(), to_lower);
  return out;
}

bool looks_like_url(const std::string& token) {
  auto starts = [&](const char* prefix) {
    const size_t n = std::strlen(prefix);
    if (token.size() < n) return false;
    for (size_t i = 0; i < n; ++i)
      if (to_lower(token[i]) != prefix[i]) return false;
    return true;
  };
  return starts("http://") || starts("https://") || starts("ftp://") ||
         starts("www.");
}

// Deletes every whitespace-delimited URL token from the text.
std::string strip_urls(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      out.push_back(text[i]);
      ++i;
      continue;
    }
    size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    std::string token = text.substr(i, j - i);
    if (!looks_like_url(token)) out += token;
    i = j;
  }
  return out;
}

std::string collapse_whitespace(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (unsigned char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

// Strips non-ASCII and punctuation from a raw token and lowercases it.
std::string normalize_token(const std::string& token) {
  std::string out;
  out.reserve(token.size());
  for (unsigned char c : token) {
    if (!is_ascii(c) || is_punct(c)) continue;
    out.push_back(to_lower(static_cast<char>(c)));
  }
  return out;
}

// Marker payload: leading run of [A-Za-z0-9_] after '#' or '@'.
std::string marker_payload(const std::string& token, size_t start) {
  size_t end = start;
  while (end < token.size() &&
         (std::isalnum(static_cast<unsigned char>(token[end])) || token[end] == '_'))
    ++end;
  return token.substr(start, end - start);
}

std::vector<std::string> read_word_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open word list: " + path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n' ||
                             line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    if (!line.empty()) words.push_back(line);
  }
  return words;
}

}  // namespace

size_t CharNgramBag::total() const {
  size_t sum = 0;
  for (const auto& [gram, count] : counts) sum += static_cast<size_t>(count);
  return sum;
}

CharNgramBag char_ngrams(const std::vector<std::string>& tokens, int n) {
  if (n < 1) throw std::invalid_argument("char_ngrams: n must be positive");
  CharNgramBag bag;
  bag.n = n;
  for (const auto& token : tokens) {
    const std::string lowered = lowercase(token);
    if (static_cast<int>(lowered.size()) < n) continue;
    for (size_t i = 0; i + n <= lowered.size(); ++i)
      ++bag.counts[lowered.substr(i, n)];
  }
  return bag;
}

size_t bag_intersection_size(const CharNgramBag& a, const CharNgramBag& b) {
  const auto& small = a.counts.size() <= b.counts.size() ? a : b;
  const auto& large = a.counts.size() <= b.counts.size() ? b : a;
  size_t sum = 0;
  for (const auto& [gram, count] : small.counts) {
    auto it = large.counts.find(gram);
    if (it != large.counts.end()) sum += static_cast<size_t>(std::min(count, it->second));
  }
  return sum;
}

Preprocessor Preprocessor::from_files(const std::string& stopwords_path,
                                      const std::string& abbreviations_path) {
  Preprocessor p;
  if (!stopwords_path.empty()) p.set_stopwords(read_word_list(stopwords_path));
  if (!abbreviations_path.empty())
    p.set_abbreviations(read_word_list(abbreviations_path));
  return p;
}

void Preprocessor::set_stopwords(std::vector<std::string> words) {
  stopwords_.clear();
  for (auto& w : words) stopwords_.insert(lowercase(w));
}

void Preprocessor::set_abbreviations(std::vector<std::string> words) {
  abbreviations_.clear();
  for (auto& w : words) {
    std::string lw = lowercase(w);
    if (!lw.empty() && lw.back() != '.') lw.push_back('.');
    abbreviations_.insert(lw);
  }
}

bool Preprocessor::is_stopword(const std::string& token) const {
  return stopwords_.count(token) > 0;
}

std::string Preprocessor::clean(const std::string& text) {
  std::string no_urls = strip_urls(text);
  std::string out;
  out.reserve(no_urls.size());
  for (unsigned char c : no_urls) {
    if (!is_ascii(c) || is_punct(c)) continue;
    out.push_back(static_cast<char>(c));
  }
  return collapse_whitespace(out);
}

Markers Preprocessor::extract_markers(const std::string& text) const {
  Markers m;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    if (looks_like_url(token)) {
      m.urls.push_back(token);
    } else if (token.size() > 1 && token[0] == '#') {
      std::string tag = marker_payload(token, 1);
      if (!tag.empty()) m.hashtags.push_back(tag);
    } else if (token.size() > 1 && token[0] == '@') {
      std::string name = marker_payload(token, 1);
      if (!name.empty()) m.mentions.push_back(name);
    }
  }
  return m;
}

TokenizedText Preprocessor::tokenize(const std::string& text) const {
  TokenizedText out;
  out.raw = text;
  std::istringstream in(text);
  std::string raw_token;
  while (in >> raw_token) {
    if (looks_like_url(raw_token)) continue;
    std::string word;
    if (raw_token.size() > 1 && (raw_token[0] == '#' || raw_token[0] == '@')) {
      word = normalize_token(marker_payload(raw_token, 1));
    } else {
      word = normalize_token(raw_token);
    }
    if (word.empty()) continue;
    out.tokens.push_back(word);
    out.stems.push_back(porter_stem(word));
    if (!is_stopword(word)) {
      out.content_tokens.push_back(word);
      out.content_stems.push_back(out.stems.back());
    }
  }
  return out;
}

std::vector<std::string> Preprocessor::split_sentences(const std::string& text) const {
  std::vector<std::string> sentences;
  const size_t n = text.size();
  size_t start = 0;

  auto emit = [&](size_t end) {
    size_t a = start, b = end;
    while (a < b && is_space(text[a])) ++a;
    while (b > a && is_space(text[b - 1])) --b;
    if (b > a) sentences.push_back(text.substr(a, b - a));
    start = end;
  };

  size_t i = 0;
  while (i < n) {
    const char c = text[i];
    if (c == '.' || c == '!' || c == '?') {
      size_t run_end = i;
      while (run_end + 1 < n && (text[run_end + 1] == '.' || text[run_end + 1] == '!' ||
                                 text[run_end + 1] == '?'))
        ++run_end;
      const bool at_end = run_end + 1 >= n;
      const bool before_space = !at_end && is_space(text[run_end + 1]);
      if (at_end || before_space) {
        bool guarded = false;
        if (c == '.' && run_end == i) {
          // the word carrying this dot, e.g. "mr."
          size_t w = i;
          while (w > 0 && !is_space(text[w - 1])) --w;
          std::string word = lowercase(text.substr(w, i - w + 1));
          guarded = abbreviations_.count(word) > 0;
        }
        if (!guarded) {
          emit(run_end + 1);
          i = run_end + 1;
          continue;
        }
      }
      i = run_end + 1;
      continue;
    }
    ++i;
  }
  emit(n);
  return sentences;
}

std::vector<std::string> expand_synsets(const std::vector<std::string>& tokens,
                                        const LexicalDb& lexdb,
                                        const Preprocessor& preproc) {
  std::vector<std::string> out = tokens;
  for (const auto& token : tokens) {
    if (preproc.is_stopword(token)) continue;
    std::set<std::string> additions;
    for (const auto& lemma : lexdb.expansions(token)) {
      // multiword lemmas contribute their parts
      size_t begin = 0;
      while (begin <= lemma.size()) {
        size_t us = lemma.find('_', begin);
        if (us == std::string::npos) us = lemma.size();
        std::string part = lemma.substr(begin, us - begin);
        if (!part.empty() && part != token) additions.insert(part);
        begin = us + 1;
      }
    }
    out.insert(out.end(), additions.begin(), additions.end());
  }
  return out;
}

}  // namespace newslink
