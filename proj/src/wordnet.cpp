#include "newslink/wordnet.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace newslink {
namespace {

const char* kPosNames[4] = {"noun", "verb", "adj", "adv"};

std::string lowercase(std::string s) {
  for (char& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return s;
}

bool file_exists(const std::string& path) {
  std::ifstream f(path);
  return f.good();
}

}  // namespace

LexicalDb LexicalDb::load(const std::string& dir) {
  LexicalDb db;
  int found = 0;
  for (int pos = 0; pos < 4; ++pos) {
    const std::string index_path = dir + "/index." + kPosNames[pos];
    const std::string data_path = dir + "/data." + kPosNames[pos];
    if (!file_exists(index_path) || !file_exists(data_path)) continue;
    db.load_pos(pos, index_path, data_path);
    ++found;
  }
  if (found == 0)
    throw std::runtime_error("no WordNet index/data files found under " + dir);
  return db;
}

void LexicalDb::load_pos(int pos, const std::string& index_path,
                         const std::string& data_path) {
  // data.<pos>: synset_offset lex_filenum ss_type w_cnt word lex_id ...
  {
    std::ifstream in(data_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == ' ') continue;  // license header
      std::istringstream fields(line);
      std::uint64_t offset;
      std::string lex_filenum, ss_type, w_cnt_hex;
      if (!(fields >> offset >> lex_filenum >> ss_type >> w_cnt_hex)) continue;
      const long w_cnt = std::strtol(w_cnt_hex.c_str(), nullptr, 16);
      std::vector<std::string> words;
      words.reserve(w_cnt);
      for (long i = 0; i < w_cnt; ++i) {
        std::string word, lex_id;
        if (!(fields >> word >> lex_id)) break;
        words.push_back(lowercase(word));
      }
      if (!words.empty()) synset_words_[pos].emplace(offset, std::move(words));
    }
  }
  // index.<pos>: lemma pos synset_cnt p_cnt ptr... sense_cnt tagsense_cnt offsets...
  {
    std::ifstream in(index_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == ' ') continue;
      std::istringstream fields(line);
      std::string lemma, pos_tag;
      int synset_cnt, p_cnt;
      if (!(fields >> lemma >> pos_tag >> synset_cnt >> p_cnt)) continue;
      std::string skip;
      for (int i = 0; i < p_cnt; ++i) fields >> skip;
      fields >> skip >> skip;  // sense_cnt tagsense_cnt
      auto& refs = lemma_synsets_[lowercase(lemma)];
      for (int i = 0; i < synset_cnt; ++i) {
        std::uint64_t offset;
        if (!(fields >> offset)) break;
        refs.push_back(SynsetRef{pos, offset});
      }
    }
  }
}

std::vector<std::string> LexicalDb::expansions(const std::string& word) const {
  auto it = lemma_synsets_.find(word);
  if (it == lemma_synsets_.end()) return {};
  std::set<std::string> names;
  for (const SynsetRef& ref : it->second) {
    auto synset = synset_words_[ref.pos].find(ref.offset);
    if (synset == synset_words_[ref.pos].end()) continue;
    for (const auto& member : synset->second)
      if (member != word) names.insert(member);
  }
  return {names.begin(), names.end()};
}

}  // namespace newslink
