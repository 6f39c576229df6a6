#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace newslink {

// Reader for the standard WordNet database layout: index.<pos> / data.<pos>
// pairs for noun, verb, adj and adv. Only lemma -> synset membership is kept;
// glosses and pointers are ignored. Read-only after load.
class LexicalDb {
 public:
  LexicalDb() = default;

  // Loads whichever of the eight standard files exist under `dir`. Throws if
  // the directory contains none of them.
  static LexicalDb load(const std::string& dir);

  bool empty() const { return lemma_synsets_.empty(); }
  size_t lemma_count() const { return lemma_synsets_.size(); }

  // All lemma names (lowercased, underscores preserved) of every synset that
  // contains `word` as a lemma, excluding `word` itself. Sorted and deduped.
  // Unknown words yield an empty list.
  std::vector<std::string> expansions(const std::string& word) const;

 private:
  struct SynsetRef {
    int pos;               // 0..3
    std::uint64_t offset;  // byte offset key within data.<pos>
  };

  void load_pos(int pos, const std::string& index_path, const std::string& data_path);

  std::unordered_map<std::string, std::vector<SynsetRef>> lemma_synsets_;
  // per pos: offset -> member words
  std::unordered_map<std::uint64_t, std::vector<std::string>> synset_words_[4];
};

}  // namespace newslink
