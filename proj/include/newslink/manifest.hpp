#pragma once

#include <string>
#include <vector>

namespace newslink {

std::string sha256_hex(const std::string& bytes);
std::string sha256_file_hex(const std::string& path);

// Collects (relative name, content hash, size) triples for every artifact a
// subcommand wrote and serializes them as deterministic JSON: same inputs,
// config and seed give a byte-identical manifest.
class Manifest {
 public:
  explicit Manifest(std::string out_dir) : out_dir_(std::move(out_dir)) {}

  // `relative` is the artifact path relative to the output directory.
  void add(const std::string& relative);
  void set_config(const std::string& key, const std::string& value);

  // Writes <out_dir>/manifest.json (and registers nothing for itself).
  void write() const;

 private:
  struct Entry {
    std::string name;
    std::string sha256;
    std::uint64_t bytes = 0;
  };
  std::string out_dir_;
  std::vector<Entry> entries_;
  std::vector<std::pair<std::string, std::string>> config_;
};

}  // namespace newslink
