#include "newslink/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

#include <json.hpp>

namespace newslink {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int digest_len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
  if (EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, digest, &digest_len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("sha256 digest failed");
  }
  EVP_MD_CTX_free(ctx);

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(digest_len * 2);
  for (unsigned int i = 0; i < digest_len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string sha256_file_hex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for hashing: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return sha256_hex(ss.str());
}

void Manifest::add(const std::string& relative) {
  Entry entry;
  entry.name = relative;
  const std::string path = out_dir_ + "/" + relative;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("manifest: missing artifact " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string bytes = ss.str();
  entry.sha256 = sha256_hex(bytes);
  entry.bytes = bytes.size();
  entries_.push_back(std::move(entry));
}

void Manifest::set_config(const std::string& key, const std::string& value) {
  config_.emplace_back(key, value);
}

void Manifest::write() const {
  nlohmann::json j;
  auto sorted = entries_;
  std::sort(sorted.begin(), sorted.end(),
            [](const Entry& a, const Entry& b) { return a.name < b.name; });
  nlohmann::json artifacts = nlohmann::json::array();
  for (const auto& entry : sorted) {
    artifacts.push_back({{"name", entry.name},
                         {"sha256", entry.sha256},
                         {"bytes", entry.bytes}});
  }
  j["artifacts"] = std::move(artifacts);

  auto config = config_;
  std::sort(config.begin(), config.end());
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [key, value] : config) cfg[key] = value;
  j["config"] = std::move(cfg);

  std::ofstream out(out_dir_ + "/manifest.json");
  if (!out) throw std::runtime_error("cannot write manifest in " + out_dir_);
  out << j.dump(2) << '\n';
}

}  // namespace newslink
