#include "cache.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <openssl/evp.h>

#include "posrep/error.hpp"

namespace posrep::cli {

std::string sha256_hex(std::string const& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) throw Error("SHA-256 failed");
  static char const* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

ReportCache ReportCache::from_environment() {
  ReportCache c;
  if (char const* d = std::getenv("POSREP_CACHE_DIR"); d && *d) c.dir_ = d;
  return c;
}

std::string ReportCache::key(std::string const& command, Json const& params) const {
  return sha256_hex(engine_version() + "\n" + command + "\n" + params.dump());
}

std::optional<CachedRun> ReportCache::load(std::string const& key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(dir_ / (key + ".json"), std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    auto j = Json::parse(ss.str());
    return CachedRun{j.at("exit").get<int>(), j.at("report").get<std::string>()};
  } catch (nlohmann::json::exception const&) {
    return std::nullopt;  // corrupt entry: recompute
  }
}

void ReportCache::store(std::string const& key, CachedRun const& run) const {
  if (!enabled()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  Json j;
  j["exit"] = run.exit_code;
  j["report"] = run.report;
  auto tmp = dir_ / (key + ".tmp");
  try {
    write_text_file(tmp, j.dump());
    std::filesystem::rename(tmp, dir_ / (key + ".json"));
  } catch (std::exception const& e) {
    std::cerr << "warning: cache not written: " << e.what() << "\n";
  }
}

}  // namespace posrep::cli
