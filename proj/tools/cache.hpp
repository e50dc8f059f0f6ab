#pragma once

// On-disk report cache under $POSREP_CACHE_DIR, keyed by the SHA-256 of the
// engine version, command and canonical parameters.

#include <filesystem>
#include <optional>
#include <string>

#include "posrep/io.hpp"

namespace posrep::cli {

struct CachedRun {
  int exit_code = 0;
  std::string report;
};

std::string sha256_hex(std::string const& data);

class ReportCache {
 public:
  /// Disabled unless POSREP_CACHE_DIR is set and non-empty.
  static ReportCache from_environment();

  bool enabled() const { return !dir_.empty(); }
  std::string key(std::string const& command, Json const& params) const;
  std::optional<CachedRun> load(std::string const& key) const;
  /// Best effort: a cache that cannot be written is skipped with a warning.
  void store(std::string const& key, CachedRun const& run) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace posrep::cli
