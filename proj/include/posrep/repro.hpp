#pragma once

// Reproduction drivers: each runs one named claim end to end and records a
// list of exact checks plus the evidence behind them.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "posrep/io.hpp"

namespace posrep {

struct ReproOptions {
  int n_max = 20;           // ciclico: largest n
  std::uint64_t seed = 7;   // corofew
  int samples = 200;        // corofew
  int threads = 1;
  int window = 3;           // producto1 radius
  std::uint64_t p_max = 200;  // main-sl2: primes checked against the bound
};

struct ReproCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ReproReport {
  std::string id;
  std::vector<ReproCheck> checks;
  Json evidence = Json::object();

  bool pass() const;
};

/// ciclico, contraejemplos, zeta22, main-f2, main-sl2, corofew, producto1,
/// producto2, nongraded.
std::vector<std::string> const& repro_ids();

/// Throws InvalidArgument for an unknown id.
ReproReport run_repro(std::string_view id, ReproOptions const& options = {});

Json to_json(ReproReport const& r);

/// Cyclically reduced words of length l over n generators, by listing them.
std::uint64_t enumerate_cyclically_reduced(int n, int l);

}  // namespace posrep
