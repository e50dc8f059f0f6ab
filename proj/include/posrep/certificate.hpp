#pragma once

// A sufficient criterion for two-generated groups: when every nontrivial
// word of length ≤ 21 in x, y is nontrivial in G, the Cayley poset for
// S = {e, x, x², x⁴, y, y³} has trivial point stabilizers. The certificate
// records the girth check together with the local data the argument uses,
// recomputed in G and compared with the same data in the free group F₂.

#include <optional>
#include <string>
#include <vector>

#include "posrep/cayley_graph.hpp"
#include "posrep/freegroup.hpp"
#include "posrep/group.hpp"

namespace posrep {

/// e, x, x², x⁴, y, y³.
std::vector<ReducedWord> connection_set_words();

struct AffinityEntry {
  ReducedWord word;       // an element g of N_S(e) ∖ {e}, as a reduced word in F₂
  std::size_t affinity;   // α(e, g)
};

/// α(e, g) for the 26 nontrivial g ∈ SS⁻¹, computed in F₂ by set
/// intersection. Ordered by word length, then letters.
std::vector<AffinityEntry> const& f2_reference_table();

/// The smallest subtree of the Cayley tree of F₂ containing N_S(e): every
/// prefix of every element, with tree edges (parent, child) as indices.
struct NeighborhoodTree {
  std::vector<ReducedWord> nodes;
  std::vector<bool> in_neighborhood;
  std::vector<std::pair<int, int>> edges;
};
NeighborhoodTree f2_neighborhood_tree();

enum class GenerationCheck { Closure, Unipotent, Skipped };
std::string to_string(GenerationCheck g);

struct CertifyOptions {
  int girth_limit = 22;
  std::size_t node_budget = std::size_t{1} << 23;
  /// Largest group order for which generation is checked by closure.
  std::uint64_t closure_cap = std::uint64_t{1} << 20;
};

struct ComputedAffinity {
  ReducedWord word;
  std::size_t reference = 0;
  std::size_t computed = 0;
};

struct MainCertificate {
  std::string group;
  std::string x, y;
  GirthResult girth;
  bool applicable = false;
  std::string reason;  // when not applicable
  std::optional<ReducedWord> violating_word;

  std::vector<std::string> s;  // S, evaluated and formatted in G
  std::size_t neighborhood_size = 0;
  std::vector<ComputedAffinity> table;
  bool table_matches = false;
  bool unique_upper_bound = false;      // e′ is the only upper bound of {e, y⁻¹}
  bool four_point_upper_bound = false;  // {e, x², x³, x⁴} has an upper bound

  GenerationCheck generation = GenerationCheck::Skipped;
  std::vector<std::string> warnings;
  /// The criterion is sufficient, not necessary.
  bool sufficient_only = true;
};

/// Throws InvalidArgument when x, y are shown not to generate G.
MainCertificate certify(GroupPtr const& group, Element const& x, Element const& y,
                        CertifyOptions const& options = {});
/// SL₂(p) with the generators [[1,2],[0,1]] and [[1,0],[2,1]].
MainCertificate certify_margulis(std::uint64_t p, CertifyOptions const& options = {});

/// Smallest integer g with g ≥ 2·log_{1+√2}(p/2) − 1, decided exactly via
/// (1+√2)^{g+1} ≥ p²/4 in ℤ[√2].
int margulis_bound_min_girth(std::uint64_t p);

struct PrimeScanRow {
  std::uint64_t p = 0;
  GirthResult girth;
  int bound = 0;  // margulis_bound_min_girth(p)
};

struct PrimeScan {
  std::vector<PrimeScanRow> rows;
  std::optional<std::uint64_t> first_above;  // first p with girth > threshold
};

/// Margulis girths of SL₂(p) for odd primes p ≤ p_max, computed with `limit`.
std::vector<PrimeScanRow> margulis_girths(std::uint64_t p_max, int limit = 24);

/// Odd primes upward from 3 until the girth exceeds `threshold` (or p_max).
PrimeScan scan_primes(int threshold = 21, std::uint64_t p_max = 2000);

struct CrossValidationRow {
  std::string group;
  bool applicable = false;
  std::optional<int> girth;
  bool search_found = false;
  /// An applicable certificate must agree with the search.
  bool consistent = false;
};

/// Z_n for n in [n_min, n_max] with generators 1, 2: the certificate never
/// applies there (girth ≤ 4) while the exhaustive search may still succeed.
std::vector<CrossValidationRow> cross_validate_small(int n_min, int n_max);

}  // namespace posrep
