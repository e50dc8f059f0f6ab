#pragma once

// Exhaustive searches over connection sets: which finite groups have a
// Cayley representation P(G,S), and which admit a semi-regular poset
// representation with three orbits.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "posrep/aut.hpp"
#include "posrep/poset.hpp"

namespace posrep {

/// P(G,S) is a Cayley representation iff only the identity fixes e.
bool is_cayley_representation(CayleySpec const& spec);

struct SearchOptions {
  bool prune_translation = true;   // S ~ Sh
  bool prune_automorphism = true;  // S ~ ψ(S)
  bool prune_complement = true;    // S ~ G∖S
  std::size_t max_order = 16;
};

struct SearchCounters {
  std::uint64_t total = 0;  // subsets in scope: 2^n − 2, or 1 for the trivial group
  std::uint64_t tried = 0;
  std::uint64_t pruned_translation = 0;
  std::uint64_t pruned_automorphism = 0;
  std::uint64_t pruned_complement = 0;

  std::uint64_t visited() const { return tried + pruned_translation + pruned_automorphism + pruned_complement; }
};

struct SearchReport {
  std::string group;
  std::size_t order = 0;
  bool found = false;
  std::vector<int> s;  // the connection set found, as table indices
  std::vector<std::string> s_labels;
  SearchCounters counters;
};

/// Visits subsets ∅ ≠ S ≠ G in increasing bitmask order, skipping those
/// equivalent to an earlier one under the enabled rules, and tests each
/// representative. Stops at the first Cayley representation.
SearchReport search_cayley(CayleyTablePtr const& table, SearchOptions const& options = {});

struct ContraejemplosRow {
  std::string group;
  SearchReport report;
};

/// The groups Z3, Z4, Z5, Z6, Z7, Z2², Z2³, Z2⁴, Z3², S3, Q8.
std::vector<std::string> contraejemplos_groups();
std::vector<ContraejemplosRow> reproduce_contraejemplos(SearchOptions const& options = {});

/// Relations between two orbit copies i < j: either copy i lies below copy j
/// (g_i < h_j iff g⁻¹h ∈ mask), or above it (h_j < g_i iff g⁻¹h ∈ mask).
struct OrbitPairRelation {
  bool lower_first = true;
  std::uint32_t mask = 0;
};

struct ThreeOrbitCandidate {
  OrbitPairRelation r01, r02, r12;
};

struct ThreeOrbitValidation {
  bool order_ok = false;        // closure is a strict order without same-orbit relations
  std::string rejection;        // why not, when !order_ok
  std::optional<FinitePoset> poset;
  std::optional<RepresentationVerdict> verdict;
  bool valid = false;           // semi-regular with three orbits and Aut = G
};

/// Builds the G-invariant relation described by `c` on G ⊔ G′ ⊔ G″, closes it
/// and classifies the left-regular action.
ThreeOrbitValidation validate_three_orbit_candidate(CayleyTablePtr const& table, ThreeOrbitCandidate const& c);

struct ThreeOrbitReport {
  std::string group;
  std::uint64_t candidates = 0;
  std::uint64_t rejected_cycle = 0;
  std::uint64_t rejected_same_orbit = 0;
  std::uint64_t distinct_orders = 0;
  std::vector<FinitePoset> valid;
};

/// Every G-invariant strict order on three regular orbits, deduplicated after
/// transitive closure, keeping those whose automorphism group is exactly G.
/// Requires |G| ≤ max_order (default 6).
ThreeOrbitReport enumerate_three_orbit(CayleyTablePtr const& table, std::size_t max_order = 6);

}  // namespace posrep
