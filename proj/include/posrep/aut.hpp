#pragma once

// Automorphism groups of finite posets and digraphs by individualization and
// refinement, point stabilizer tests, and classification of group actions
// on posets.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "posrep/poset.hpp"

namespace posrep {

using BigInt = boost::multiprecision::cpp_int;

struct AutGroup {
  std::vector<Permutation> generators;  // sorted
  BigInt order = 1;
  /// Orbit id per point; ids are numbered by smallest member.
  std::vector<int> orbits;
  std::vector<int> base;

  std::size_t orbit_count() const;
  /// Orbits as sorted point lists, ordered by smallest member.
  std::vector<std::vector<int>> orbit_lists() const;
};

struct StabilizerResult {
  bool trivial = true;
  std::optional<Permutation> witness;
};

AutGroup automorphism_group(FinitePoset const& poset);
AutGroup automorphism_group(LabeledDigraph const& digraph);

/// Whether every automorphism fixing `point` is the identity. Searches for a
/// nontrivial one directly instead of building the whole group.
StabilizerResult stabilizer_is_trivial(FinitePoset const& poset, int point);
StabilizerResult stabilizer_is_trivial(LabeledDigraph const& digraph, int point);

/// Cycle notation over point labels, e.g. "(2 5)(0' 3')"; "id" for the identity.
std::string describe_permutation(std::vector<PointInfo> const& points, Permutation const& p);

/// All elements of the permutation group generated by `gens` (by closure),
/// or nullopt once more than `cap` elements appear.
std::optional<std::vector<Permutation>> permutation_group_closure(std::vector<Permutation> const& gens,
                                                                  std::size_t n, std::size_t cap);

enum class VerdictKind { NotFree, SemiRegular, Regular, CayleyRepresentation };

std::string to_string(VerdictKind kind);

struct RepresentationVerdict {
  VerdictKind kind = VerdictKind::NotFree;
  std::size_t orbit_count = 0;
  bool free = false;
  /// The action realizes every automorphism of the poset.
  bool full_aut = false;
  BigInt aut_order = 0;
  std::size_t image_order = 0;
  int height = 0;
  std::vector<std::vector<int>> orbits;
  /// A nontrivial automorphism fixing `witness_point`, or an automorphism
  /// outside the action when the stabilizers are trivial but Aut is larger.
  std::optional<Permutation> witness;
  std::optional<int> witness_point;
  std::string witness_text;
};

/// Classifies the action given by one point permutation per group element.
/// Throws InvalidArgument unless every permutation is an automorphism.
RepresentationVerdict classify_action(FinitePoset const& poset, std::vector<Permutation> const& action);

/// Classifies Aut(P) acting on P.
RepresentationVerdict classify_poset(FinitePoset const& poset);

}  // namespace posrep
