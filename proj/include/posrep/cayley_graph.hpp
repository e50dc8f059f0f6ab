#pragma once

// Cayley graphs of a group with respect to a generator list: neighbors, BFS
// balls, girth by collision search, S-neighborhoods and affinity.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "posrep/freegroup.hpp"
#include "posrep/group.hpp"

namespace posrep {

/// Γ(G, gens). A generator equal to e contributes a loop, an involution a
/// single (doubled) edge, anything else the two edges g·s and g·s⁻¹.
class CayleyGraph {
 public:
  CayleyGraph(GroupPtr group, std::vector<Element> gens);

  Group const& group() const { return *group_; }
  GroupPtr const& group_ptr() const { return group_; }
  std::vector<Element> const& generators() const { return gens_; }
  /// Element reached from g along letter ±i (1-based generator index).
  Element step(Element const& g, int letter) const;
  std::vector<Element> neighbors(Element const& g) const;
  int degree() const;

 private:
  GroupPtr group_;
  std::vector<Element> gens_;
  std::vector<Element> inverses_;
  std::vector<int> multiplicity_;
};

struct GirthOptions {
  int limit = 24;
  std::size_t node_budget = std::size_t{1} << 23;
};

struct GirthResult {
  /// Shortest relation length; nullopt when no relation of length ≤ limit exists.
  std::optional<int> girth;
  int limit = 0;
  /// A shortest relation, canonical up to rotation and inversion.
  std::optional<ReducedWord> witness;
  int radius = 0;  // deepest fully expanded BFS level
  std::size_t nodes = 0;
};

/// Level-synchronous BFS from e over non-backtracking extensions; every
/// collision u·s = v yields the relation w_u s w_v⁻¹. Expanding level d
/// detects every relation of length 2d+1 and 2d+2, so levels up to
/// ⌊(limit−1)/2⌋ decide the question. Throws CapExceeded (mentioning the
/// radius reached) when the ball outgrows the node budget.
GirthResult girth(CayleyGraph const& graph, GirthOptions const& options = {});

/// Minimum over cyclic rotations of w and w⁻¹, ordering x < y < … < X < Y < ….
ReducedWord canonical_relation(ReducedWord const& w);

/// Girth by listing every cyclically reduced word up to `max_length`; used
/// as an independent oracle for small cases.
std::optional<int> girth_by_words(CayleyGraph const& graph, int max_length);

struct BfsBall {
  Element center;
  int radius = 0;
  std::vector<Element> elements;     // in BFS order
  std::vector<int> distance;
  std::vector<int> parent;           // -1 for the center
  std::vector<int> parent_letter;    // letter from parent to this element
  ElementMap<int> index;

  std::size_t size() const { return elements.size(); }
  /// Reduced word reaching element i from the center along the BFS tree.
  ReducedWord word(int i) const;
};

BfsBall build_ball(CayleyGraph const& graph, Element const& center, int radius,
                   std::size_t node_budget = std::size_t{1} << 23);

/// True iff the ball has the level sizes 1, 2d, 2d(2d−1), … of the free group
/// on d = |gens| generators and its induced multigraph is a tree.
bool ball_matches_free_tree(CayleyGraph const& graph, BfsBall const& ball);

/// N_S(g) = gSS⁻¹, sorted.
std::vector<Element> neighborhood(Group const& g, std::span<const Element> s, Element const& x);

/// α(g, h) = |N_S(g) ∩ N_S(h)|.
std::size_t affinity(Group const& g, std::span<const Element> s, Element const& a, Element const& b);

/// SS⁻¹ as table indices, sorted.
std::vector<int> difference_set(CayleyTable const& g, std::span<const int> s);

}  // namespace posrep
