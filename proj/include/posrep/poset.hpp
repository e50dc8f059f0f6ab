#pragma once

// Finite posets and digraphs on labeled points, and the constructions built
// from a group and a connection set: Cayley posets P(G,S), Haar graphs
// B(G,S), digraphs with edges (g, gs) and the three-copy poset over such a
// digraph.

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "posrep/group.hpp"

namespace posrep {

using Permutation = std::vector<int>;

/// Square bit matrix with rows packed into 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  std::size_t size() const { return n_; }
  std::size_t words_per_row() const { return words_; }
  bool test(std::size_t i, std::size_t j) const { return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u; }
  void set(std::size_t i, std::size_t j, bool v = true) {
    auto& w = bits_[i * words_ + j / 64];
    auto mask = std::uint64_t{1} << (j % 64);
    w = v ? (w | mask) : (w & ~mask);
  }
  std::uint64_t const* row(std::size_t i) const { return bits_.data() + i * words_; }
  std::uint64_t* row(std::size_t i) { return bits_.data() + i * words_; }
  std::size_t row_count(std::size_t i) const {
    std::size_t c = 0;
    for (std::size_t w = 0; w < words_; ++w) c += static_cast<std::size_t>(std::popcount(row(i)[w]));
    return c;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  BitMatrix transposed() const;
  /// Warshall closure in place.
  void close_transitively();

  friend bool operator==(BitMatrix const&, BitMatrix const&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Where a point came from: the group element (table index, or -1), which
/// copy of the group (0 plain, 1 primed, 2 double primed) and a layer index
/// used by glued windows.
struct PointInfo {
  std::string label;
  int element = -1;
  int copy = 0;
  int layer = 0;
};

class FinitePoset {
 public:
  static constexpr std::size_t kDefaultMaxPoints = 256;

  FinitePoset() = default;
  /// `less` must already be a strict order; throws InvalidArgument otherwise.
  FinitePoset(std::vector<PointInfo> points, BitMatrix less, std::size_t max_points = kDefaultMaxPoints);

  /// Transitive closure of the given pairs (a < b); rejects cycles.
  static FinitePoset from_relations(std::vector<PointInfo> points, std::span<const std::pair<int, int>> pairs,
                                    std::size_t max_points = kDefaultMaxPoints);

  std::size_t size() const { return points_.size(); }
  bool less(int a, int b) const { return less_.test(a, b); }
  bool comparable(int a, int b) const { return less_.test(a, b) || less_.test(b, a); }
  BitMatrix const& relation() const { return less_; }
  BitMatrix const& cover_matrix() const { return cover_; }
  std::vector<std::pair<int, int>> covers() const;
  std::vector<int> upper_covers(int a) const;
  std::vector<int> lower_covers(int a) const;
  std::size_t comparable_pairs() const { return less_.count(); }

  PointInfo const& point(int i) const { return points_[i]; }
  std::vector<PointInfo> const& points() const { return points_; }
  std::string const& label(int i) const { return points_[i].label; }
  int find_label(std::string_view label) const;

  /// Length of the longest chain ending at each point (minimal points: 0).
  std::vector<int> levels() const;
  /// Number of edges in a longest chain; 0 for antichains and the empty poset.
  int height() const;
  /// Components of the comparability graph, as a component id per point.
  std::vector<int> components() const;
  std::size_t component_count() const;
  bool is_connected() const { return component_count() <= 1; }

  FinitePoset opposite() const;
  /// True iff p preserves and reflects the order.
  bool is_automorphism(Permutation const& p) const;

  friend bool operator==(FinitePoset const& a, FinitePoset const& b) { return a.less_ == b.less_; }

 private:
  std::vector<PointInfo> points_;
  BitMatrix less_;
  BitMatrix cover_;
};

class LabeledDigraph {
 public:
  LabeledDigraph() = default;
  LabeledDigraph(std::vector<PointInfo> vertices, std::vector<std::pair<int, int>> edges,
                 std::vector<int> part = {});

  std::size_t size() const { return vertices_.size(); }
  bool has_edge(int a, int b) const { return adj_.test(a, b); }
  BitMatrix const& adjacency() const { return adj_; }
  std::vector<std::pair<int, int>> edges() const;
  std::size_t edge_count() const { return adj_.count(); }
  std::vector<PointInfo> const& vertices() const { return vertices_; }
  std::string const& label(int i) const { return vertices_[i].label; }
  bool is_bipartite_labeled() const { return !part_.empty(); }
  std::vector<int> const& part() const { return part_; }
  bool is_automorphism(Permutation const& p) const;

 private:
  std::vector<PointInfo> vertices_;
  BitMatrix adj_;
  std::vector<int> part_;
};

/// A group with a connection set, S given as sorted table indices.
struct CayleySpec {
  CayleyTablePtr table;
  std::vector<int> s;

  CayleySpec() = default;
  CayleySpec(CayleyTablePtr t, std::vector<int> subset);
  std::size_t order() const { return table->size(); }
  std::string describe() const;
};

CayleySpec make_spec(std::string_view descriptor, std::vector<std::string> const& elements);
CayleySpec complement_connection(CayleySpec const& spec);

/// Points 0..n-1 are G, n..2n-1 are G′, and g < h′ iff g⁻¹h ∈ S.
FinitePoset build_cayley_poset(CayleySpec const& spec);
/// Bipartite graph with edges (g, (gs)′).
LabeledDigraph build_haar_graph(CayleySpec const& spec);
/// Digraph on G with edges (g, gs).
LabeledDigraph build_drr_digraph(CayleyTable const& table, std::span<const int> s);
/// Points G, G′, G″ with g < g′ < g″ and g < h″ for each edge (g, h).
FinitePoset build_babai_poset(CayleyTable const& table, LabeledDigraph const& digraph);

/// Left translations x ↦ a·x applied to every copy of G in a poset whose
/// points record their element index (one permutation per group element,
/// in table order).
std::vector<Permutation> left_regular_action(CayleyTable const& table, FinitePoset const& poset);

}  // namespace posrep
