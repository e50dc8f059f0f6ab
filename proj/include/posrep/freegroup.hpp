#pragma once

// Words in free groups: reduction, cyclic reduction, evaluation in concrete
// groups, two-generator subgroup rank by Stallings folding, and the
// construction of a single word whose solution set contains those of several
// given words.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "posrep/group.hpp"

namespace posrep {

/// A freely reduced word. Letters are nonzero integers: +i is the i-th
/// generator (1-based), -i its inverse.
class ReducedWord {
 public:
  ReducedWord() = default;

  /// Freely reduces an arbitrary letter sequence.
  static ReducedWord reduce(std::span<const int> letters);
  static ReducedWord generator(int index);

  /// Text syntax: letters from "xyzwvuts" (generators 1..8), uppercase for
  /// inverses, optional "^k" exponents, whitespace ignored. "e", "1" and the
  /// empty string denote the trivial word.
  static ReducedWord parse(std::string_view text);
  /// Space separated letters, "e" for the trivial word.
  std::string to_string() const;
  /// Runs of a letter written as powers, e.g. "x^4 Y^3".
  std::string to_power_string() const;

  std::vector<int> const& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool is_trivial() const noexcept { return letters_.empty(); }
  /// Largest generator index used (0 for the trivial word).
  int arity() const;

  ReducedWord inverse() const;
  ReducedWord power(std::int64_t k) const;
  friend ReducedWord operator*(ReducedWord const& a, ReducedWord const& b);

  bool is_cyclically_reduced() const;

  friend bool operator==(ReducedWord const&, ReducedWord const&) = default;
  friend auto operator<=>(ReducedWord const&, ReducedWord const&) = default;

 private:
  std::vector<int> letters_;
};

char letter_symbol(int letter);

ReducedWord commutator(ReducedWord const& a, ReducedWord const& b);

/// w = conjugator · core · conjugator⁻¹ with core cyclically reduced.
struct CyclicDecomposition {
  ReducedWord conjugator;
  ReducedWord core;
};
CyclicDecomposition cyclic_decomposition(ReducedWord const& w);
ReducedWord cyclic_reduce(ReducedWord const& w);

/// The shortest r with w = r^k, k ≥ 1 (w cyclically reduced or not; found
/// by scanning divisors of |w|).
ReducedWord primitive_root(ReducedWord const& w);

/// Product of images[i-1]^{±1} along the letters of w.
Element evaluate(ReducedWord const& w, std::span<const Element> images, Group const& g);
/// Same over a Cayley table with generator images given as indices.
int evaluate(ReducedWord const& w, std::span<const int> images, CayleyTable const& g);

struct StallingsGraph {
  int vertices = 0;
  int base = 0;
  struct Edge {
    int from;
    int label;  // generator index, always positive
    int to;
    friend auto operator<=>(Edge const&, Edge const&) = default;
  };
  std::vector<Edge> edges;

  int rank() const { return static_cast<int>(edges.size()) - vertices + 1; }
};

/// Folded core graph of the subgroup generated by `words`.
StallingsGraph fold_subgroup(std::span<const ReducedWord> words);

struct RankResult {
  int rank = 0;
  /// For rank 1: a generator u of the subgroup with w1 = u^l and w2 = u^m.
  std::optional<ReducedWord> generator;
  std::optional<std::pair<std::int64_t, std::int64_t>> exponents;
};

RankResult stallings_rank(ReducedWord const& w1, ReducedWord const& w2);

/// A nontrivial word w such that every tuple solving any input word in any
/// group also solves w. Inputs are combined pairwise from the left: a rank-1
/// pair w1 = u^l, w2 = u^m gives u^{lm}, a rank-2 pair gives [w1, w2].
/// Throws InvalidArgument if an input is trivial or the list is empty.
ReducedWord combine_words(std::span<const ReducedWord> words);

/// The free group F_d; elements are reduced words, one signed byte per letter.
class FreeGroup final : public Group {
 public:
  explicit FreeGroup(int rank);
  std::string descriptor() const override { return "f:" + std::to_string(rank_); }
  Element identity() const override { return Element(); }
  Element multiply(Element const& a, Element const& b) const override;
  Element inverse(Element const& a) const override;
  std::optional<std::uint64_t> order() const override { return std::nullopt; }
  std::string format(Element const& a) const override;
  Element parse_element(std::string_view text) const override;

  int rank() const { return rank_; }
  Element element(ReducedWord const& w) const;
  ReducedWord word(Element const& a) const;
  Element generator(int index) const { return element(ReducedWord::generator(index)); }

 private:
  int rank_;
};

GroupPtr free_group(int rank);

}  // namespace posrep
