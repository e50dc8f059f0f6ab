#pragma once

// Finite and finitely-generated groups with a uniform element algebra.
//
// Elements are opaque canonical byte strings: two elements of the same group
// are equal iff their encodings are byte-equal, so they can be hashed and
// compared without knowing the family. Each concrete group knows how to
// multiply, invert, format and parse its own encodings.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace posrep {

class Element {
 public:
  Element() = default;
  explicit Element(std::string bytes) : bytes_(std::move(bytes)) {}

  std::string const& bytes() const noexcept { return bytes_; }

  friend bool operator==(Element const&, Element const&) = default;
  friend std::strong_ordering operator<=>(Element const& a, Element const& b) {
    return a.bytes_.compare(b.bytes_) <=> 0;
  }

 private:
  std::string bytes_;
};

struct ElementHash {
  std::size_t operator()(Element const& e) const noexcept {
    return std::hash<std::string>{}(e.bytes());
  }
};

template <typename V>
using ElementMap = std::unordered_map<Element, V, ElementHash>;

class Group {
 public:
  virtual ~Group() = default;

  /// Descriptor string in the CLI grammar, e.g. "z:6" or "prod(z:3,z:3)".
  virtual std::string descriptor() const = 0;
  virtual Element identity() const = 0;
  virtual Element multiply(Element const& a, Element const& b) const = 0;
  virtual Element inverse(Element const& a) const = 0;
  /// nullopt for infinite groups.
  virtual std::optional<std::uint64_t> order() const = 0;
  /// All elements in a fixed deterministic order. Throws NotEnumerable for
  /// infinite groups and CapExceeded for finite groups too large to list.
  virtual std::vector<Element> elements() const;
  virtual std::string format(Element const& a) const = 0;
  virtual Element parse_element(std::string_view text) const = 0;

  bool is_finite() const { return order().has_value(); }
  Element power(Element const& a, std::int64_t k) const;
  /// Order of `a`; throws CapExceeded if it exceeds `cap`.
  std::uint64_t element_order(Element const& a, std::uint64_t cap = 1u << 24) const;
};

using GroupPtr = std::shared_ptr<const Group>;

// ---------------------------------------------------------------------------
// Concrete families

class CyclicGroup final : public Group {
 public:
  explicit CyclicGroup(std::uint64_t n);
  std::string descriptor() const override;
  Element identity() const override;
  Element multiply(Element const& a, Element const& b) const override;
  Element inverse(Element const& a) const override;
  std::optional<std::uint64_t> order() const override { return n_; }
  std::vector<Element> elements() const override;
  std::string format(Element const& a) const override;
  Element parse_element(std::string_view text) const override;

  Element element(std::int64_t residue) const;
  std::uint64_t residue(Element const& a) const;
  std::uint64_t modulus() const { return n_; }

 private:
  std::uint64_t n_;
  int width_;
};

/// (Z_p)^k with exponent-vector encoding.
class ElementaryAbelianGroup final : public Group {
 public:
  ElementaryAbelianGroup(int p, int k);
  std::string descriptor() const override;
  Element identity() const override;
  Element multiply(Element const& a, Element const& b) const override;
  Element inverse(Element const& a) const override;
  std::optional<std::uint64_t> order() const override;
  std::vector<Element> elements() const override;
  std::string format(Element const& a) const override;
  Element parse_element(std::string_view text) const override;

  Element element(std::vector<int> const& exponents) const;
  std::vector<int> exponents(Element const& a) const;

 private:
  int p_;
  int k_;
};

/// S_n acting on {1..n}; (ab)(i) = a(b(i)).
class SymmetricGroup final : public Group {
 public:
  explicit SymmetricGroup(int n);
  std::string descriptor() const override;
  Element identity() const override;
  Element multiply(Element const& a, Element const& b) const override;
  Element inverse(Element const& a) const override;
  std::optional<std::uint64_t> order() const override;
  std::vector<Element> elements() const override;
  /// Cycle notation with 1-based points, "e" for the identity.
  std::string format(Element const& a) const override;
  Element parse_element(std::string_view text) const override;

  /// 0-based image table.
  Element element(std::vector<int> const& images) const;
  std::vector<int> images(Element const& a) const;

 private:
  int n_;
};

/// Dihedral group of order 2n, elements r^k s^f.
class DihedralGroup final : public Group {
 public:
  explicit DihedralGroup(int n);
  std::string descriptor() const override;
  Element identity() const override;
  Element multiply(Element const& a, Element const& b) const override;
  Element inverse(Element const& a) const override;
  std::optional<std::uint64_t> order() const override;
  std::vector<Element> elements() const override;
  std::string format(Element const& a) const override;
  Element parse_element(std::string_view text) const override;

  Element element(int rotation, bool reflection) const;

 private:
  int n_;
};

/// Quaternion group {±1, ±i, ±j, ±k}.
class QuaternionGroup final : public Group {
 public:
  std::string descriptor() const override { return "q8"; }
  Element identity() const override;
  Element multiply(Element const& a, Element const& b) const override;
  Element inverse(Element const& a) const override;
  std::optional<std::uint64_t> order() const override { return 8; }
  std::vector<Element> elements() const override;
  std::string format(Element const& a) const override;
  Element parse_element(std::string_view text) const override;
};

/// SL_2(Z_p) with entries stored as residues mod p.
class SpecialLinearGroup final : public Group {
 public:
  struct Matrix {
    std::uint64_t a, b, c, d;
    friend bool operator==(Matrix const&, Matrix const&) = default;
  };

  explicit SpecialLinearGroup(std::uint64_t p);
  std::string descriptor() const override;
  Element identity() const override;
  Element multiply(Element const& a, Element const& b) const override;
  Element inverse(Element const& a) const override;
  std::optional<std::uint64_t> order() const override;
  std::vector<Element> elements() const override;
  std::string format(Element const& a) const override;
  Element parse_element(std::string_view text) const override;

  /// Entries are reduced mod p; throws InvalidArgument if det != 1.
  Element element(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) const;
  Matrix matrix(Element const& e) const;
  std::uint64_t prime() const { return p_; }

 private:
  Element encode(Matrix const& m) const;
  std::uint64_t p_;
  int width_;
};

class DirectProduct final : public Group {
 public:
  explicit DirectProduct(std::vector<GroupPtr> factors);
  std::string descriptor() const override;
  Element identity() const override;
  Element multiply(Element const& a, Element const& b) const override;
  Element inverse(Element const& a) const override;
  std::optional<std::uint64_t> order() const override;
  std::vector<Element> elements() const override;
  /// "(a;b;...)"
  std::string format(Element const& a) const override;
  Element parse_element(std::string_view text) const override;

  Element element(std::vector<Element> const& components) const;
  std::vector<Element> components(Element const& a) const;
  std::vector<GroupPtr> const& factors() const { return factors_; }

 private:
  std::vector<GroupPtr> factors_;
};

/// The infinite cyclic group Z, written additively.
class IntegerGroup final : public Group {
 public:
  std::string descriptor() const override { return "int"; }
  Element identity() const override;
  Element multiply(Element const& a, Element const& b) const override;
  Element inverse(Element const& a) const override;
  std::optional<std::uint64_t> order() const override { return std::nullopt; }
  std::string format(Element const& a) const override;
  Element parse_element(std::string_view text) const override;

  Element element(std::int64_t v) const;
  std::int64_t value(Element const& a) const;
};

// ---------------------------------------------------------------------------
// Factories

bool is_prime(std::uint64_t n);

GroupPtr cyclic(std::uint64_t n);
GroupPtr elementary_abelian(int p, int k);
GroupPtr symmetric(int n);
GroupPtr dihedral(int n);
GroupPtr quaternion();
GroupPtr special_linear(std::uint64_t p);
GroupPtr direct_product(std::vector<GroupPtr> factors);
GroupPtr integers();

/// Parses a group descriptor: `z:6`, `z2^k:3`, `s:3`, `d:4`, `q8`, `sl2:13`,
/// `int`, `f:2`, `prod(z:3,z:3)`.
GroupPtr make_group(std::string_view descriptor);

/// The Margulis pair x = [[1,2],[0,1]], y = [[1,0],[2,1]] in SL_2(Z_p).
std::pair<Element, Element> margulis_generators(SpecialLinearGroup const& g);

/// Order of the subgroup generated by `gens`, or nullopt once it exceeds `cap`.
std::optional<std::uint64_t> generated_subgroup_order(Group const& g,
                                                      std::span<const Element> gens,
                                                      std::uint64_t cap);

// ---------------------------------------------------------------------------
// Indexed finite groups

/// A finite group materialized as a multiplication table over indices
/// 0..n-1, in the order of Group::elements().
class CayleyTable {
 public:
  static constexpr std::size_t kDefaultMaxOrder = 1u << 14;

  explicit CayleyTable(GroupPtr group, std::size_t max_order = kDefaultMaxOrder);

  std::size_t size() const { return elements_.size(); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * size() + b]; }
  int inv(int a) const { return inv_[a]; }
  Element const& element(int i) const { return elements_[i]; }
  int index_of(Element const& e) const;
  std::string label(int i) const { return group_->format(elements_[i]); }
  Group const& group() const { return *group_; }
  GroupPtr const& group_ptr() const { return group_; }
  std::string descriptor() const { return group_->descriptor(); }

  /// Indices of the subgroup generated by `gens` (sorted).
  std::vector<int> generated_subgroup(std::span<const int> gens) const;

 private:
  GroupPtr group_;
  std::vector<Element> elements_;
  ElementMap<int> index_;
  std::vector<int> mul_;
  std::vector<int> inv_;
  int identity_ = 0;
};

using CayleyTablePtr = std::shared_ptr<const CayleyTable>;

/// An automorphism of a finite group given by its image table.
struct TableAutomorphism {
  std::vector<int> image;

  int operator()(int g) const { return image[g]; }
  bool is_identity() const;
  TableAutomorphism compose(TableAutomorphism const& inner) const;  // this ∘ inner
  TableAutomorphism inverse() const;
  friend auto operator<=>(TableAutomorphism const&, TableAutomorphism const&) = default;
};

/// A small generating tuple chosen greedily in index order.
std::vector<int> greedy_generating_tuple(CayleyTable const& g);

/// Every automorphism of `g`, sorted by image table. Found by mapping a fixed
/// generating tuple onto candidate tuples of matching element orders.
std::vector<TableAutomorphism> group_automorphisms(CayleyTable const& g,
                                                   std::size_t max_order = 16);

/// A small subset of `all` generating the same group (greedy closure).
std::vector<TableAutomorphism> automorphism_generators(std::vector<TableAutomorphism> const& all);

}  // namespace posrep
