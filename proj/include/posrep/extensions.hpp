#pragma once

// Extensions by ℤ: the group H on G × ℤ twisted by an automorphism ψ, finite
// windows of the posets obtained by gluing copies of a block poset along ψ,
// and checks for gradedness, the H-action and the rank homomorphism.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "posrep/group.hpp"
#include "posrep/poset.hpp"

namespace posrep {

/// An automorphism ψ(1) of G; ψ(n) is its n-th power.
struct GroupAutomorphism {
  std::string name;
  std::function<Element(Element const&)> apply;
  std::function<Element(Element const&)> apply_inverse;

  Element power(Element g, std::int64_t n) const;
};

GroupAutomorphism identity_automorphism();
/// g ↦ g^k, for abelian G: "id", "neg" (k = −1) or "mul:k".
GroupAutomorphism parse_automorphism(GroupPtr const& g, std::string_view text);

/// Checks the homomorphism and bijectivity conditions on every element of a
/// finite group, or on `sample` for an infinite one. Throws InvalidArgument.
void validate_automorphism(Group const& g, GroupAutomorphism const& psi, std::vector<Element> const& sample = {});

/// G × ℤ with (g₁,n₁)(g₂,n₂) = (ψ(n₂)(g₁)·g₂, n₁+n₂).
class ExtensionGroup final : public Group {
 public:
  ExtensionGroup(GroupPtr base, GroupAutomorphism psi);

  std::string descriptor() const override;
  Element identity() const override;
  Element multiply(Element const& a, Element const& b) const override;
  Element inverse(Element const& a) const override;
  std::optional<std::uint64_t> order() const override { return std::nullopt; }
  /// "(g,n)"
  std::string format(Element const& a) const override;
  Element parse_element(std::string_view text) const override;

  Element element(Element const& g, std::int64_t n) const;
  Element base_part(Element const& a) const;
  std::int64_t level(Element const& a) const;
  /// (g,n) ↦ (ψ(−n)(g), −n), as a pair in G ⋊_ψ ℤ with (a,m)(b,k) = (a·ψ(m)(b), m+k).
  std::pair<Element, std::int64_t> to_semidirect(Element const& a) const;

  Group const& base() const { return *base_; }
  GroupPtr const& base_ptr() const { return base_; }
  GroupAutomorphism const& psi() const { return psi_; }

 private:
  GroupPtr base_;
  GroupAutomorphism psi_;
};

enum class WindowKind { Product1, Product2 };
std::string to_string(WindowKind k);

/// A finite window of a glued poset. Each point is a pair (element, layer
/// L). With t = 1 (Product1) or t = 2 (Product2), the point lies in block
/// ⌊L/t⌋ as copy L mod t of G; copy t of block k is copy 0 of block k+1
/// after applying ψ.
struct Window {
  WindowKind kind = WindowKind::Product1;
  int radius = 0;  // blocks −N..N
  GroupPtr group;
  GroupAutomorphism psi;
  std::vector<Element> elements;
  ElementMap<int> element_index;
  FinitePoset poset;

  int copies() const { return kind == WindowKind::Product1 ? 1 : 2; }
  int min_layer() const { return -copies() * radius; }
  int max_layer() const { return copies() * (radius + 1); }
  /// Point index, or −1 when (element, layer) is outside the window.
  int point(Element const& g, int layer) const;
  int layer(int point) const { return poset.point(point).layer; }
  int block(int point) const;
};

struct WindowOptions {
  std::size_t max_points = 4096;
  /// Cap on |G| for checking that the block is a representation with the
  /// automorphism engine.
  std::size_t verify_order = 64;
};

/// Copies P(G,S) × {n}, |n| ≤ N, glued by (g′,n) ~ (ψ(g), n+1): layers
/// −N..N+1, with (g,L) < (ψ(h),L+1) whenever g⁻¹h ∈ S. Requires P(G,S) to be
/// a Cayley representation (checked when |G| ≤ verify_order) and G ≠ Z₂.
Window build_product1_window(CayleySpec const& spec, GroupAutomorphism const& psi, int radius,
                             WindowOptions const& options = {});

/// The same gluing over a finite set of elements of a possibly infinite
/// group, keeping only relations between listed elements. ψ must map the
/// list onto itself. No representation precondition is checked.
Window build_product1_window(GroupPtr const& group, std::vector<Element> const& elements,
                             std::vector<Element> const& s, GroupAutomorphism const& psi, int radius,
                             WindowOptions const& options = {});

/// Copies B × {n}, |n| ≤ N, of a three-orbit block on G ⊔ G′ ⊔ G″ glued by
/// (g″,n) ~ (ψ(g), n+1). `block` points must record element and copy. G must
/// not be Z₂², Z₂³, Z₂⁴ or Z₃², and B must be semi-regular with three orbits
/// and Aut(B) = G (checked when |G| ≤ verify_order).
Window build_product2_window(CayleyTablePtr const& table, FinitePoset const& block, GroupAutomorphism const& psi,
                             int radius, WindowOptions const& options = {});

struct Grading {
  bool graded = false;
  std::vector<int> rank;  // when graded; minimum 0 in each component
  /// When not graded: two saturated chains with the same ends and different
  /// lengths, if such a pair exists.
  std::optional<std::pair<std::vector<int>, std::vector<int>>> chains;
  /// Otherwise a closed walk along covers whose up and down steps differ.
  std::vector<int> cycle;
};

/// Rank function by propagating ρ(y) = ρ(x) + 1 along covers.
Grading gradedness(FinitePoset const& p);

/// {lo, …, hi} with a < b iff b − a ≥ gap.
FinitePoset integer_gap_poset(int lo, int hi, int gap = 2);

struct ActionReport {
  std::size_t elements_checked = 0;
  bool maps_into_window = true;
  bool injective = true;
  bool order_preserving = true;
  bool free = true;
  /// Every interior point is h·x₀ (or h·x₁ for the primed orbit).
  bool interior_transitive = true;
  std::size_t orbit_types = 0;
  /// The infinite poset is only probed on a finite window.
  bool necessary_only = true;
  std::string failure;
  /// Auxiliary: no window automorphism other than the identity fixes (e,0).
  std::optional<bool> window_rigid;
};

/// Applies h = (g,n) for every g ∈ G and |n| ≤ N−1 to the points whose blocks
/// stay inside the window. Requires a finite group.
ActionReport check_action_on_window(Window const& w, bool compute_rigidity = true);

/// Image of a point under h = (g, n): (ψ(k)(g)·g₂, L + t·n) for a point
/// (g₂, L) in block k. Returns −1 when the image leaves the window.
int act_on_window(Window const& w, Element const& g, std::int64_t n, int point);

struct RankHomomorphismReport {
  bool graded = false;
  std::size_t pairs_checked = 0;
  bool additive = true;
  bool onto_interval = true;  // f takes every value in −N..N
  bool matches_level = true;  // f(g,n) = n
  std::string failure;
};

/// f(h) = ρ(h·x₀) with x₀ = (e, layer 0) and ρ(x₀) = 0, checked for
/// additivity on all pairs h₁, h₂ (from `elements`) whose products stay in
/// the window.
RankHomomorphismReport rank_epimorphism_check(Window const& w);

}  // namespace posrep
