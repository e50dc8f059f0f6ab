#include "posrep/poset.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "posrep/error.hpp"
#include "posrep/text.hpp"

namespace posrep {

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (test(i, j)) t.set(j, i);
  return t;
}

void BitMatrix::close_transitively() {
  for (std::size_t k = 0; k < n_; ++k) {
    std::uint64_t const* rk = row(k);
    for (std::size_t i = 0; i < n_; ++i) {
      if (!test(i, k)) continue;
      std::uint64_t* ri = row(i);
      for (std::size_t w = 0; w < words_; ++w) ri[w] |= rk[w];
    }
  }
}

// ---------------------------------------------------------------------------

FinitePoset::FinitePoset(std::vector<PointInfo> points, BitMatrix less, std::size_t max_points)
    : points_(std::move(points)), less_(std::move(less)) {
  std::size_t n = points_.size();
  if (n > max_points) {
    throw CapExceeded("poset has " + std::to_string(n) + " points, cap is " + std::to_string(max_points));
  }
  if (less_.size() != n) throw InvalidArgument("relation size does not match point count");
  for (std::size_t i = 0; i < n; ++i) {
    if (less_.test(i, i)) throw InvalidArgument("order relation is not irreflexive at " + points_[i].label);
    for (std::size_t j = 0; j < n; ++j) {
      if (!less_.test(i, j)) continue;
      if (less_.test(j, i)) throw InvalidArgument("order relation is not antisymmetric");
      for (std::size_t w = 0; w < less_.words_per_row(); ++w) {
        if ((less_.row(j)[w] & ~less_.row(i)[w]) != 0) throw InvalidArgument("order relation is not transitive");
      }
    }
  }
  // a ⋖ b iff a < b and no c with a < c < b.
  cover_ = BitMatrix(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!less_.test(a, b)) continue;
      bool direct = true;
      for (std::size_t c = 0; c < n && direct; ++c) direct = !(less_.test(a, c) && less_.test(c, b));
      if (direct) cover_.set(a, b);
    }
  }
}

FinitePoset FinitePoset::from_relations(std::vector<PointInfo> points, std::span<const std::pair<int, int>> pairs,
                                        std::size_t max_points) {
  std::size_t n = points.size();
  if (n > max_points) {
    throw CapExceeded("poset has " + std::to_string(n) + " points, cap is " + std::to_string(max_points));
  }
  BitMatrix m(n);
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n) {
      throw InvalidArgument("relation refers to a missing point");
    }
    m.set(a, b);
  }
  m.close_transitively();
  for (std::size_t i = 0; i < n; ++i)
    if (m.test(i, i)) throw InvalidArgument("relations contain a cycle through " + points[i].label);
  return FinitePoset(std::move(points), std::move(m), max_points);
}

std::vector<std::pair<int, int>> FinitePoset::covers() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b)
      if (cover_.test(a, b)) out.emplace_back(static_cast<int>(a), static_cast<int>(b));
  return out;
}

std::vector<int> FinitePoset::upper_covers(int a) const {
  std::vector<int> out;
  for (std::size_t b = 0; b < size(); ++b)
    if (cover_.test(a, b)) out.push_back(static_cast<int>(b));
  return out;
}

std::vector<int> FinitePoset::lower_covers(int a) const {
  std::vector<int> out;
  for (std::size_t b = 0; b < size(); ++b)
    if (cover_.test(b, a)) out.push_back(static_cast<int>(b));
  return out;
}

int FinitePoset::find_label(std::string_view label) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (points_[i].label == label) return static_cast<int>(i);
  return -1;
}

std::vector<int> FinitePoset::levels() const {
  std::size_t n = size();
  // Process points by number of elements below them: that is a linear extension.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  BitMatrix below = less_.transposed();
  std::vector<std::size_t> down(n);
  for (std::size_t i = 0; i < n; ++i) down[i] = below.row_count(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return down[a] < down[b]; });
  std::vector<int> level(n, 0);
  for (int b : order)
    for (std::size_t a = 0; a < n; ++a)
      if (less_.test(a, b)) level[b] = std::max(level[b], level[a] + 1);
  return level;
}

int FinitePoset::height() const {
  auto l = levels();
  return l.empty() ? 0 : *std::max_element(l.begin(), l.end());
}

std::vector<int> FinitePoset::components() const {
  std::size_t n = size();
  std::vector<int> comp(n, -1);
  int next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{static_cast<int>(s)};
    comp[s] = next;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (std::size_t u = 0; u < n; ++u) {
        if (comp[u] < 0 && comparable(v, static_cast<int>(u))) {
          comp[u] = next;
          stack.push_back(static_cast<int>(u));
        }
      }
    }
    ++next;
  }
  return comp;
}

std::size_t FinitePoset::component_count() const {
  auto c = components();
  return c.empty() ? 0 : static_cast<std::size_t>(*std::max_element(c.begin(), c.end()) + 1);
}

FinitePoset FinitePoset::opposite() const { return FinitePoset(points_, less_.transposed(), std::max(size(), kDefaultMaxPoints)); }

bool FinitePoset::is_automorphism(Permutation const& p) const {
  std::size_t n = size();
  if (p.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (int v : p) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || hit[v]) return false;
    hit[v] = true;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (less_.test(a, b) != less_.test(p[a], p[b])) return false;
  return true;
}

// ---------------------------------------------------------------------------

LabeledDigraph::LabeledDigraph(std::vector<PointInfo> vertices, std::vector<std::pair<int, int>> edges,
                               std::vector<int> part)
    : vertices_(std::move(vertices)), adj_(vertices_.size()), part_(std::move(part)) {
  if (!part_.empty() && part_.size() != vertices_.size()) throw InvalidArgument("bipartition size mismatch");
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= size() || static_cast<std::size_t>(b) >= size()) {
      throw InvalidArgument("edge refers to a missing vertex");
    }
    if (!part_.empty() && part_[a] == part_[b]) throw InvalidArgument("edge inside one side of the bipartition");
    adj_.set(a, b);
  }
}

std::vector<std::pair<int, int>> LabeledDigraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b)
      if (adj_.test(a, b)) out.emplace_back(static_cast<int>(a), static_cast<int>(b));
  return out;
}

bool LabeledDigraph::is_automorphism(Permutation const& p) const {
  std::size_t n = size();
  if (p.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (int v : p) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || hit[v]) return false;
    hit[v] = true;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (adj_.test(a, b) != adj_.test(p[a], p[b])) return false;
  return true;
}

// ---------------------------------------------------------------------------

CayleySpec::CayleySpec(CayleyTablePtr t, std::vector<int> subset) : table(std::move(t)), s(std::move(subset)) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (int x : s)
    if (x < 0 || static_cast<std::size_t>(x) >= table->size()) throw InvalidArgument("connection set index out of range");
}

std::string CayleySpec::describe() const {
  std::vector<std::string> labels;
  for (int x : s) labels.push_back(table->label(x));
  return table->descriptor() + " {" + text::join(labels, ", ") + "}";
}

CayleySpec make_spec(std::string_view descriptor, std::vector<std::string> const& elements) {
  auto table = std::make_shared<CayleyTable>(make_group(descriptor));
  std::vector<int> s;
  for (auto const& e : elements) s.push_back(table->index_of(table->group().parse_element(e)));
  return CayleySpec(table, s);
}

CayleySpec complement_connection(CayleySpec const& spec) {
  if (spec.s.size() == spec.order()) throw InvalidArgument("the complement of S = G is empty");
  std::vector<int> c;
  for (std::size_t i = 0; i < spec.order(); ++i)
    if (!std::binary_search(spec.s.begin(), spec.s.end(), static_cast<int>(i))) c.push_back(static_cast<int>(i));
  return CayleySpec(spec.table, c);
}

namespace {

std::vector<PointInfo> group_copies(CayleyTable const& t, int copies) {
  std::vector<PointInfo> pts;
  for (int c = 0; c < copies; ++c)
    for (std::size_t i = 0; i < t.size(); ++i)
      pts.push_back({t.label(static_cast<int>(i)) + std::string(static_cast<std::size_t>(c), '\''),
                     static_cast<int>(i), c, 0});
  return pts;
}

}  // namespace

FinitePoset build_cayley_poset(CayleySpec const& spec) {
  if (spec.s.empty()) throw InvalidArgument("connection set must be nonempty");
  auto const& t = *spec.table;
  int n = static_cast<int>(t.size());
  BitMatrix m(2 * static_cast<std::size_t>(n));
  for (int g = 0; g < n; ++g)
    for (int s : spec.s) m.set(g, n + t.mul(g, s));
  return FinitePoset(group_copies(t, 2), std::move(m));
}

LabeledDigraph build_haar_graph(CayleySpec const& spec) {
  if (spec.s.empty()) throw InvalidArgument("connection set must be nonempty");
  auto const& t = *spec.table;
  int n = static_cast<int>(t.size());
  std::vector<std::pair<int, int>> edges;
  for (int g = 0; g < n; ++g)
    for (int s : spec.s) edges.emplace_back(g, n + t.mul(g, s));
  std::vector<int> part(2 * static_cast<std::size_t>(n), 0);
  std::fill(part.begin() + n, part.end(), 1);
  return LabeledDigraph(group_copies(t, 2), std::move(edges), std::move(part));
}

LabeledDigraph build_drr_digraph(CayleyTable const& table, std::span<const int> s) {
  int n = static_cast<int>(table.size());
  std::vector<std::pair<int, int>> edges;
  for (int g = 0; g < n; ++g)
    for (int x : s) edges.emplace_back(g, table.mul(g, x));
  return LabeledDigraph(group_copies(table, 1), std::move(edges));
}

FinitePoset build_babai_poset(CayleyTable const& table, LabeledDigraph const& digraph) {
  int n = static_cast<int>(table.size());
  if (digraph.size() != table.size()) throw InvalidArgument("digraph is not on the group's elements");
  std::vector<std::pair<int, int>> rel;
  for (int g = 0; g < n; ++g) {
    rel.emplace_back(g, n + g);
    rel.emplace_back(n + g, 2 * n + g);
  }
  for (auto [g, h] : digraph.edges()) rel.emplace_back(g, 2 * n + h);
  return FinitePoset::from_relations(group_copies(table, 3), rel);
}

std::vector<Permutation> left_regular_action(CayleyTable const& table, FinitePoset const& poset) {
  std::map<std::pair<int, int>, int> where;  // (copy·layer key, element) -> point
  auto key = [](PointInfo const& p) { return p.copy * 1000003 + p.layer; };
  for (std::size_t i = 0; i < poset.size(); ++i) {
    auto const& p = poset.point(static_cast<int>(i));
    if (p.element < 0) throw InvalidArgument("poset point without group element: " + p.label);
    where[{key(p), p.element}] = static_cast<int>(i);
  }
  std::vector<Permutation> out;
  for (std::size_t a = 0; a < table.size(); ++a) {
    Permutation perm(poset.size());
    for (std::size_t i = 0; i < poset.size(); ++i) {
      auto const& p = poset.point(static_cast<int>(i));
      auto it = where.find({key(p), table.mul(static_cast<int>(a), p.element)});
      if (it == where.end()) throw InvalidArgument("left translation leaves the poset");
      perm[i] = it->second;
    }
    out.push_back(std::move(perm));
  }
  return out;
}

}  // namespace posrep
