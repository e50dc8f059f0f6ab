#include "posrep/aut.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "posrep/error.hpp"

namespace posrep {

namespace {

// A colored digraph: automorphisms preserve `out` and the initial colors.
struct View {
  std::size_t n = 0;
  BitMatrix out;
  BitMatrix in;
  std::vector<int> color;
};

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ull;
  return h ^ (h >> 29);
}

template <typename Key>
std::vector<int> rank_keys(std::vector<Key> const& keys) {
  std::vector<Key> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> out(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
  }
  return out;
}

struct Partition {
  std::vector<int> cell;
  int cells = 0;
  std::uint64_t trace = 0;

  bool discrete() const { return static_cast<std::size_t>(cells) == cell.size(); }
};

// Equitable refinement. New cells are ordered by (old cell, signature), so
// the result and its trace depend only on the isomorphism type of the
// colored digraph.
Partition refine(View const& v, std::vector<int> const& colors) {
  Partition p;
  p.cell = rank_keys(colors);
  p.cells = p.cell.empty() ? 0 : *std::max_element(p.cell.begin(), p.cell.end()) + 1;
  std::size_t words = v.out.words_per_row();
  std::vector<std::size_t> sizes(static_cast<std::size_t>(p.cells), 0);
  for (int c : p.cell) ++sizes[c];
  p.trace = mix(0, v.n);
  for (auto s : sizes) p.trace = mix(p.trace, s);

  while (!p.discrete()) {
    auto c = static_cast<std::size_t>(p.cells);
    std::vector<std::uint64_t> masks(c * words, 0);
    for (std::size_t i = 0; i < v.n; ++i) masks[p.cell[i] * words + i / 64] |= std::uint64_t{1} << (i % 64);
    std::vector<std::vector<int>> sig(v.n, std::vector<int>(2 * c + 1));
    for (std::size_t i = 0; i < v.n; ++i) {
      auto& s = sig[i];
      s[0] = p.cell[i];
      std::uint64_t const* ro = v.out.row(i);
      std::uint64_t const* ri = v.in.row(i);
      for (std::size_t k = 0; k < c; ++k) {
        std::uint64_t const* m = masks.data() + k * words;
        int co = 0, ci = 0;
        for (std::size_t w = 0; w < words; ++w) {
          co += std::popcount(ro[w] & m[w]);
          ci += std::popcount(ri[w] & m[w]);
        }
        s[1 + k] = co;
        s[1 + c + k] = ci;
      }
    }
    std::vector<int> next = rank_keys(sig);
    int next_cells = *std::max_element(next.begin(), next.end()) + 1;
    // Trace: the sorted distinct signatures with multiplicities.
    std::map<int, std::size_t> count;
    for (int x : next) ++count[x];
    std::vector<int> rep(static_cast<std::size_t>(next_cells), -1);
    for (std::size_t i = 0; i < v.n; ++i)
      if (rep[next[i]] < 0) rep[next[i]] = static_cast<int>(i);
    for (int k = 0; k < next_cells; ++k) {
      p.trace = mix(p.trace, count[k]);
      for (int x : sig[rep[k]]) p.trace = mix(p.trace, static_cast<std::uint64_t>(x));
    }
    bool stable = next_cells == p.cells;
    p.cell = std::move(next);
    p.cells = next_cells;
    if (stable) break;
  }
  p.trace = mix(p.trace, static_cast<std::uint64_t>(p.cells));
  return p;
}

std::vector<int> individualized(Partition const& p, int point) {
  std::vector<int> colors(p.cell.size());
  for (std::size_t i = 0; i < colors.size(); ++i) colors[i] = 2 * p.cell[i];
  colors[point] += 1;
  return colors;
}

int target_cell(Partition const& p) {
  std::vector<int> size(static_cast<std::size_t>(p.cells), 0);
  for (int c : p.cell) ++size[c];
  int best = -1;
  for (int c = 0; c < p.cells; ++c)
    if (size[c] > 1 && (best < 0 || size[c] < size[best])) best = c;
  return best;
}

std::vector<int> cell_members(Partition const& p, int c) {
  std::vector<int> out;
  for (std::size_t i = 0; i < p.cell.size(); ++i)
    if (p.cell[i] == c) out.push_back(static_cast<int>(i));
  return out;
}

bool preserves(View const& v, Permutation const& perm) {
  for (std::size_t a = 0; a < v.n; ++a) {
    if (v.color[a] != v.color[perm[a]]) return false;
    for (std::size_t b = 0; b < v.n; ++b)
      if (v.out.test(a, b) != v.out.test(perm[a], perm[b])) return false;
  }
  return true;
}

std::vector<int> orbit_of(int point, std::vector<Permutation> const& gens, std::size_t n) {
  std::vector<bool> in(n, false);
  std::vector<int> stack{point};
  in[point] = true;
  std::vector<int> out;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    out.push_back(x);
    for (auto const& g : gens) {
      if (!in[g[x]]) {
        in[g[x]] = true;
        stack.push_back(g[x]);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> orbit_partition(std::vector<Permutation> const& gens, std::size_t n) {
  std::vector<int> id(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (id[i] >= 0) continue;
    for (int x : orbit_of(static_cast<int>(i), gens, n)) id[x] = next;
    ++next;
  }
  return id;
}

// Search tree anchored on a fixed leftmost path of individualizations.
class Search {
 public:
  Search(View const& v, Partition root) : v_(v) {
    path_.push_back(std::move(root));
    while (!path_.back().discrete()) {
      int t = target_cell(path_.back());
      int b = cell_members(path_.back(), t).front();
      target_.push_back(t);
      base_.push_back(b);
      path_.push_back(refine(v_, individualized(path_.back(), b)));
    }
  }

  std::size_t depth() const { return base_.size(); }
  std::vector<int> const& base() const { return base_; }
  std::vector<int> target_members(std::size_t level) const { return cell_members(path_[level], target_[level]); }

  /// An automorphism fixing base[0..level) and sending base[level] to w.
  std::optional<Permutation> try_map(std::size_t level, int w) const {
    Partition r = refine(v_, individualized(path_[level], w));
    if (r.trace != path_[level + 1].trace) return std::nullopt;
    return extend(level + 1, r);
  }

 private:
  std::optional<Permutation> extend(std::size_t level, Partition const& rho) const {
    if (level == base_.size()) {
      // Both partitions are discrete with matching cell ids.
      Permutation perm(v_.n);
      std::vector<int> right_of(v_.n);
      for (std::size_t i = 0; i < v_.n; ++i) right_of[rho.cell[i]] = static_cast<int>(i);
      auto const& left = path_[level];
      for (std::size_t i = 0; i < v_.n; ++i) perm[i] = right_of[left.cell[i]];
      if (preserves(v_, perm)) return perm;
      return std::nullopt;
    }
    for (int w : cell_members(rho, target_[level])) {
      Partition r = refine(v_, individualized(rho, w));
      if (r.trace != path_[level + 1].trace) continue;
      if (auto p = extend(level + 1, r)) return p;
    }
    return std::nullopt;
  }

  View const& v_;
  std::vector<Partition> path_;
  std::vector<int> target_;
  std::vector<int> base_;
};

AutGroup full_group(View const& v) {
  AutGroup g;
  g.order = 1;
  if (v.n == 0) return g;
  Search s(v, refine(v, v.color));
  g.base = s.base();
  for (std::size_t level = s.depth(); level-- > 0;) {
    int b = s.base()[level];
    std::vector<int> orbit = orbit_of(b, g.generators, v.n);
    for (int w : s.target_members(level)) {
      if (std::binary_search(orbit.begin(), orbit.end(), w)) continue;
      if (auto p = s.try_map(level, w)) {
        g.generators.push_back(std::move(*p));
        orbit = orbit_of(b, g.generators, v.n);
      }
    }
    g.order *= orbit.size();
  }
  std::sort(g.generators.begin(), g.generators.end());
  g.orbits = orbit_partition(g.generators, v.n);
  return g;
}

StabilizerResult stabilizer(View const& v, int point) {
  if (point < 0 || static_cast<std::size_t>(point) >= v.n) throw InvalidArgument("point out of range");
  Partition root = refine(v, v.color);
  root = refine(v, individualized(root, point));
  Search s(v, std::move(root));
  StabilizerResult result;
  for (std::size_t level = s.depth(); level-- > 0;) {
    for (int w : s.target_members(level)) {
      if (w == s.base()[level]) continue;
      if (auto p = s.try_map(level, w)) {
        result.trivial = false;
        result.witness = std::move(*p);
        return result;
      }
    }
  }
  return result;
}

// Longest chain lengths below (forward=false) or above each point.
std::vector<int> chain_levels(BitMatrix const& less, bool above) {
  std::size_t n = less.size();
  std::vector<int> level(n, -1);
  std::function<int(std::size_t)> go = [&](std::size_t x) -> int {
    if (level[x] >= 0) return level[x];
    int best = 0;
    for (std::size_t y = 0; y < n; ++y) {
      bool rel = above ? less.test(x, y) : less.test(y, x);
      if (rel) best = std::max(best, go(y) + 1);
    }
    return level[x] = best;
  };
  for (std::size_t x = 0; x < n; ++x) go(x);
  return level;
}

View poset_view(FinitePoset const& p) {
  View v;
  v.n = p.size();
  v.out = p.relation();
  v.in = v.out.transposed();
  std::size_t words = v.out.words_per_row();
  auto below = chain_levels(v.out, false);
  auto above = chain_levels(v.out, true);
  bool height_one = p.height() == 1;

  std::vector<std::uint64_t> affinity_hash(v.n, 0);
  if (height_one) {
    // Points sharing a comparable point with x, then pairwise overlaps.
    BitMatrix comp(v.n), close(v.n);
    for (std::size_t i = 0; i < v.n; ++i)
      for (std::size_t w = 0; w < words; ++w) comp.row(i)[w] = v.out.row(i)[w] | v.in.row(i)[w];
    for (std::size_t i = 0; i < v.n; ++i)
      for (std::size_t z = 0; z < v.n; ++z)
        if (comp.test(i, z))
          for (std::size_t w = 0; w < words; ++w) close.row(i)[w] |= comp.row(z)[w];
    for (std::size_t i = 0; i < v.n; ++i) {
      std::vector<int> values;
      for (std::size_t j = 0; j < v.n; ++j) {
        if (j == i) continue;
        int a = 0;
        for (std::size_t w = 0; w < words; ++w) a += std::popcount(close.row(i)[w] & close.row(j)[w]);
        values.push_back(a);
      }
      std::sort(values.begin(), values.end());
      std::uint64_t h = 0;
      for (int a : values) h = mix(h, static_cast<std::uint64_t>(a));
      affinity_hash[i] = h;
    }
  }

  std::vector<std::array<std::uint64_t, 7>> keys(v.n);
  for (std::size_t i = 0; i < v.n; ++i) {
    keys[i] = {static_cast<std::uint64_t>(below[i]), static_cast<std::uint64_t>(above[i]), v.in.row_count(i),
               v.out.row_count(i), static_cast<std::uint64_t>(p.lower_covers(static_cast<int>(i)).size()),
               static_cast<std::uint64_t>(p.upper_covers(static_cast<int>(i)).size()), affinity_hash[i]};
  }
  v.color = rank_keys(keys);
  return v;
}

View digraph_view(LabeledDigraph const& d) {
  View v;
  v.n = d.size();
  v.out = d.adjacency();
  v.in = v.out.transposed();
  std::vector<std::array<std::uint64_t, 3>> keys(v.n);
  for (std::size_t i = 0; i < v.n; ++i) {
    keys[i] = {v.out.row_count(i), v.in.row_count(i), static_cast<std::uint64_t>(v.out.test(i, i))};
  }
  v.color = rank_keys(keys);
  return v;
}

}  // namespace

std::size_t AutGroup::orbit_count() const {
  return orbits.empty() ? 0 : static_cast<std::size_t>(*std::max_element(orbits.begin(), orbits.end()) + 1);
}

std::vector<std::vector<int>> AutGroup::orbit_lists() const {
  std::vector<std::vector<int>> out(orbit_count());
  for (std::size_t i = 0; i < orbits.size(); ++i) out[orbits[i]].push_back(static_cast<int>(i));
  return out;
}

AutGroup automorphism_group(FinitePoset const& poset) { return full_group(poset_view(poset)); }
AutGroup automorphism_group(LabeledDigraph const& digraph) { return full_group(digraph_view(digraph)); }

StabilizerResult stabilizer_is_trivial(FinitePoset const& poset, int point) {
  return stabilizer(poset_view(poset), point);
}
StabilizerResult stabilizer_is_trivial(LabeledDigraph const& digraph, int point) {
  return stabilizer(digraph_view(digraph), point);
}

std::string describe_permutation(std::vector<PointInfo> const& points, Permutation const& p) {
  std::vector<bool> done(p.size(), false);
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (done[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    for (std::size_t j = i; !done[j]; j = static_cast<std::size_t>(p[j])) {
      if (j != i) out += " ";
      out += points[j].label;
      done[j] = true;
    }
    out += ")";
  }
  return out.empty() ? "id" : out;
}

std::optional<std::vector<Permutation>> permutation_group_closure(std::vector<Permutation> const& gens,
                                                                  std::size_t n, std::size_t cap) {
  Permutation id(n);
  std::iota(id.begin(), id.end(), 0);
  std::set<Permutation> seen{id};
  std::vector<Permutation> frontier{id};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (auto const& x : frontier) {
      for (auto const& g : gens) {
        Permutation y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = g[x[i]];
        if (seen.insert(y).second) {
          if (seen.size() > cap) return std::nullopt;
          next.push_back(std::move(y));
        }
      }
    }
    frontier = std::move(next);
  }
  return std::vector<Permutation>(seen.begin(), seen.end());
}

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::NotFree: return "not-free";
    case VerdictKind::SemiRegular: return "semi-regular";
    case VerdictKind::Regular: return "regular";
    case VerdictKind::CayleyRepresentation: return "cayley-representation";
  }
  return "unknown";
}

namespace {

void attach_stabilizer_witness(FinitePoset const& poset, RepresentationVerdict& v) {
  for (auto const& orbit : v.orbits) {
    auto st = stabilizer_is_trivial(poset, orbit.front());
    if (!st.trivial) {
      v.witness = std::move(st.witness);
      v.witness_point = orbit.front();
      v.witness_text = describe_permutation(poset.points(), *v.witness) + " fixes " + poset.label(orbit.front());
      return;
    }
  }
}

}  // namespace

RepresentationVerdict classify_action(FinitePoset const& poset, std::vector<Permutation> const& action) {
  std::size_t n = poset.size();
  for (auto const& p : action) {
    if (!poset.is_automorphism(p)) throw InvalidArgument("action contains a permutation that is not an automorphism");
  }
  RepresentationVerdict v;
  v.height = poset.height();
  std::set<Permutation> image(action.begin(), action.end());
  v.image_order = image.size();

  v.free = true;
  std::optional<std::pair<int, Permutation>> fixer;
  for (std::size_t x = 0; x < n && v.free; ++x) {
    std::size_t fixing = 0;
    for (auto const& p : action) {
      if (p[x] == static_cast<int>(x)) {
        ++fixing;
        bool identity = true;
        for (std::size_t i = 0; i < n && identity; ++i) identity = p[i] == static_cast<int>(i);
        if (!identity && !fixer) fixer = std::pair{static_cast<int>(x), p};
      }
    }
    if (fixing != 1) v.free = false;
  }
  std::vector<int> ids = orbit_partition(action, n);
  v.orbit_count = ids.empty() ? 0 : static_cast<std::size_t>(*std::max_element(ids.begin(), ids.end()) + 1);
  v.orbits.assign(v.orbit_count, {});
  for (std::size_t i = 0; i < n; ++i) v.orbits[ids[i]].push_back(static_cast<int>(i));

  AutGroup aut = automorphism_group(poset);
  v.aut_order = aut.order;
  v.full_aut = aut.order == v.image_order;

  if (!v.free) {
    v.kind = VerdictKind::NotFree;
    if (fixer) {
      v.witness_point = fixer->first;
      v.witness = fixer->second;
      v.witness_text = describe_permutation(poset.points(), *v.witness) + " fixes " + poset.label(fixer->first);
    }
    return v;
  }
  if (v.orbit_count == 1) {
    v.kind = VerdictKind::Regular;
  } else if (v.orbit_count == 2 && v.height == 1 && v.full_aut) {
    v.kind = VerdictKind::CayleyRepresentation;
  } else {
    v.kind = VerdictKind::SemiRegular;
  }
  if (!v.full_aut) {
    attach_stabilizer_witness(poset, v);
    if (!v.witness) {
      for (auto const& g : aut.generators) {
        if (!image.count(g)) {
          v.witness = g;
          v.witness_text = describe_permutation(poset.points(), g) + " is not in the action";
          break;
        }
      }
    }
  }
  return v;
}

RepresentationVerdict classify_poset(FinitePoset const& poset) {
  RepresentationVerdict v;
  AutGroup aut = automorphism_group(poset);
  v.height = poset.height();
  v.aut_order = aut.order;
  v.full_aut = true;
  v.orbits = aut.orbit_lists();
  v.orbit_count = v.orbits.size();
  v.image_order = aut.order <= BigInt(std::numeric_limits<std::size_t>::max())
                      ? static_cast<std::size_t>(aut.order)
                      : std::numeric_limits<std::size_t>::max();
  attach_stabilizer_witness(poset, v);
  v.free = !v.witness.has_value();
  if (!v.free) {
    v.kind = VerdictKind::NotFree;
  } else if (v.orbit_count == 1) {
    v.kind = VerdictKind::Regular;
  } else if (v.orbit_count == 2 && v.height == 1) {
    v.kind = VerdictKind::CayleyRepresentation;
  } else {
    v.kind = VerdictKind::SemiRegular;
  }
  return v;
}

}  // namespace posrep
