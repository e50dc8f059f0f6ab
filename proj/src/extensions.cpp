#include "posrep/extensions.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <map>
#include <set>

#include "posrep/aut.hpp"
#include "posrep/error.hpp"
#include "posrep/search.hpp"
#include "posrep/text.hpp"

namespace posrep {

Element GroupAutomorphism::power(Element g, std::int64_t n) const {
  for (std::int64_t i = 0; i < n; ++i) g = apply(g);
  for (std::int64_t i = 0; i > n; --i) g = apply_inverse(g);
  return g;
}

GroupAutomorphism identity_automorphism() {
  auto id = [](Element const& g) { return g; };
  return {"id", id, id};
}

namespace {

bool is_abelian(Group const& g) {
  if (!g.is_finite()) return dynamic_cast<IntegerGroup const*>(&g) != nullptr;
  auto el = g.elements();
  for (auto const& a : el)
    for (auto const& b : el)
      if (g.multiply(a, b) != g.multiply(b, a)) return false;
  return true;
}

}  // namespace

GroupAutomorphism parse_automorphism(GroupPtr const& g, std::string_view text) {
  auto t = text::trim(text);
  if (t == "id") return identity_automorphism();
  std::int64_t k = 0;
  if (t == "neg")
    k = -1;
  else if (t.substr(0, 4) == "mul:")
    k = text::parse_int(t.substr(4));
  else
    throw ParseError("unknown automorphism '" + std::string(t) + "' (expected id, neg or mul:k)", 0);
  if (!is_abelian(*g)) throw InvalidArgument("power maps are automorphisms only for abelian groups here");

  GroupAutomorphism psi;
  psi.name = std::string(t);
  psi.apply = [g, k](Element const& x) { return g->power(x, k); };
  if (g->is_finite()) {
    auto inv = std::make_shared<ElementMap<Element>>();
    for (auto const& x : g->elements()) (*inv)[g->power(x, k)] = x;
    if (inv->size() != *g->order()) throw InvalidArgument("x ↦ x^" + std::to_string(k) + " is not bijective on " + g->descriptor());
    psi.apply_inverse = [inv](Element const& x) { return inv->at(x); };
  } else {
    if (k != 1 && k != -1) throw InvalidArgument("x ↦ x^" + std::to_string(k) + " is not bijective on " + g->descriptor());
    psi.apply_inverse = psi.apply;
  }
  return psi;
}

void validate_automorphism(Group const& g, GroupAutomorphism const& psi, std::vector<Element> const& sample) {
  std::vector<Element> el = g.is_finite() ? g.elements() : sample;
  std::set<Element> images;
  for (auto const& a : el) {
    Element pa = psi.apply(a);
    if (psi.apply_inverse(pa) != a) throw InvalidArgument(psi.name + " and its inverse disagree at " + g.format(a));
    images.insert(pa);
    for (auto const& b : el)
      if (psi.apply(g.multiply(a, b)) != g.multiply(pa, psi.apply(b)))
        throw InvalidArgument(psi.name + " is not a homomorphism at (" + g.format(a) + ", " + g.format(b) + ")");
  }
  if (g.is_finite() && images.size() != el.size()) throw InvalidArgument(psi.name + " is not bijective");
}

// ---------------------------------------------------------------------------

ExtensionGroup::ExtensionGroup(GroupPtr base, GroupAutomorphism psi) : base_(std::move(base)), psi_(std::move(psi)) {
  if (base_->is_finite()) validate_automorphism(*base_, psi_);
}

std::string ExtensionGroup::descriptor() const { return "h(" + base_->descriptor() + "," + psi_.name + ")"; }

Element ExtensionGroup::element(Element const& g, std::int64_t n) const {
  std::string bytes(sizeof n, '\0');
  std::memcpy(bytes.data(), &n, sizeof n);
  return Element(bytes + g.bytes());
}

std::int64_t ExtensionGroup::level(Element const& a) const {
  std::int64_t n = 0;
  std::memcpy(&n, a.bytes().data(), sizeof n);
  return n;
}

Element ExtensionGroup::base_part(Element const& a) const { return Element(a.bytes().substr(sizeof(std::int64_t))); }

Element ExtensionGroup::identity() const { return element(base_->identity(), 0); }

Element ExtensionGroup::multiply(Element const& a, Element const& b) const {
  std::int64_t n1 = level(a), n2 = level(b);
  return element(base_->multiply(psi_.power(base_part(a), n2), base_part(b)), n1 + n2);
}

Element ExtensionGroup::inverse(Element const& a) const {
  std::int64_t n = level(a);
  return element(base_->inverse(psi_.power(base_part(a), -n)), -n);
}

std::string ExtensionGroup::format(Element const& a) const {
  return "(" + base_->format(base_part(a)) + "," + std::to_string(level(a)) + ")";
}

Element ExtensionGroup::parse_element(std::string_view text) const {
  auto t = text::trim(text);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')') throw ParseError("expected (g,n)", 0);
  auto parts = text::split_top_level(t.substr(1, t.size() - 2), ',');
  if (parts.size() != 2) throw ParseError("expected (g,n)", 1);
  return element(base_->parse_element(parts[0]), text::parse_int(parts[1]));
}

std::pair<Element, std::int64_t> ExtensionGroup::to_semidirect(Element const& a) const {
  std::int64_t n = level(a);
  return {psi_.power(base_part(a), -n), -n};
}

// ---------------------------------------------------------------------------

std::string to_string(WindowKind k) { return k == WindowKind::Product1 ? "product1" : "product2"; }

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

}  // namespace

int Window::block(int p) const { return floor_div(layer(p), copies()); }

int Window::point(Element const& g, int layer) const {
  if (layer < min_layer() || layer > max_layer()) return -1;
  auto it = element_index.find(g);
  if (it == element_index.end()) return -1;
  return (layer - min_layer()) * static_cast<int>(elements.size()) + it->second;
}

namespace {

Window window_frame(WindowKind kind, GroupPtr group, std::vector<Element> elements, GroupAutomorphism psi, int radius,
                    WindowOptions const& options) {
  if (radius < 0) throw InvalidArgument("window radius must be non-negative");
  Window w;
  w.kind = kind;
  w.radius = radius;
  w.group = std::move(group);
  w.psi = std::move(psi);
  w.elements = std::move(elements);
  for (std::size_t i = 0; i < w.elements.size(); ++i)
    if (!w.element_index.emplace(w.elements[i], static_cast<int>(i)).second)
      throw InvalidArgument("repeated element in window base");
  for (auto const& g : w.elements)
    if (!w.element_index.count(w.psi.apply(g)) || !w.element_index.count(w.psi.apply_inverse(g)))
      throw InvalidArgument("psi does not preserve the listed elements");
  std::size_t layers = static_cast<std::size_t>(w.max_layer() - w.min_layer() + 1);
  if (layers * w.elements.size() > options.max_points)
    throw CapExceeded("window has " + std::to_string(layers * w.elements.size()) + " points, above the cap " +
                      std::to_string(options.max_points));
  return w;
}

std::vector<PointInfo> window_points(Window const& w) {
  std::vector<PointInfo> pts;
  int t = w.copies();
  for (int layer = w.min_layer(); layer <= w.max_layer(); ++layer) {
    int copy = layer - t * floor_div(layer, t);
    for (std::size_t i = 0; i < w.elements.size(); ++i) {
      std::string label = w.group->format(w.elements[i]) + (copy ? "'" : "") + "@" + std::to_string(floor_div(layer, t));
      pts.push_back({label, static_cast<int>(i), copy, layer});
    }
  }
  return pts;
}

bool is_excluded_elementary_abelian(CayleyTable const& t) {
  std::size_t n = t.size();
  if (n != 4 && n != 8 && n != 16 && n != 9) return false;
  int p = n == 9 ? 3 : 2;
  for (std::size_t a = 0; a < n; ++a) {
    if (static_cast<int>(a) != t.identity() && t.group().element_order(t.element(static_cast<int>(a))) != static_cast<std::uint64_t>(p))
      return false;
    for (std::size_t b = 0; b < n; ++b)
      if (t.mul(static_cast<int>(a), static_cast<int>(b)) != t.mul(static_cast<int>(b), static_cast<int>(a))) return false;
  }
  return true;
}

}  // namespace

Window build_product1_window(GroupPtr const& group, std::vector<Element> const& elements, std::vector<Element> const& s,
                             GroupAutomorphism const& psi, int radius, WindowOptions const& options) {
  Window w = window_frame(WindowKind::Product1, group, elements, psi, radius, options);
  std::vector<std::pair<int, int>> rel;
  for (int layer = w.min_layer(); layer < w.max_layer(); ++layer)
    for (auto const& g : w.elements)
      for (auto const& d : s) {
        int a = w.point(g, layer);
        int b = w.point(psi.apply(group->multiply(g, d)), layer + 1);
        if (b >= 0) rel.emplace_back(a, b);
      }
  w.poset = FinitePoset::from_relations(window_points(w), rel, options.max_points);
  return w;
}

Window build_product1_window(CayleySpec const& spec, GroupAutomorphism const& psi, int radius,
                             WindowOptions const& options) {
  auto const& t = *spec.table;
  if (t.size() == 2) throw InvalidArgument("the gluing needs G ≠ Z2");
  validate_automorphism(t.group(), psi);
  if (t.size() <= options.verify_order && !is_cayley_representation(spec))
    throw InvalidArgument("P(G,S) is not a Cayley representation: " + spec.describe());
  std::vector<Element> el, s;
  for (std::size_t i = 0; i < t.size(); ++i) el.push_back(t.element(static_cast<int>(i)));
  for (int x : spec.s) s.push_back(t.element(x));
  return build_product1_window(t.group_ptr(), el, s, psi, radius, options);
}

Window build_product2_window(CayleyTablePtr const& table, FinitePoset const& block, GroupAutomorphism const& psi,
                             int radius, WindowOptions const& options) {
  auto const& t = *table;
  if (is_excluded_elementary_abelian(t)) throw InvalidArgument(t.descriptor() + " has no three-orbit representation");
  if (block.size() != 3 * t.size()) throw InvalidArgument("block must have three copies of G");
  validate_automorphism(t.group(), psi);
  if (t.size() <= options.verify_order) {
    auto v = classify_action(block, left_regular_action(t, block));
    if (!v.free || v.orbit_count != 3 || !v.full_aut)
      throw InvalidArgument("block is not a semi-regular representation with three orbits");
  }
  std::vector<Element> el;
  for (std::size_t i = 0; i < t.size(); ++i) el.push_back(t.element(static_cast<int>(i)));
  Window w = window_frame(WindowKind::Product2, t.group_ptr(), el, psi, radius, options);

  // Copy c of block k sits at layer 2k + c; copy 2 becomes ψ(g) at layer 2k + 2.
  auto place = [&](PointInfo const& p, int k) {
    Element g = t.element(p.element);
    if (p.copy == 2) return w.point(psi.apply(g), 2 * k + 2);
    return w.point(g, 2 * k + p.copy);
  };
  std::vector<std::pair<int, int>> rel;
  for (int k = -radius; k <= radius; ++k)
    for (auto [a, b] : block.covers()) rel.emplace_back(place(block.point(a), k), place(block.point(b), k));
  w.poset = FinitePoset::from_relations(window_points(w), rel, options.max_points);
  return w;
}

// ---------------------------------------------------------------------------

Grading gradedness(FinitePoset const& p) {
  Grading out;
  std::size_t n = p.size();
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, +1 up / −1 down)
  for (auto [a, b] : p.covers()) {
    adj[static_cast<std::size_t>(a)].push_back({b, 1});
    adj[static_cast<std::size_t>(b)].push_back({a, -1});
  }
  std::vector<int> rank(n, 0), parent(n, -1);
  std::vector<bool> seen(n, false);
  int conflict_a = -1, conflict_b = -1;
  for (std::size_t root = 0; root < n && conflict_a < 0; ++root) {
    if (seen[root]) continue;
    std::vector<int> comp{static_cast<int>(root)};
    seen[root] = true;
    for (std::size_t head = 0; head < comp.size() && conflict_a < 0; ++head) {
      int u = comp[head];
      for (auto [v, d] : adj[static_cast<std::size_t>(u)]) {
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = true;
          rank[static_cast<std::size_t>(v)] = rank[static_cast<std::size_t>(u)] + d;
          parent[static_cast<std::size_t>(v)] = u;
          comp.push_back(v);
        } else if (rank[static_cast<std::size_t>(v)] != rank[static_cast<std::size_t>(u)] + d) {
          conflict_a = u;
          conflict_b = v;
          break;
        }
      }
    }
    if (conflict_a < 0) {
      int lo = rank[root];
      for (int v : comp) lo = std::min(lo, rank[static_cast<std::size_t>(v)]);
      for (int v : comp) rank[static_cast<std::size_t>(v)] -= lo;
    }
  }
  if (conflict_a < 0) {
    out.graded = true;
    out.rank = std::move(rank);
    return out;
  }

  // Two saturated chains between the same ends with different lengths: the
  // first pair (a, b), in index order, whose shortest and longest cover paths differ.
  std::vector<int> topo(n);
  for (std::size_t i = 0; i < n; ++i) topo[i] = static_cast<int>(i);
  auto levels = p.levels();
  std::stable_sort(topo.begin(), topo.end(), [&](int a, int b) { return levels[a] < levels[b]; });
  for (std::size_t a = 0; a < n && !out.chains; ++a) {
    std::vector<int> lo(n, -1), hi(n, -1), lo_prev(n, -1), hi_prev(n, -1);
    lo[a] = hi[a] = 0;
    for (int u : topo) {
      if (lo[static_cast<std::size_t>(u)] < 0) continue;
      for (int v : p.upper_covers(u)) {
        auto vs = static_cast<std::size_t>(v);
        auto us = static_cast<std::size_t>(u);
        if (lo[vs] < 0 || lo[us] + 1 < lo[vs]) {
          lo[vs] = lo[us] + 1;
          lo_prev[vs] = u;
        }
        if (hi[us] + 1 > hi[vs]) {
          hi[vs] = hi[us] + 1;
          hi_prev[vs] = u;
        }
      }
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (lo[b] < 0 || lo[b] == hi[b]) continue;
      auto trace = [&](std::vector<int> const& prev) {
        std::vector<int> chain{static_cast<int>(b)};
        while (chain.back() != static_cast<int>(a)) chain.push_back(prev[static_cast<std::size_t>(chain.back())]);
        std::reverse(chain.begin(), chain.end());
        return chain;
      };
      out.chains = std::pair{trace(hi_prev), trace(lo_prev)};
      break;
    }
  }
  if (!out.chains) {
    // Closed walk: tree path root → a, the offending cover a–b, tree path b → root.
    auto path_to_root = [&](int v) {
      std::vector<int> path{v};
      while (parent[static_cast<std::size_t>(path.back())] >= 0) path.push_back(parent[static_cast<std::size_t>(path.back())]);
      return path;
    };
    auto pa = path_to_root(conflict_a);
    auto pb = path_to_root(conflict_b);
    out.cycle.assign(pa.rbegin(), pa.rend());
    out.cycle.insert(out.cycle.end(), pb.begin(), pb.end());
  }
  return out;
}

FinitePoset integer_gap_poset(int lo, int hi, int gap) {
  if (hi < lo || gap < 1) throw InvalidArgument("integer_gap_poset needs lo ≤ hi and gap ≥ 1");
  std::vector<PointInfo> pts;
  for (int v = lo; v <= hi; ++v) pts.push_back({std::to_string(v), -1, 0, v});
  int n = hi - lo + 1;
  BitMatrix m(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (b - a >= gap) m.set(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  return FinitePoset(std::move(pts), std::move(m));
}

// ---------------------------------------------------------------------------

int act_on_window(Window const& w, Element const& g, std::int64_t n, int p) {
  auto const& info = w.poset.point(p);
  int k = w.block(p);
  Element moved = w.group->multiply(w.psi.power(g, k), w.elements[static_cast<std::size_t>(info.element)]);
  return w.point(moved, info.layer + w.copies() * static_cast<int>(n));
}

ActionReport check_action_on_window(Window const& w, bool compute_rigidity) {
  if (!w.group->is_finite()) throw NotEnumerable("action checks need a finite group");
  ActionReport rep;
  int N = w.radius;
  int x0 = w.point(w.group->identity(), 0);
  int x1 = w.kind == WindowKind::Product2 ? w.point(w.group->identity(), 1) : -1;
  std::set<int> orbit0, orbit1;
  auto fail = [&](std::string const& what) {
    if (rep.failure.empty()) rep.failure = what;
  };

  for (int n = -(N - 1); n <= N - 1; ++n) {
    // Blocks whose image stays inside −N..N (the top layer counts as block N+1).
    int kmin = -N + std::max(0, -n), kmax = N + 1 - std::max(0, n);
    for (auto const& g : w.elements) {
      ++rep.elements_checked;
      bool is_identity = n == 0 && g == w.group->identity();
      std::vector<int> domain, image;
      for (std::size_t p = 0; p < w.poset.size(); ++p) {
        int k = w.block(static_cast<int>(p));
        if (k < kmin || k > kmax) continue;
        int q = act_on_window(w, g, n, static_cast<int>(p));
        if (q < 0) {
          rep.maps_into_window = false;
          fail("image of " + w.poset.label(static_cast<int>(p)) + " leaves the window");
          continue;
        }
        if (!is_identity && q == static_cast<int>(p)) {
          rep.free = false;
          fail(w.group->format(g) + "," + std::to_string(n) + " fixes " + w.poset.label(q));
        }
        domain.push_back(static_cast<int>(p));
        image.push_back(q);
      }
      if (std::set<int>(image.begin(), image.end()).size() != image.size()) {
        rep.injective = false;
        fail("action by (" + w.group->format(g) + "," + std::to_string(n) + ") is not injective");
      }
      for (std::size_t i = 0; i < domain.size(); ++i)
        for (std::size_t j = 0; j < domain.size(); ++j)
          if (w.poset.less(domain[i], domain[j]) != w.poset.less(image[i], image[j])) {
            rep.order_preserving = false;
            fail("action by (" + w.group->format(g) + "," + std::to_string(n) + ") breaks the order");
          }
      orbit0.insert(act_on_window(w, g, n, x0));
      if (x1 >= 0) orbit1.insert(act_on_window(w, g, n, x1));
    }
  }

  // Interior: blocks −(N−1)..N−1.
  std::set<int> interior0, interior1;
  for (std::size_t p = 0; p < w.poset.size(); ++p) {
    int k = w.block(static_cast<int>(p));
    if (k < -(N - 1) || k > N - 1) continue;
    (w.poset.point(static_cast<int>(p)).copy == 0 ? interior0 : interior1).insert(static_cast<int>(p));
  }
  rep.interior_transitive = orbit0 == interior0 && orbit1 == interior1;
  if (!rep.interior_transitive) fail("orbits of the base points miss interior points");
  rep.orbit_types = x1 >= 0 ? 2 : 1;
  if (compute_rigidity) rep.window_rigid = stabilizer_is_trivial(w.poset, x0).trivial;
  return rep;
}

RankHomomorphismReport rank_epimorphism_check(Window const& w) {
  RankHomomorphismReport rep;
  auto grading = gradedness(w.poset);
  rep.graded = grading.graded;
  if (!grading.graded) {
    rep.failure = "window is not graded";
    rep.additive = rep.onto_interval = rep.matches_level = false;
    return rep;
  }
  int x0 = w.point(w.group->identity(), 0);
  int base = grading.rank[static_cast<std::size_t>(x0)];
  int N = w.radius;
  ExtensionGroup h(w.group, w.psi);
  // f(h) for h = (g, n) with |n| ≤ N; nullopt if h·x₀ leaves the window.
  auto f = [&](Element const& g, std::int64_t n) -> std::optional<int> {
    if (n < -N || n > N) return std::nullopt;
    int q = act_on_window(w, g, n, x0);
    if (q < 0) return std::nullopt;
    return grading.rank[static_cast<std::size_t>(q)] - base;
  };
  std::set<int> values;
  for (int n1 = -N; n1 <= N; ++n1)
    for (auto const& g1 : w.elements) {
      auto f1 = f(g1, n1);
      if (!f1) continue;
      values.insert(*f1);
      if (*f1 != n1) {
        rep.matches_level = false;
        if (rep.failure.empty()) rep.failure = "f(" + w.group->format(g1) + "," + std::to_string(n1) + ") ≠ level";
      }
      for (int n2 = -N; n2 <= N; ++n2)
        for (auto const& g2 : w.elements) {
          auto f2 = f(g2, n2);
          Element prod = h.multiply(h.element(g1, n1), h.element(g2, n2));
          auto f12 = f(h.base_part(prod), h.level(prod));
          if (!f2 || !f12) continue;
          ++rep.pairs_checked;
          if (*f12 != *f1 + *f2) {
            rep.additive = false;
            if (rep.failure.empty()) rep.failure = "f is not additive";
          }
        }
    }
  for (int v = -N; v <= N; ++v) rep.onto_interval = rep.onto_interval && values.count(v) > 0;
  return rep;
}

}  // namespace posrep
