#include "posrep/cayley_graph.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <unordered_set>

#include "posrep/error.hpp"

namespace posrep {

CayleyGraph::CayleyGraph(GroupPtr group, std::vector<Element> gens) : group_(std::move(group)), gens_(std::move(gens)) {
  if (gens_.empty()) throw InvalidArgument("a Cayley graph needs at least one generator");
  Element e = group_->identity();
  for (auto const& s : gens_) {
    inverses_.push_back(group_->inverse(s));
    multiplicity_.push_back(s == e || inverses_.back() == s ? 1 : 2);
  }
}

Element CayleyGraph::step(Element const& g, int letter) const {
  return group_->multiply(g, letter > 0 ? gens_[letter - 1] : inverses_[-letter - 1]);
}

std::vector<Element> CayleyGraph::neighbors(Element const& g) const {
  std::vector<Element> out;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    out.push_back(group_->multiply(g, gens_[i]));
    if (multiplicity_[i] == 2) out.push_back(group_->multiply(g, inverses_[i]));
  }
  return out;
}

int CayleyGraph::degree() const {
  int d = 0;
  for (int m : multiplicity_) d += m;
  return d;
}

namespace {

int letter_rank(int l) { return l > 0 ? 2 * l : 2 * (-l) + 1; }

bool word_less(std::vector<int> const& a, std::vector<int> const& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](int x, int y) { return letter_rank(x) < letter_rank(y); });
}

std::vector<int> letters_of(int generator_count) {
  std::vector<int> out;
  for (int i = 1; i <= generator_count; ++i) out.push_back(i);
  for (int i = 1; i <= generator_count; ++i) out.push_back(-i);
  return out;
}

}  // namespace

ReducedWord canonical_relation(ReducedWord const& w) {
  ReducedWord core = cyclic_reduce(w);
  std::vector<int> best = core.letters();
  for (auto const& v : {core.letters(), core.inverse().letters()}) {
    for (std::size_t r = 0; r < v.size(); ++r) {
      std::vector<int> rot(v.begin() + static_cast<std::ptrdiff_t>(r), v.end());
      rot.insert(rot.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(r));
      if (word_less(rot, best)) best = std::move(rot);
    }
  }
  return ReducedWord::reduce(best);
}

GirthResult girth(CayleyGraph const& graph, GirthOptions const& options) {
  if (options.limit < 1) throw InvalidArgument("girth limit must be positive");
  Group const& g = graph.group();
  int k = static_cast<int>(graph.generators().size());
  std::vector<int> letters = letters_of(k);

  struct Node {
    int parent;
    int letter;
  };
  std::vector<Element> elements{g.identity()};
  std::vector<Node> nodes{{-1, 0}};
  ElementMap<int> index{{g.identity(), 0}};

  auto word_to = [&](int v) {
    std::vector<int> rev;
    for (; nodes[v].parent >= 0; v = nodes[v].parent) rev.push_back(nodes[v].letter);
    std::reverse(rev.begin(), rev.end());
    return rev;
  };

  GirthResult result;
  result.limit = options.limit;
  std::optional<std::vector<int>> best;
  auto consider = [&](std::vector<int> const& candidate) {
    ReducedWord w = ReducedWord::reduce(candidate);
    if (w.is_trivial()) return;
    ReducedWord c = canonical_relation(w);
    if (!best || c.length() < best->size() || (c.length() == best->size() && word_less(c.letters(), *best))) {
      best = c.letters();
    }
  };

  int max_level = (options.limit - 1) / 2;
  std::size_t level_begin = 0, level_end = 1;
  for (int d = 0; d <= max_level; ++d) {
    for (std::size_t u = level_begin; u < level_end; ++u) {
      int last = nodes[u].letter;
      for (int b : letters) {
        if (last != 0 && b == -last) continue;
        Element next = graph.step(elements[u], b);
        auto it = index.find(next);
        if (it != index.end()) {
          std::vector<int> w = word_to(static_cast<int>(u));
          w.push_back(b);
          std::vector<int> back = word_to(it->second);
          for (auto r = back.rbegin(); r != back.rend(); ++r) w.push_back(-*r);
          consider(w);
          continue;
        }
        if (elements.size() >= options.node_budget) {
          throw CapExceeded("girth search exceeded the node budget of " + std::to_string(options.node_budget) +
                            " while expanding radius " + std::to_string(d) + " (fully expanded radius " +
                            std::to_string(d - 1) + ")");
        }
        index.emplace(next, static_cast<int>(elements.size()));
        elements.push_back(std::move(next));
        nodes.push_back({static_cast<int>(u), b});
      }
    }
    result.radius = d;
    level_begin = level_end;
    level_end = elements.size();
    if (best && static_cast<int>(best->size()) <= 2 * d + 2) break;
  }
  result.nodes = elements.size();
  if (best && static_cast<int>(best->size()) <= options.limit) {
    result.girth = static_cast<int>(best->size());
    result.witness = ReducedWord::reduce(*best);
  }
  return result;
}

std::optional<int> girth_by_words(CayleyGraph const& graph, int max_length) {
  Group const& g = graph.group();
  int k = static_cast<int>(graph.generators().size());
  std::vector<int> letters = letters_of(k);
  Element e = g.identity();
  // Depth-first over reduced words, carrying the running product.
  std::optional<int> found;
  std::vector<int> word;
  std::vector<Element> prefix{e};
  for (int length = 1; length <= max_length && !found; ++length) {
    word.clear();
    prefix.assign(1, e);
    std::function<bool(int)> rec = [&](int depth) -> bool {
      if (depth == length) {
        if (word.front() == -word.back() && length > 1) return false;
        return prefix.back() == e;
      }
      for (int b : letters) {
        if (!word.empty() && b == -word.back()) continue;
        word.push_back(b);
        prefix.push_back(graph.step(prefix.back(), b));
        bool hit = rec(depth + 1);
        word.pop_back();
        prefix.pop_back();
        if (hit) return true;
      }
      return false;
    };
    if (rec(0)) found = length;
  }
  return found;
}

ReducedWord BfsBall::word(int i) const {
  std::vector<int> rev;
  for (; parent[i] >= 0; i = parent[i]) rev.push_back(parent_letter[i]);
  std::reverse(rev.begin(), rev.end());
  return ReducedWord::reduce(rev);
}

BfsBall build_ball(CayleyGraph const& graph, Element const& center, int radius, std::size_t node_budget) {
  int k = static_cast<int>(graph.generators().size());
  std::vector<int> letters = letters_of(k);
  BfsBall ball;
  ball.center = center;
  ball.radius = radius;
  ball.elements.push_back(center);
  ball.distance.push_back(0);
  ball.parent.push_back(-1);
  ball.parent_letter.push_back(0);
  ball.index.emplace(center, 0);
  std::size_t begin = 0, end = 1;
  for (int d = 0; d < radius; ++d) {
    for (std::size_t u = begin; u < end; ++u) {
      for (int b : letters) {
        Element next = graph.step(ball.elements[u], b);
        if (ball.index.count(next)) continue;
        if (ball.elements.size() >= node_budget) {
          throw CapExceeded("BFS ball exceeded " + std::to_string(node_budget) + " nodes at radius " +
                            std::to_string(d + 1));
        }
        ball.index.emplace(next, static_cast<int>(ball.elements.size()));
        ball.elements.push_back(std::move(next));
        ball.distance.push_back(d + 1);
        ball.parent.push_back(static_cast<int>(u));
        ball.parent_letter.push_back(b);
      }
    }
    begin = end;
    end = ball.elements.size();
  }
  return ball;
}

bool ball_matches_free_tree(CayleyGraph const& graph, BfsBall const& ball) {
  int k = static_cast<int>(graph.generators().size());
  std::vector<std::size_t> level(static_cast<std::size_t>(ball.radius) + 1, 0);
  for (int d : ball.distance) ++level[d];
  std::size_t expected = 1;
  for (int d = 0; d <= ball.radius; ++d) {
    if (level[d] != expected) return false;
    expected = d == 0 ? 2u * k : expected * (2u * k - 1);
  }
  // Each undirected edge is seen from both ends (loops twice from one end).
  std::size_t half_edges = 0;
  for (auto const& x : ball.elements)
    for (int b : letters_of(k))
      if (ball.index.count(graph.step(x, b))) ++half_edges;
  return half_edges == 2 * (ball.size() - 1);
}

std::vector<Element> neighborhood(Group const& g, std::span<const Element> s, Element const& x) {
  if (s.empty()) throw InvalidArgument("connection set must be nonempty");
  std::vector<Element> out;
  for (auto const& a : s) {
    Element xa = g.multiply(x, a);
    for (auto const& b : s) out.push_back(g.multiply(xa, g.inverse(b)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t affinity(Group const& g, std::span<const Element> s, Element const& a, Element const& b) {
  auto na = neighborhood(g, s, a);
  auto nb = neighborhood(g, s, b);
  std::vector<Element> common;
  std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(common));
  return common.size();
}

std::vector<int> difference_set(CayleyTable const& g, std::span<const int> s) {
  std::vector<int> out;
  for (int a : s)
    for (int b : s) out.push_back(g.mul(a, g.inv(b)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace posrep
