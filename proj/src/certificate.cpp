#include "posrep/certificate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "posrep/error.hpp"
#include "posrep/search.hpp"

namespace posrep {

namespace {

// Shortlex with x < y < X < Y.
bool word_less(ReducedWord const& a, ReducedWord const& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  auto key = [](int l) { return l > 0 ? l : 1000 - l; };
  return std::lexicographical_compare(a.letters().begin(), a.letters().end(), b.letters().begin(), b.letters().end(),
                                      [&](int p, int q) { return key(p) < key(q); });
}

// Words longer than this could make the intersections in G differ from F₂
// even when the girth exceeds 21.
constexpr std::size_t kMaxNeighborhoodWord = 7;

}  // namespace

std::vector<ReducedWord> connection_set_words() {
  return {ReducedWord(), ReducedWord::parse("x"), ReducedWord::parse("x^2"), ReducedWord::parse("x^4"),
          ReducedWord::parse("y"), ReducedWord::parse("y^3")};
}

std::vector<AffinityEntry> const& f2_reference_table() {
  static std::vector<AffinityEntry> const table = [] {
    FreeGroup f(2);
    std::vector<Element> s;
    for (auto const& w : connection_set_words()) s.push_back(f.element(w));
    auto n = neighborhood(f, s, f.identity());
    if (n.size() != 27) throw std::logic_error("F2 neighborhood of e should have 27 elements");
    std::vector<AffinityEntry> out;
    for (auto const& g : n) {
      ReducedWord w = f.word(g);
      if (w.length() > kMaxNeighborhoodWord) throw std::logic_error("neighborhood word longer than 7");
      if (w.is_trivial()) continue;
      out.push_back({w, affinity(f, s, f.identity(), g)});
    }
    std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) { return word_less(a.word, b.word); });
    return out;
  }();
  return table;
}

NeighborhoodTree f2_neighborhood_tree() {
  std::set<std::vector<int>> members;
  members.insert(std::vector<int>{});
  for (auto const& e : f2_reference_table()) members.insert(e.word.letters());
  std::set<std::vector<int>> prefixes;
  for (auto const& m : members)
    for (std::size_t k = 0; k <= m.size(); ++k) prefixes.insert(std::vector<int>(m.begin(), m.begin() + static_cast<long>(k)));

  std::vector<ReducedWord> nodes;
  for (auto const& p : prefixes) nodes.push_back(ReducedWord::reduce(p));
  std::sort(nodes.begin(), nodes.end(), word_less);
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i].letters()] = static_cast<int>(i);

  NeighborhoodTree tree;
  for (auto const& w : nodes) {
    tree.in_neighborhood.push_back(members.count(w.letters()) > 0);
    if (w.is_trivial()) continue;
    std::vector<int> parent(w.letters().begin(), w.letters().end() - 1);
    tree.edges.emplace_back(index.at(parent), index.at(w.letters()));
  }
  tree.nodes = std::move(nodes);
  return tree;
}

std::string to_string(GenerationCheck g) {
  switch (g) {
    case GenerationCheck::Closure: return "closure";
    case GenerationCheck::Unipotent: return "unipotent";
    case GenerationCheck::Skipped: return "skipped";
  }
  return "?";
}

namespace {

GenerationCheck check_generation(GroupPtr const& group, Element const& x, Element const& y, CertifyOptions const& options,
                                 std::vector<std::string>& warnings) {
  auto order = group->order();
  if (!order) {
    warnings.push_back("generation not checked: the group is infinite");
    return GenerationCheck::Skipped;
  }
  std::vector<Element> gens{x, y};
  if (*order <= options.closure_cap) {
    auto got = generated_subgroup_order(*group, gens, *order);
    if (!got || *got != *order)
      throw InvalidArgument("generators span a proper subgroup of " + group->descriptor());
    return GenerationCheck::Closure;
  }
  // In SL₂(p) the elementary matrices [[1,1],[0,1]] and [[1,0],[1,1]] generate.
  if (auto const* sl = dynamic_cast<SpecialLinearGroup const*>(group.get())) {
    std::int64_t half = static_cast<std::int64_t>((sl->prime() + 1) / 2);
    if (sl->power(x, half) == sl->element(1, 1, 0, 1) && sl->power(y, half) == sl->element(1, 0, 1, 1))
      return GenerationCheck::Unipotent;
  }
  warnings.push_back("generation not checked: group too large for closure");
  return GenerationCheck::Skipped;
}

}  // namespace

MainCertificate certify(GroupPtr const& group, Element const& x, Element const& y, CertifyOptions const& options) {
  MainCertificate cert;
  cert.group = group->descriptor();
  cert.x = group->format(x);
  cert.y = group->format(y);
  cert.generation = check_generation(group, x, y, options, cert.warnings);

  CayleyGraph graph(group, {x, y});
  cert.girth = girth(graph, {options.girth_limit, options.node_budget});
  if (cert.girth.girth && *cert.girth.girth <= 21) {
    cert.reason = "relation of length " + std::to_string(*cert.girth.girth);
    cert.violating_word = cert.girth.witness;
    return cert;
  }

  std::vector<Element> xy{x, y};
  std::vector<Element> s;
  for (auto const& w : connection_set_words()) {
    s.push_back(evaluate(w, xy, *group));
    cert.s.push_back(group->format(s.back()));
  }
  Element e = group->identity();
  cert.neighborhood_size = neighborhood(*group, s, e).size();
  cert.table_matches = cert.neighborhood_size == 27;
  for (auto const& ref : f2_reference_table()) {
    Element g = evaluate(ref.word, xy, *group);
    std::size_t a = affinity(*group, s, e, g);
    cert.table.push_back({ref.word, ref.affinity, a});
    if (a != ref.affinity) cert.table_matches = false;
  }

  // Upper bounds of a set A in P(G,S) are the u′ with u ∈ aS for every a ∈ A.
  auto upper_bounds = [&](std::vector<Element> const& a) {
    std::vector<Element> out;
    for (auto const& u0 : s) {
      Element u = group->multiply(a.front(), u0);
      bool ok = true;
      for (auto const& b : a) {
        Element d = group->multiply(group->inverse(b), u);
        ok = ok && std::find(s.begin(), s.end(), d) != s.end();
      }
      if (ok) out.push_back(u);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  auto ub = upper_bounds({e, group->inverse(y)});
  cert.unique_upper_bound = ub.size() == 1 && ub.front() == e;
  cert.four_point_upper_bound = !upper_bounds({e, group->power(x, 2), group->power(x, 3), group->power(x, 4)}).empty();

  cert.applicable = cert.table_matches && cert.unique_upper_bound && cert.four_point_upper_bound;
  if (!cert.applicable) cert.reason = "local data differs from the free group";
  return cert;
}

MainCertificate certify_margulis(std::uint64_t p, CertifyOptions const& options) {
  auto g = std::make_shared<SpecialLinearGroup>(p);
  auto [x, y] = margulis_generators(*g);
  return certify(g, x, y, options);
}

int margulis_bound_min_girth(std::uint64_t p) {
  using boost::multiprecision::cpp_int;
  cpp_int p2 = cpp_int(p) * p;
  // λ^k = a + b√2 with λ = 1 + √2; start at k = 1.
  cpp_int a = 1, b = 1;
  for (int g = 0;; ++g) {
    // λ^{g+1} ≥ p²/4  ⇔  4b√2 ≥ p² − 4a.
    cpp_int rhs = p2 - 4 * a;
    if (rhs <= 0 || 32 * b * b >= rhs * rhs) return g;
    cpp_int na = a + 2 * b, nb = a + b;
    a = na;
    b = nb;
  }
}

namespace {

GirthResult margulis_girth(std::uint64_t p, int limit) {
  auto g = std::make_shared<SpecialLinearGroup>(p);
  auto [x, y] = margulis_generators(*g);
  return girth(CayleyGraph(g, {x, y}), {limit});
}

}  // namespace

std::vector<PrimeScanRow> margulis_girths(std::uint64_t p_max, int limit) {
  std::vector<PrimeScanRow> rows;
  for (std::uint64_t p = 3; p <= p_max; p += 2)
    if (is_prime(p)) rows.push_back({p, margulis_girth(p, limit), margulis_bound_min_girth(p)});
  return rows;
}

PrimeScan scan_primes(int threshold, std::uint64_t p_max) {
  PrimeScan scan;
  for (std::uint64_t p = 3; p <= p_max; p += 2) {
    if (!is_prime(p)) continue;
    scan.rows.push_back({p, margulis_girth(p, threshold), margulis_bound_min_girth(p)});
    if (!scan.rows.back().girth.girth) {
      scan.first_above = p;
      break;
    }
  }
  return scan;
}

std::vector<CrossValidationRow> cross_validate_small(int n_min, int n_max) {
  if (n_min < 3) throw InvalidArgument("cross validation needs n ≥ 3");
  std::vector<CrossValidationRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    auto g = make_group("z:" + std::to_string(n));
    CrossValidationRow row;
    row.group = g->descriptor();
    auto cert = certify(g, g->parse_element("1"), g->parse_element("2"));
    row.applicable = cert.applicable;
    row.girth = cert.girth.girth;
    row.search_found = search_cayley(std::make_shared<CayleyTable>(g)).found;
    row.consistent = !row.applicable || row.search_found;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace posrep
