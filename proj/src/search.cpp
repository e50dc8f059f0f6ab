#include "posrep/search.hpp"

#include <set>

#include "posrep/error.hpp"

namespace posrep {

bool is_cayley_representation(CayleySpec const& spec) {
  auto p = build_cayley_poset(spec);
  return stabilizer_is_trivial(p, spec.table->identity()).trivial;
}

namespace {

enum class Rule { Translation, Automorphism, Complement };

struct MaskMap {
  Rule rule;
  std::vector<int> perm;  // empty for complement
};

std::uint32_t apply(MaskMap const& m, std::uint32_t mask, std::uint32_t full) {
  if (m.rule == Rule::Complement) return full & ~mask;
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < m.perm.size(); ++i)
    if (mask >> i & 1u) out |= 1u << m.perm[i];
  return out;
}

std::vector<int> mask_indices(std::uint32_t mask, std::size_t n) {
  std::vector<int> s;
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1u) s.push_back(static_cast<int>(i));
  return s;
}

}  // namespace

SearchReport search_cayley(CayleyTablePtr const& table, SearchOptions const& options) {
  std::size_t n = table->size();
  if (n > options.max_order || n > 24)
    throw CapExceeded("group order " + std::to_string(n) + " exceeds the search limit " +
                      std::to_string(options.max_order));
  SearchReport report;
  report.group = table->descriptor();
  report.order = n;

  auto record_found = [&](std::uint32_t mask) {
    report.found = true;
    report.s = mask_indices(mask, n);
    for (int x : report.s) report.s_labels.push_back(table->label(x));
  };

  if (n == 1) {
    report.counters.total = 1;
    report.counters.tried = 1;
    if (is_cayley_representation(CayleySpec(table, {0}))) record_found(1);
    return report;
  }

  std::uint32_t full = (1u << n) - 1;
  report.counters.total = (std::uint64_t{1} << n) - 2;

  std::vector<MaskMap> maps;
  if (options.prune_translation) {
    for (int h : greedy_generating_tuple(*table)) {
      std::vector<int> perm(n);
      for (std::size_t i = 0; i < n; ++i) perm[i] = table->mul(static_cast<int>(i), h);
      maps.push_back({Rule::Translation, std::move(perm)});
    }
  }
  if (options.prune_automorphism) {
    for (auto const& a : automorphism_generators(group_automorphisms(*table, options.max_order)))
      if (!a.is_identity()) maps.push_back({Rule::Automorphism, a.image});
  }
  if (options.prune_complement) maps.push_back({Rule::Complement, {}});

  std::vector<bool> visited(std::size_t{1} << n, false);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    if (visited[mask]) continue;
    visited[mask] = true;
    ++report.counters.tried;
    queue.assign(1, mask);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (auto const& m : maps) {
        std::uint32_t next = apply(m, queue[head], full);
        if (visited[next]) continue;
        visited[next] = true;
        queue.push_back(next);
        switch (m.rule) {
          case Rule::Translation: ++report.counters.pruned_translation; break;
          case Rule::Automorphism: ++report.counters.pruned_automorphism; break;
          case Rule::Complement: ++report.counters.pruned_complement; break;
        }
      }
    }
    if (is_cayley_representation(CayleySpec(table, mask_indices(mask, n)))) {
      record_found(mask);
      break;
    }
  }
  return report;
}

std::vector<std::string> contraejemplos_groups() {
  return {"z:3", "z:4", "z:5", "z:6", "z:7", "z2^k:2", "z2^k:3", "z2^k:4", "z3^k:2", "s:3", "q8"};
}

std::vector<ContraejemplosRow> reproduce_contraejemplos(SearchOptions const& options) {
  std::vector<ContraejemplosRow> rows;
  for (auto const& d : contraejemplos_groups()) {
    auto table = std::make_shared<CayleyTable>(make_group(d));
    rows.push_back({d, search_cayley(table, options)});
  }
  return rows;
}

namespace {

std::string copy_suffix(int copy) { return std::string(static_cast<std::size_t>(copy), '\''); }

std::vector<PointInfo> three_copy_points(CayleyTable const& t) {
  std::vector<PointInfo> pts;
  int n = static_cast<int>(t.size());
  for (int c = 0; c < 3; ++c)
    for (int g = 0; g < n; ++g) pts.push_back({t.label(g) + copy_suffix(c), g, c, 0});
  return pts;
}

void add_pair(BitMatrix& m, CayleyTable const& t, int i, int j, OrbitPairRelation const& r) {
  int n = static_cast<int>(t.size());
  for (int g = 0; g < n; ++g)
    for (int d = 0; d < n; ++d) {
      if (!(r.mask >> d & 1u)) continue;
      int h = t.mul(g, d);
      if (r.lower_first)
        m.set(static_cast<std::size_t>(i * n + g), static_cast<std::size_t>(j * n + h));
      else
        m.set(static_cast<std::size_t>(j * n + h), static_cast<std::size_t>(i * n + g));
    }
}

// Closed relation for the candidate, plus the reason it fails to be a
// strict order with no comparabilities inside an orbit (empty if fine).
std::pair<BitMatrix, std::string> close_candidate(CayleyTable const& t, ThreeOrbitCandidate const& c) {
  int n = static_cast<int>(t.size());
  BitMatrix m(static_cast<std::size_t>(3 * n));
  add_pair(m, t, 0, 1, c.r01);
  add_pair(m, t, 0, 2, c.r02);
  add_pair(m, t, 1, 2, c.r12);
  m.close_transitively();
  for (int a = 0; a < 3 * n; ++a)
    if (m.test(a, a)) return {std::move(m), "cycle"};
  for (int a = 0; a < 3 * n; ++a)
    for (int b = 0; b < 3 * n; ++b)
      if (a / n == b / n && m.test(a, b)) return {std::move(m), "same-orbit"};
  return {std::move(m), {}};
}

}  // namespace

ThreeOrbitValidation validate_three_orbit_candidate(CayleyTablePtr const& table, ThreeOrbitCandidate const& c) {
  ThreeOrbitValidation out;
  std::uint32_t limit = table->size() >= 32 ? ~0u : (1u << table->size());
  for (auto const* r : {&c.r01, &c.r02, &c.r12})
    if (r->mask >= limit) throw InvalidArgument("orbit pair mask has bits beyond the group order");
  auto [rel, why] = close_candidate(*table, c);
  if (!why.empty()) {
    out.rejection = why;
    return out;
  }
  out.order_ok = true;
  FinitePoset p(three_copy_points(*table), std::move(rel));
  out.verdict = classify_action(p, left_regular_action(*table, p));
  out.valid = out.verdict->free && out.verdict->orbit_count == 3 && out.verdict->full_aut;
  out.poset = std::move(p);
  return out;
}

ThreeOrbitReport enumerate_three_orbit(CayleyTablePtr const& table, std::size_t max_order) {
  std::size_t n = table->size();
  if (n > max_order)
    throw CapExceeded("three-orbit enumeration is limited to groups of order " + std::to_string(max_order));
  ThreeOrbitReport report;
  report.group = table->descriptor();

  std::vector<OrbitPairRelation> options;
  std::uint32_t masks = 1u << n;
  for (std::uint32_t m = 0; m < masks; ++m) options.push_back({true, m});
  for (std::uint32_t m = 1; m < masks; ++m) options.push_back({false, m});

  std::set<std::vector<std::uint64_t>> seen;
  auto pts = three_copy_points(*table);
  for (auto const& a : options)
    for (auto const& b : options)
      for (auto const& c : options) {
        ++report.candidates;
        auto [rel, why] = close_candidate(*table, {a, b, c});
        if (why == "cycle") {
          ++report.rejected_cycle;
          continue;
        }
        if (!why.empty()) {
          ++report.rejected_same_orbit;
          continue;
        }
        std::vector<std::uint64_t> key(rel.row(0), rel.row(0) + rel.size() * rel.words_per_row());
        if (!seen.insert(std::move(key)).second) continue;
        FinitePoset p(pts, std::move(rel));
        auto v = classify_action(p, left_regular_action(*table, p));
        if (v.free && v.orbit_count == 3 && v.full_aut) report.valid.push_back(std::move(p));
      }
  report.distinct_orders = seen.size();
  return report;
}

}  // namespace posrep
