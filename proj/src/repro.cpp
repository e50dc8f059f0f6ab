#include "posrep/repro.hpp"

#include <functional>
#include <map>
#include <set>

#include "posrep/error.hpp"

namespace posrep {

bool ReproReport::pass() const {
  for (auto const& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

std::vector<std::string> const& repro_ids() {
  static std::vector<std::string> const ids{"ciclico",  "contraejemplos", "zeta22",    "main-f2",  "main-sl2",
                                            "corofew", "producto1",      "producto2", "nongraded"};
  return ids;
}

Json to_json(ReproReport const& r) {
  Json j;
  j["id"] = r.id;
  j["pass"] = r.pass();
  Json checks = Json::array();
  for (auto const& c : r.checks) {
    Json cj{{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["evidence"] = r.evidence;
  return j;
}

std::uint64_t enumerate_cyclically_reduced(int n, int l) {
  if (n < 1 || l < 1) throw InvalidArgument("enumerate_cyclically_reduced needs n ≥ 1 and l ≥ 1");
  std::uint64_t count = 0;
  std::vector<int> w;
  std::function<void()> go = [&] {
    if (static_cast<int>(w.size()) == l) {
      if (l == 1 || w.back() != -w.front()) ++count;
      return;
    }
    for (int g = 1; g <= n; ++g)
      for (int letter : {g, -g}) {
        if (!w.empty() && w.back() == -letter) continue;
        w.push_back(letter);
        go();
        w.pop_back();
      }
  };
  go();
  return count;
}

namespace {

void check(ReproReport& r, std::string name, bool pass, std::string detail = {}) {
  r.checks.push_back({std::move(name), pass, std::move(detail)});
}

CayleyTablePtr table_of(std::string_view d) { return std::make_shared<CayleyTable>(make_group(d)); }

std::vector<int> indices(CayleyTable const& t, std::vector<std::string> const& labels) {
  std::vector<int> out;
  for (auto const& l : labels) out.push_back(t.index_of(t.group().parse_element(l)));
  return out;
}

// Aut(P(Z_n, S)) has order n, acts freely and has two orbits.
Json cyclic_row(int n, std::vector<std::string> const& s, bool& ok) {
  auto spec = make_spec("z:" + std::to_string(n), s);
  auto poset = build_cayley_poset(spec);
  auto v = classify_poset(poset);
  ok = v.aut_order == n && v.free && v.orbit_count == 2;
  return {{"n", n}, {"s", s}, {"aut_order", big_to_json(v.aut_order)}, {"free", v.free}, {"orbits", v.orbit_count}};
}

ReproReport ciclico(ReproOptions const& o) {
  ReproReport r{"ciclico", {}, {}};
  if (o.n_max < 9) throw InvalidArgument("ciclico needs n_max ≥ 9");
  Json rows = Json::array();
  std::vector<int> failed;
  for (int n = 9; n <= o.n_max; ++n) {
    bool ok = false;
    rows.push_back(cyclic_row(n, {"0", "1", "3"}, ok));
    if (!ok) failed.push_back(n);
  }
  std::string detail;
  for (int n : failed) detail += (detail.empty() ? "fails at n = " : ", ") + std::to_string(n);
  check(r, "Z_n with S = {0,1,3}, 9 ≤ n ≤ " + std::to_string(o.n_max), failed.empty(), detail);
  bool ok8 = false;
  rows.push_back(cyclic_row(8, {"0", "1", "2", "4"}, ok8));
  check(r, "Z_8 with S = {0,1,2,4}", ok8);
  r.evidence["rows"] = rows;
  return r;
}

ReproReport contraejemplos(ReproOptions const&) {
  ReproReport r{"contraejemplos", {}, {}};
  Json rows = Json::array();
  for (auto const& row : reproduce_contraejemplos()) {
    check(r, row.group + " has no Cayley representation", !row.report.found,
          row.report.found ? "found S = " + Json(row.report.s_labels).dump() : "");
    rows.push_back(to_json(row.report));
  }
  r.evidence["groups"] = rows;
  return r;
}

ReproReport zeta22(ReproOptions const&) {
  ReproReport r{"zeta22", {}, {}};
  auto rep = enumerate_three_orbit(table_of("z2^k:2"));
  check(r, "no three-orbit semi-regular representation of Z2^2", rep.valid.empty());
  check(r, "candidates enumerated", rep.candidates > 0, std::to_string(rep.candidates) + " candidates");
  r.evidence["z2^2"] = to_json(rep);

  auto t = table_of("z:9");
  auto block = build_babai_poset(*t, build_drr_digraph(*t, indices(*t, {"1", "3"})));
  auto v = classify_action(block, left_regular_action(*t, block));
  check(r, "control: three-copy poset over a Z_9 digraph is semi-regular with three orbits",
        v.kind == VerdictKind::SemiRegular && v.orbit_count == 3 && v.full_aut);
  r.evidence["control"] = to_json(v, block);
  return r;
}

bool is_x_power(ReducedWord const& w) {
  for (int l : w.letters())
    if (l != 1 && l != -1) return false;
  return true;
}

ReproReport main_f2(ReproOptions const&) {
  ReproReport r{"main-f2", {}, {}};
  auto f = std::make_shared<FreeGroup>(2);
  auto c = certify(f, f->generator(1), f->generator(2));
  std::set<std::string> twelve, nine;
  for (auto const& e : c.table) {
    if (e.computed == 12) twelve.insert(e.word.to_string());
    if (e.computed == 9 && !is_x_power(e.word)) nine.insert(e.word.to_string());
  }
  check(r, "exactly x and x^-1 have affinity 12", twelve == std::set<std::string>{"x", "X"});
  check(r, "among non-x-powers exactly y and y^-1 have affinity 9", nine == std::set<std::string>{"y", "Y"});
  check(r, "|SS^-1| = 27", c.neighborhood_size == 27, std::to_string(c.neighborhood_size));
  check(r, "e' is the unique upper bound of {e, y^-1}", c.unique_upper_bound);
  check(r, "computed table equals the reference", c.table_matches);
  r.evidence["certificate"] = to_json(c);
  return r;
}

ReproReport main_sl2(ReproOptions const& o) {
  ReproReport r{"main-sl2", {}, {}};
  auto rows = margulis_girths(o.p_max);
  std::string bad;
  Json ev = Json::array();
  for (auto const& row : rows) {
    bool ok = !row.girth.girth || *row.girth.girth >= row.bound;
    if (!ok) bad += (bad.empty() ? "" : ", ") + std::to_string(row.p);
    ev.push_back({{"p", row.p}, {"girth", row.girth.girth ? Json(*row.girth.girth) : Json(nullptr)}, {"bound", row.bound}});
  }
  check(r, "girth meets the Margulis bound for odd primes p ≤ " + std::to_string(o.p_max), bad.empty() && !rows.empty(),
        bad.empty() ? "" : "fails at p = " + bad);
  r.evidence["bound"] = ev;

  auto scan = scan_primes(21);
  check(r, "prime scan finds a prime with girth > 21", scan.first_above.has_value());
  r.evidence["first_prime_girth_above_21"] = scan.first_above ? Json(*scan.first_above) : Json(nullptr);
  if (scan.first_above) {
    auto c = certify_margulis(*scan.first_above);
    check(r, "certificate applies at that prime", c.applicable, c.reason);
    check(r, "affinity table equals the free-group table", c.table_matches);
    check(r, "unique upper bound of {e, y^-1}", c.unique_upper_bound);
    r.evidence["certificate"] = to_json(c);
  }
  return r;
}

ReproReport corofew(ReproOptions const& o) {
  ReproReport r{"corofew", {}, {}};
  bool counts = true;
  for (int l = 1; l <= 12; ++l) counts = counts && count_cyclically_reduced(2, l).exact == enumerate_cyclically_reduced(2, l);
  check(r, "c_l equals enumeration for l ≤ 12", counts);
  bool bound = true;
  BigCount three = 1;
  for (int l = 1; l <= 20; ++l, three *= 3) bound = bound && count_cyclically_reduced(2, l).exact <= 4 * three;
  check(r, "c_l ≤ 4·3^(l-1) for l ≤ 20", bound);

  FewRelatorOptions fo;
  fo.count = o.samples;
  fo.seed = o.seed;
  fo.threads = o.threads;
  auto s = summarize(sample_few_relators(fo));
  check(r, "at least 95% of samples are C'(1/6) with relators of length ≥ 22",
        static_cast<std::int64_t>(s.representable) * 100 >= static_cast<std::int64_t>(s.samples) * 95,
        std::to_string(s.representable) + "/" + std::to_string(s.samples));
  r.evidence["sampler"] = to_json(s);
  r.evidence["seed"] = o.seed;
  return r;
}

// Associativity, identity and inverses of H on every (g, n) with |n| ≤ 3.
bool h_axioms(GroupPtr const& g, GroupAutomorphism const& psi) {
  ExtensionGroup h(g, psi);
  std::vector<Element> el;
  for (auto const& x : g->elements())
    for (int n = -3; n <= 3; ++n) el.push_back(h.element(x, n));
  for (auto const& a : el) {
    if (h.multiply(a, h.identity()) != a || h.multiply(h.identity(), a) != a) return false;
    if (h.multiply(a, h.inverse(a)) != h.identity()) return false;
  }
  for (auto const& a : el)
    for (auto const& b : el) {
      auto ab = h.multiply(a, b);
      for (auto const& c : el)
        if (h.multiply(ab, c) != h.multiply(a, h.multiply(b, c))) return false;
    }
  return true;
}

ReproReport producto1(ReproOptions const& o) {
  ReproReport r{"producto1", {}, {}};
  auto spec = make_spec("z:9", {"0", "1", "3"});
  auto z9 = spec.table->group_ptr();
  check(r, "H axioms on Z_9 with psi = id", h_axioms(z9, identity_automorphism()));
  check(r, "H axioms on Z_9 with psi = mul:2", h_axioms(z9, parse_automorphism(z9, "mul:2")));
  auto z = make_group("int");
  ExtensionGroup klein(z, parse_automorphism(z, "neg"));
  check(r, "Klein example (1,0)(0,1) = (-1,1)",
        klein.format(klein.multiply(klein.parse_element("(1,0)"), klein.parse_element("(0,1)"))) == "(-1,1)");

  int N = o.window;
  auto w = build_product1_window(spec, identity_automorphism(), N);
  check(r, "window has (2N+2)|G| points", w.poset.size() == static_cast<std::size_t>((2 * N + 2) * 9),
        std::to_string(w.poset.size()));
  auto g = gradedness(w.poset);
  bool by_layer = g.graded;
  for (std::size_t p = 0; by_layer && p < w.poset.size(); ++p)
    by_layer = g.rank[p] == w.layer(static_cast<int>(p)) - w.min_layer();
  check(r, "graded with rank = layer", by_layer);
  check(r, "height 2N+1", w.poset.height() == 2 * N + 1);
  auto a = check_action_on_window(w);
  check(r, "action maps sub-windows injectively and order-preservingly",
        a.maps_into_window && a.injective && a.order_preserving, a.failure);
  check(r, "action is free", a.free, a.failure);
  check(r, "interior is one orbit of (e,0)", a.interior_transitive && a.orbit_types == 1, a.failure);
  auto f = rank_epimorphism_check(w);
  check(r, "rank map is additive and equals n", f.graded && f.additive && f.matches_level && f.onto_interval, f.failure);
  r.evidence["points"] = w.poset.size();
  r.evidence["action"] = to_json(a);
  r.evidence["rank_map"] = to_json(f);
  return r;
}

ReproReport producto2(ReproOptions const&) {
  ReproReport r{"producto2", {}, {}};
  auto t = table_of("z:9");
  auto block = build_babai_poset(*t, build_drr_digraph(*t, indices(*t, {"1", "3"})));
  int N = 1;
  auto w = build_product2_window(t, block, identity_automorphism(), N);
  check(r, "window has (2N+1)·2|G| + |G| points", w.poset.size() == static_cast<std::size_t>((2 * N + 1) * 18 + 9),
        std::to_string(w.poset.size()));
  std::set<int> thin, middle;
  for (std::size_t p = 0; p < w.poset.size(); ++p) {
    int i = static_cast<int>(p);
    if (w.poset.lower_covers(i).size() == 1 && w.poset.upper_covers(i).size() == 1) thin.insert(i);
    if (w.poset.point(i).copy == 1) middle.insert(i);
  }
  check(r, "middle copies are exactly the points with one lower and one upper cover", thin == middle);
  auto a = check_action_on_window(w);
  check(r, "action maps sub-windows injectively and order-preservingly",
        a.maps_into_window && a.injective && a.order_preserving, a.failure);
  check(r, "action is free", a.free, a.failure);
  check(r, "interior splits into two orbit types", a.interior_transitive && a.orbit_types == 2, a.failure);
  r.evidence["points"] = w.poset.size();
  r.evidence["action"] = to_json(a);
  return r;
}

ReproReport nongraded(ReproOptions const&) {
  ReproReport r{"nongraded", {}, {}};
  auto p = integer_gap_poset(0, 6);
  auto g = gradedness(p);
  check(r, "(Z, gap 2) on {0..6} is not graded", !g.graded);
  bool chains = g.chains && g.chains->first == std::vector<int>{0, 2, 4, 6} && g.chains->second == std::vector<int>{0, 3, 6};
  check(r, "witness chains 0<2<4<6 and 0<3<6", chains);
  r.evidence["gradedness"] = to_json(g, p);

  auto w = build_product1_window(make_spec("z:9", {"0", "1", "3"}), identity_automorphism(), 2);
  check(r, "a first-gluing window is graded", gradedness(w.poset).graded);
  return r;
}

}  // namespace

ReproReport run_repro(std::string_view id, ReproOptions const& options) {
  static std::map<std::string, std::function<ReproReport(ReproOptions const&)>, std::less<>> const drivers{
      {"ciclico", ciclico},     {"contraejemplos", contraejemplos}, {"zeta22", zeta22},
      {"main-f2", main_f2},     {"main-sl2", main_sl2},             {"corofew", corofew},
      {"producto1", producto1}, {"producto2", producto2},           {"nongraded", nongraded}};
  auto it = drivers.find(id);
  if (it == drivers.end()) throw InvalidArgument("unknown reproduction id '" + std::string(id) + "'");
  return it->second(options);
}

}  // namespace posrep
