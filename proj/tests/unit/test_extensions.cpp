#include <doctest.h>

#include <random>
#include <set>

#include "posrep/error.hpp"
#include "posrep/extensions.hpp"
#include "posrep/poset.hpp"

using namespace posrep;

namespace {

// G ⋊ ℤ on Z_9 with ψ(b) = 2b, written with plain integers:
// (a,m)(b,k) = (a + 2^m b, m + k).
struct Z9Semidirect {
  static int pow2(std::int64_t m) {
    int r = 1;
    int base = m >= 0 ? 2 : 5;  // 5 = 2⁻¹ mod 9
    for (std::int64_t i = 0; i < (m >= 0 ? m : -m); ++i) r = r * base % 9;
    return r;
  }
  static std::pair<int, std::int64_t> mul(std::pair<int, std::int64_t> x, std::pair<int, std::int64_t> y) {
    return {(x.first + pow2(x.second) * y.first) % 9, x.second + y.second};
  }
};

int residue(Group const& g, Element const& e) { return std::stoi(g.format(e)); }

}  // namespace

TEST_CASE("extension group axioms against the semidirect product") {
  auto z9 = make_group("z:9");
  ExtensionGroup h(z9, parse_automorphism(z9, "mul:2"));
  std::mt19937_64 rng(5);
  auto random_element = [&] {
    return h.element(z9->parse_element(std::to_string(rng() % 9)), static_cast<std::int64_t>(rng() % 11) - 5);
  };
  for (int t = 0; t < 500; ++t) {
    auto a = random_element(), b = random_element(), c = random_element();
    CHECK(h.multiply(h.multiply(a, b), c) == h.multiply(a, h.multiply(b, c)));
    CHECK(h.multiply(a, h.identity()) == a);
    CHECK(h.multiply(h.inverse(a), a) == h.identity());
    CHECK(h.level(h.multiply(a, b)) == h.level(a) + h.level(b));
    auto sa = h.to_semidirect(a), sb = h.to_semidirect(b), sab = h.to_semidirect(h.multiply(a, b));
    auto expected = Z9Semidirect::mul({residue(*z9, sa.first), sa.second}, {residue(*z9, sb.first), sb.second});
    CHECK(residue(*z9, sab.first) == expected.first);
    CHECK(sab.second == expected.second);
  }
  auto e = h.parse_element("(4,-3)");
  CHECK(h.format(e) == "(4,-3)");
  CHECK(h.descriptor() == "h(z:9,mul:2)");
  CHECK_THROWS_AS(h.parse_element("4,-3"), ParseError);
}

TEST_CASE("extension products") {
  auto z9 = make_group("z:9");
  ExtensionGroup direct(z9, identity_automorphism());
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b) {
      auto x = direct.element(z9->parse_element(std::to_string(a)), 1);
      auto y = direct.element(z9->parse_element(std::to_string(b)), 2);
      CHECK(direct.format(direct.multiply(x, y)) == "(" + std::to_string((a + b) % 9) + ",3)");
    }

  auto z = make_group("int");
  ExtensionGroup klein(z, parse_automorphism(z, "neg"));
  CHECK(klein.format(klein.multiply(klein.parse_element("(1,0)"), klein.parse_element("(0,1)"))) == "(-1,1)");
  CHECK(klein.format(klein.multiply(klein.parse_element("(0,1)"), klein.parse_element("(1,0)"))) == "(1,1)");
}

TEST_CASE("automorphism parsing") {
  auto z9 = make_group("z:9");
  auto psi = parse_automorphism(z9, "mul:2");
  CHECK(z9->format(psi.power(z9->parse_element("1"), 3)) == "8");
  CHECK(z9->format(psi.power(z9->parse_element("1"), -1)) == "5");
  CHECK_THROWS_AS(parse_automorphism(z9, "mul:3"), InvalidArgument);
  CHECK_THROWS_AS(parse_automorphism(z9, "shift"), ParseError);
  CHECK_THROWS_AS(parse_automorphism(make_group("s:3"), "mul:2"), InvalidArgument);
  CHECK_NOTHROW(parse_automorphism(make_group("s:3"), "id"));
  CHECK_THROWS_AS(parse_automorphism(make_group("int"), "mul:2"), InvalidArgument);
}

TEST_CASE("first gluing window is graded by layer") {
  auto spec = make_spec("z:9", {"0", "1", "3"});
  for (auto name : {"id", "mul:2", "neg"}) {
    CAPTURE(name);
    auto w = build_product1_window(spec, parse_automorphism(spec.table->group_ptr(), name), 2);
    CHECK(w.poset.size() == 54);
    CHECK(w.poset.height() == 5);
    CHECK(w.poset.is_connected());
    auto g = gradedness(w.poset);
    REQUIRE(g.graded);
    for (std::size_t p = 0; p < w.poset.size(); ++p) CHECK(g.rank[p] == w.layer(static_cast<int>(p)) - w.min_layer());
  }
}

TEST_CASE("H acts on the first gluing window") {
  auto spec = make_spec("z:9", {"0", "1", "3"});
  auto z9 = spec.table->group_ptr();
  auto w = build_product1_window(spec, parse_automorphism(z9, "mul:2"), 3);
  CHECK(w.poset.size() == 72);
  auto r = check_action_on_window(w);
  CAPTURE(r.failure);
  CHECK(r.maps_into_window);
  CHECK(r.injective);
  CHECK(r.order_preserving);
  CHECK(r.free);
  CHECK(r.interior_transitive);
  CHECK(r.orbit_types == 1);
  CHECK(r.elements_checked == 9 * 5);
  REQUIRE(r.window_rigid.has_value());
  CHECK(*r.window_rigid);

  // (3,1) sends (g, L) to (2^L·3 + g, L + 1).
  for (int layer = -3; layer <= 2; ++layer)
    for (int g = 0; g < 9; ++g) {
      int p = w.point(z9->parse_element(std::to_string(g)), layer);
      int q = act_on_window(w, z9->parse_element("3"), 1, p);
      int shift = (Z9Semidirect::pow2(layer) * 3 + g) % 9;
      CHECK(q == w.point(z9->parse_element(std::to_string(shift)), layer + 1));
    }

  // Acting with the wrong twist breaks the order.
  auto wrong = build_product1_window(spec, identity_automorphism(), 2);
  wrong.psi = parse_automorphism(z9, "mul:2");
  auto bad = check_action_on_window(wrong, false);
  CHECK_FALSE(bad.order_preserving);
  CHECK_FALSE(bad.failure.empty());
}

TEST_CASE("second gluing window from a three-orbit block") {
  auto t = std::make_shared<CayleyTable>(make_group("z:9"));
  std::vector<int> s{t->index_of(t->group().parse_element("1")), t->index_of(t->group().parse_element("3"))};
  auto block = build_babai_poset(*t, build_drr_digraph(*t, s));
  auto w = build_product2_window(t, block, parse_automorphism(t->group_ptr(), "mul:2"), 1);
  CHECK(w.poset.size() == 63);

  // The middle copies are exactly the points with a single lower and a single upper cover.
  std::set<int> thin, middle;
  for (std::size_t p = 0; p < w.poset.size(); ++p) {
    int i = static_cast<int>(p);
    if (w.poset.lower_covers(i).size() == 1 && w.poset.upper_covers(i).size() == 1) thin.insert(i);
    if (w.poset.point(i).copy == 1) middle.insert(i);
  }
  CHECK(thin == middle);
  CHECK(middle.size() == 27);

  auto r = check_action_on_window(w);
  CAPTURE(r.failure);
  CHECK(r.maps_into_window);
  CHECK(r.injective);
  CHECK(r.order_preserving);
  CHECK(r.free);
  CHECK(r.interior_transitive);
  CHECK(r.orbit_types == 2);

  // Chains g < g' < g'' and covers g < h'' have different lengths.
  CHECK_FALSE(gradedness(w.poset).graded);
  CHECK_FALSE(rank_epimorphism_check(w).graded);
}

TEST_CASE("integers with gap order are not graded") {
  auto p = integer_gap_poset(0, 6);
  auto g = gradedness(p);
  CHECK_FALSE(g.graded);
  REQUIRE(g.chains.has_value());
  CHECK(g.chains->first == std::vector<int>{0, 2, 4, 6});
  CHECK(g.chains->second == std::vector<int>{0, 3, 6});
  CHECK(gradedness(integer_gap_poset(0, 6, 1)).graded);
  CHECK(gradedness(integer_gap_poset(0, 3)).graded);  // 0<2, 0<3, 1<3
  CHECK_THROWS_AS(integer_gap_poset(3, 2), InvalidArgument);
}

TEST_CASE("gradedness answers come with checkable witnesses") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 300; ++t) {
    int n = 2 + static_cast<int>(rng() % 8);
    std::vector<PointInfo> pts;
    for (int i = 0; i < n; ++i) pts.push_back({std::to_string(i), -1, 0, 0});
    std::vector<std::pair<int, int>> rel;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng() % 3 == 0) rel.emplace_back(a, b);
    auto p = FinitePoset::from_relations(pts, rel);
    auto g = gradedness(p);
    if (g.graded) {
      for (auto [a, b] : p.covers()) CHECK(g.rank[static_cast<std::size_t>(b)] == g.rank[static_cast<std::size_t>(a)] + 1);
    } else if (g.chains) {
      auto const& [c1, c2] = *g.chains;
      CHECK(c1.front() == c2.front());
      CHECK(c1.back() == c2.back());
      CHECK(c1.size() != c2.size());
      for (auto const* c : {&c1, &c2})
        for (std::size_t i = 0; i + 1 < c->size(); ++i) CHECK(p.cover_matrix().test((*c)[i], (*c)[i + 1]));
    } else {
      // Closed walk whose signed cover steps do not sum to zero.
      REQUIRE(g.cycle.size() >= 3);
      CHECK(g.cycle.front() == g.cycle.back());
      int sum = 0;
      for (std::size_t i = 0; i + 1 < g.cycle.size(); ++i) {
        int a = g.cycle[i], b = g.cycle[i + 1];
        bool up = p.cover_matrix().test(a, b), down = p.cover_matrix().test(b, a);
        REQUIRE((up || down));
        sum += up ? 1 : -1;
      }
      CHECK(sum != 0);
    }
  }
}

TEST_CASE("rank map is the level homomorphism") {
  auto spec = make_spec("z:9", {"0", "1", "3"});
  auto w = build_product1_window(spec, parse_automorphism(spec.table->group_ptr(), "mul:2"), 2);
  auto r = rank_epimorphism_check(w);
  CAPTURE(r.failure);
  CHECK(r.graded);
  CHECK(r.additive);
  CHECK(r.onto_interval);
  CHECK(r.matches_level);
  CHECK(r.pairs_checked > 0);

  // Truncated window of the Klein-bottle-like extension Z ⋊ Z.
  auto z = make_group("int");
  std::vector<Element> el;
  for (int v = -6; v <= 6; ++v) el.push_back(z->parse_element(std::to_string(v)));
  auto k = build_product1_window(z, el, {z->parse_element("0"), z->parse_element("1")}, parse_automorphism(z, "neg"), 2);
  CHECK(k.poset.size() == 13 * 6);
  auto kr = rank_epimorphism_check(k);
  CAPTURE(kr.failure);
  CHECK(kr.graded);
  CHECK(kr.additive);
  CHECK(kr.matches_level);
  CHECK_THROWS_AS(check_action_on_window(k), NotEnumerable);
}

TEST_CASE("window preconditions") {
  auto z2 = make_spec("z:2", {"0"});
  CHECK_THROWS_AS(build_product1_window(z2, identity_automorphism(), 1), InvalidArgument);
  auto bad = make_spec("z:8", {"0", "1", "3"});
  CHECK_THROWS_AS(build_product1_window(bad, identity_automorphism(), 1), InvalidArgument);
  auto good = make_spec("z:9", {"0", "1", "3"});
  WindowOptions small;
  small.max_points = 50;
  CHECK_THROWS_AS(build_product1_window(good, identity_automorphism(), 2, small), CapExceeded);
  CHECK_THROWS_AS(build_product1_window(good, identity_automorphism(), -1), InvalidArgument);

  auto k4 = std::make_shared<CayleyTable>(make_group("z2^k:2"));
  auto b = build_babai_poset(*k4, build_drr_digraph(*k4, std::vector<int>{1}));
  CHECK_THROWS_AS(build_product2_window(k4, b, identity_automorphism(), 1), InvalidArgument);

  // A block that is not a representation: the Babai poset of a digraph with
  // extra symmetry.
  auto z5 = std::make_shared<CayleyTable>(make_group("z:5"));
  auto sym = build_babai_poset(*z5, build_drr_digraph(*z5, std::vector<int>{1, 4}));
  CHECK_THROWS_AS(build_product2_window(z5, sym, identity_automorphism(), 1), InvalidArgument);
}

TEST_CASE("untwisted window: identity fixes everything and (3,1) shifts by 3") {
  auto spec = make_spec("z:9", {"0", "1", "3"});
  auto z9 = spec.table->group_ptr();
  auto w = build_product1_window(spec, identity_automorphism(), 3);
  for (std::size_t p = 0; p < w.poset.size(); ++p) {
    int i = static_cast<int>(p);
    CHECK(act_on_window(w, z9->identity(), 0, i) == i);
    int q = act_on_window(w, z9->parse_element("3"), 1, i);
    if (w.layer(i) == w.max_layer()) {
      CHECK(q == -1);
      continue;
    }
    int g = residue(*z9, w.elements[static_cast<std::size_t>(w.poset.point(i).element)]);
    CHECK(q == w.point(z9->parse_element(std::to_string((g + 3) % 9)), w.layer(i) + 1));
  }
  auto r = check_action_on_window(w);
  CHECK(r.free);
  CHECK(r.interior_transitive);
  CHECK(r.order_preserving);
}
