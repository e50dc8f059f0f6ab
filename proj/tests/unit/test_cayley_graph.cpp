#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "posrep/cayley_graph.hpp"
#include "posrep/error.hpp"

using namespace posrep;

namespace {

CayleyGraph graph(std::string_view descriptor, std::vector<std::string> const& gens) {
  auto g = make_group(descriptor);
  std::vector<Element> els;
  for (auto const& s : gens) els.push_back(g->parse_element(s));
  return CayleyGraph(g, els);
}

std::vector<Element> elements_of(Group const& g, std::vector<std::string> const& labels) {
  std::vector<Element> out;
  for (auto const& s : labels) out.push_back(g.parse_element(s));
  return out;
}

}  // namespace

TEST_CASE("girth examples") {
  auto f2 = graph("f:2", {"x", "y"});
  auto r = girth(f2);
  CHECK_FALSE(r.girth.has_value());
  CHECK(r.limit == 24);
  CHECK(r.radius == 11);

  auto z = girth(graph("int", {"1", "3"}));
  CHECK(z.girth == 4);
  CHECK(z.witness->length() == 4);

  auto s3 = girth(graph("s:3", {"(12)", "(123)"}));
  CHECK(s3.girth == 2);
  CHECK(*s3.witness == ReducedWord::parse("x x"));

  auto z6 = girth(graph("z:6", {"1", "2"}));
  CHECK(z6.girth == 3);

  auto loop = girth(graph("z:5", {"0", "1"}));
  CHECK(loop.girth == 1);

  SpecialLinearGroup g5(5);
  auto [x, y] = margulis_generators(g5);
  CayleyGraph m5(std::make_shared<SpecialLinearGroup>(5), {x, y});
  auto r5 = girth(m5);
  CHECK(r5.girth == 5);
  CHECK(*r5.witness == ReducedWord::parse("x^5"));
}

TEST_CASE("girth agrees with word enumeration") {
  std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"z:7", {"1", "3"}},        {"z:12", {"4", "6"}},          {"s:3", {"(12)", "(23)"}},
      {"s:4", {"(1234)", "(12)"}}, {"q8", {"i", "j"}},            {"d:5", {"r", "s"}},
      {"sl2:3", {"[[1,2],[0,1]]", "[[1,0],[2,1]]"}},             {"sl2:7", {"[[1,2],[0,1]]", "[[1,0],[2,1]]"}},
      {"prod(z:3,z:3)", {"(1;0)", "(0;1)"}},                    {"int", {"2", "5"}},
      {"s:5", {"(12345)", "(123)"}},                              {"z:1", {"0"}}};
  for (auto const& [d, gens] : cases) {
    CAPTURE(d);
    auto g = graph(d, gens);
    GirthOptions opt;
    opt.limit = 10;
    auto bfs = girth(g, opt);
    CHECK(bfs.girth == girth_by_words(g, 10));
    if (bfs.witness) {
      std::vector<Element> gens_el = g.generators();
      CHECK(evaluate(*bfs.witness, gens_el, g.group()) == g.group().identity());
    }
  }
}

TEST_CASE("girth node budget") {
  GirthOptions opt;
  opt.node_budget = 100;
  CHECK_THROWS_AS(girth(graph("f:2", {"x", "y"}), opt), CapExceeded);
}

TEST_CASE("Margulis girth bound for small primes") {
  for (int p : {3, 5, 7, 11, 13, 17, 19, 23}) {
    CAPTURE(p);
    auto g = std::make_shared<SpecialLinearGroup>(p);
    auto [x, y] = margulis_generators(*g);
    auto r = girth(CayleyGraph(g, {x, y}));
    REQUIRE(r.girth);
    double bound = 2 * std::log(p / 2.0) / std::log(1 + std::sqrt(2.0)) - 1;
    CHECK(*r.girth >= bound);
  }
}

TEST_CASE("neighborhoods and affinity in Z_n") {
  auto z = make_group("z:12");
  auto s = elements_of(*z, {"0", "1", "3"});
  auto n0 = neighborhood(*z, s, z->parse_element("0"));
  CHECK(n0.size() == 7);
  CHECK(affinity(*z, s, z->parse_element("0"), z->parse_element("5")) == 2);
  for (int n = 8; n <= 15; ++n) {
    auto zn = make_group("z:" + std::to_string(n));
    auto sn = elements_of(*zn, {"0", "1", "3"});
    for (int i = 0; i < n; ++i) {
      auto gi = zn->parse_element(std::to_string(i));
      auto nb = neighborhood(*zn, sn, gi);
      std::vector<Element> expected;
      for (int d = -3; d <= 3; ++d) expected.push_back(zn->parse_element(std::to_string(((i + d) % n + n) % n)));
      std::sort(expected.begin(), expected.end());
      CHECK(nb == expected);
      CHECK(affinity(*zn, sn, gi, zn->parse_element(std::to_string((i + 1) % n))) == 6);
      CHECK(affinity(*zn, sn, gi, gi) == 7);
    }
  }
  auto e_only = elements_of(*z, {"0"});
  CHECK(neighborhood(*z, e_only, z->parse_element("4")) == elements_of(*z, {"4"}));
}

TEST_CASE("balls in high-girth graphs are free trees") {
  auto f2 = graph("f:2", {"x", "y"});
  for (int r = 0; r <= 5; ++r) CHECK(ball_matches_free_tree(f2, build_ball(f2, f2.group().identity(), r)));
  auto g = std::make_shared<SpecialLinearGroup>(61);
  auto [x, y] = margulis_generators(*g);
  CayleyGraph m(g, {x, y});
  auto gr = girth(m);
  REQUIRE(gr.girth);
  int rmax = (*gr.girth - 2) / 2;
  CHECK(ball_matches_free_tree(m, build_ball(m, g->identity(), rmax)));
  CHECK_FALSE(ball_matches_free_tree(m, build_ball(m, g->identity(), rmax + 1)));
  CHECK(m.degree() == 4);
  CHECK(graph("s:3", {"(12)", "(123)"}).degree() == 3);
}
