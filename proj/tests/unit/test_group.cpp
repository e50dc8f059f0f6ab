#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "posrep/error.hpp"
#include "posrep/group.hpp"

using namespace posrep;

namespace {

std::uint64_t count_sl2_by_brute_force(int p) {
  std::uint64_t count = 0;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c)
        for (int d = 0; d < p; ++d)
          if (((a * d - b * c) % p + p) % p == 1) ++count;
  return count;
}

void check_axioms(GroupPtr const& g, std::uint64_t samples, std::uint64_t seed) {
  auto elems = g->elements();
  REQUIRE(elems.size() == *g->order());
  std::set<Element> distinct(elems.begin(), elems.end());
  CHECK(distinct.size() == elems.size());
  Element e = g->identity();
  for (auto const& x : elems) {
    CHECK(g->multiply(x, g->inverse(x)) == e);
    CHECK(g->multiply(g->inverse(x), x) == e);
    CHECK(g->multiply(e, x) == x);
    CHECK(g->multiply(x, e) == x);
    CHECK(distinct.count(g->multiply(x, x)) == 1);
    CHECK(g->parse_element(g->format(x)) == x);
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
  for (std::uint64_t i = 0; i < samples; ++i) {
    auto const& a = elems[pick(rng)];
    auto const& b = elems[pick(rng)];
    auto const& c = elems[pick(rng)];
    REQUIRE(g->multiply(g->multiply(a, b), c) == g->multiply(a, g->multiply(b, c)));
  }
}

}  // namespace

TEST_CASE("group families satisfy the group axioms") {
  for (auto d : {"z:1", "z:6", "z:97", "z2^k:3", "z3^k:2", "s:3", "s:4", "d:4", "d:5", "q8", "sl2:3", "sl2:5",
                 "sl2:7", "prod(z:3,z:3)", "prod(s:3,z:2)", "prod(q8,z2^k:2)"}) {
    CAPTURE(d);
    check_axioms(make_group(d), 10000, 7);
  }
}

TEST_CASE("group orders match their family formulas") {
  CHECK(*make_group("z:6")->order() == 6);
  CHECK(*make_group("z2^k:4")->order() == 16);
  CHECK(*make_group("s:4")->order() == 24);
  CHECK(*make_group("d:4")->order() == 8);
  CHECK(*make_group("prod(z:3,z:3)")->order() == 9);
  for (int p : {2, 3, 5, 7}) {
    auto g = make_group("sl2:" + std::to_string(p));
    CHECK(*g->order() == count_sl2_by_brute_force(p));
    CHECK(g->elements().size() == count_sl2_by_brute_force(p));
  }
  CHECK(*make_group("sl2:5")->order() == 120);
  CHECK_FALSE(make_group("int")->order().has_value());
}

TEST_CASE("quaternion units") {
  auto q = make_group("q8");
  Element minus_one = q->parse_element("-1");
  CHECK(q->element_order(minus_one) == 2);
  for (auto const& x : q->elements()) CHECK(q->multiply(x, minus_one) == q->multiply(minus_one, x));
  Element i = q->parse_element("i"), j = q->parse_element("j"), k = q->parse_element("k");
  CHECK(q->multiply(i, j) == k);
  CHECK(q->multiply(j, i) == q->parse_element("-k"));
  CHECK(q->multiply(i, i) == minus_one);
  CHECK(q->multiply(q->multiply(i, j), k) == minus_one);
}

TEST_CASE("descriptor errors") {
  CHECK_THROWS_AS(make_group("sl2:6"), InvalidArgument);
  CHECK_THROWS_AS(make_group("z:0"), InvalidArgument);
  CHECK_THROWS_AS(make_group("zz:3"), ParseError);
  CHECK_THROWS_AS(make_group("z:abc"), ParseError);
  CHECK_THROWS_AS(make_group("int")->elements(), NotEnumerable);
  CHECK(make_group("prod(z:3,z:3)")->descriptor() == "prod(z:3,z:3)");
}

TEST_CASE("Margulis generators") {
  SpecialLinearGroup g5(5);
  auto [x, y] = margulis_generators(g5);
  CHECK(g5.format(x) == "[[1,2],[0,1]]");
  CHECK(g5.format(y) == "[[1,0],[2,1]]");
  CHECK(g5.power(x, 5) == g5.identity());
  CHECK(g5.element_order(x) == 5);
  SpecialLinearGroup g3(3);
  auto [x3, y3] = margulis_generators(g3);
  std::vector<Element> gens{x3, y3};
  CHECK(generated_subgroup_order(g3, gens, 1000) == 24);
  CHECK_THROWS_AS(SpecialLinearGroup(9), InvalidArgument);
}

TEST_CASE("symmetric group cycle notation") {
  auto s = make_group("s:3");
  Element a = s->parse_element("(12)");
  Element b = s->parse_element("(123)");
  CHECK(s->format(s->identity()) == "e");
  CHECK(s->element_order(a) == 2);
  CHECK(s->element_order(b) == 3);
  CHECK(s->format(s->multiply(a, b)) == "(23)");
}

namespace {

// Automorphisms of Z_n are the unit multipliers.
std::size_t euler_phi(int n) {
  std::size_t c = 0;
  for (int k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) ++c;
  return c;
}

}  // namespace

TEST_CASE("group automorphisms") {
  for (int n : {1, 2, 6, 8, 9, 12}) {
    CayleyTable t(make_group("z:" + std::to_string(n)));
    CHECK(group_automorphisms(t).size() == euler_phi(n));
  }
  CHECK(group_automorphisms(CayleyTable(make_group("z2^k:2"))).size() == 6);
  CHECK(group_automorphisms(CayleyTable(make_group("z2^k:3"))).size() == 168);
  CHECK(group_automorphisms(CayleyTable(make_group("s:3"))).size() == 6);
  CHECK(group_automorphisms(CayleyTable(make_group("q8"))).size() == 24);
  CHECK(group_automorphisms(CayleyTable(make_group("d:4"))).size() == 8);

  auto trivial = group_automorphisms(CayleyTable(make_group("z:1")));
  REQUIRE(trivial.size() == 1);
  CHECK(trivial[0].is_identity());

  CHECK_THROWS_AS(group_automorphisms(CayleyTable(make_group("z:17"))), CapExceeded);
}

TEST_CASE("automorphism lists are groups") {
  for (auto d : {"z:9", "z2^k:2", "z2^k:3", "q8", "s:3", "prod(z:2,z:4)"}) {
    CAPTURE(d);
    CayleyTable t(make_group(d));
    auto all = group_automorphisms(t);
    std::set<TableAutomorphism> set(all.begin(), all.end());
    for (auto const& a : all) {
      CHECK(set.count(a.inverse()) == 1);
      for (auto const& b : all) CHECK(set.count(a.compose(b)) == 1);
      for (std::size_t x = 0; x < t.size(); ++x)
        for (std::size_t y = 0; y < t.size(); ++y)
          CHECK(a(t.mul(static_cast<int>(x), static_cast<int>(y))) == t.mul(a(static_cast<int>(x)), a(static_cast<int>(y))));
    }
    CHECK(std::is_sorted(all.begin(), all.end()));
    auto gens = automorphism_generators(all);
    CHECK(gens.size() <= all.size());
  }
}
