#include <doctest.h>

#include <random>
#include <set>

#include "posrep/error.hpp"
#include "posrep/freegroup.hpp"

using namespace posrep;

namespace {

ReducedWord W(std::string_view s) { return ReducedWord::parse(s); }

std::vector<int> random_letters(std::mt19937_64& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(1, rank);
  std::bernoulli_distribution sign(0.5);
  std::vector<int> out(static_cast<std::size_t>(len(rng)));
  for (int& l : out) l = sign(rng) ? gen(rng) : -gen(rng);
  return out;
}

// Every reduced word over {x, y} of length exactly n.
std::vector<ReducedWord> reduced_words(int n) {
  std::vector<std::vector<int>> words{{}};
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<int>> next;
    for (auto const& w : words)
      for (int l : {1, 2, -1, -2})
        if (w.empty() || w.back() != -l) {
          auto v = w;
          v.push_back(l);
          next.push_back(v);
        }
    words = std::move(next);
  }
  std::vector<ReducedWord> out;
  for (auto const& w : words) out.push_back(ReducedWord::reduce(w));
  return out;
}

}  // namespace

TEST_CASE("free reduction") {
  CHECK(W("x X y") == W("y"));
  CHECK(W("").is_trivial());
  CHECK(W("e").is_trivial());
  CHECK(W("x y Y x") == W("x x"));
  CHECK(W("x^2") == W("x x"));
  CHECK(W("x^-2 y") == W("X X y"));
  CHECK(W("xyXY").to_string() == "x y X Y");
  CHECK_THROWS_AS(W("x q"), ParseError);
  CHECK_THROWS_AS(W("x^"), ParseError);
}

TEST_CASE("reduction properties on random words") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    auto letters = random_letters(rng, 3, 12);
    ReducedWord w = ReducedWord::reduce(letters);
    CHECK(ReducedWord::reduce(w.letters()) == w);
    CHECK((w * w.inverse()).is_trivial());
    for (std::size_t k = 1; k < w.length(); ++k) CHECK(w.letters()[k] != -w.letters()[k - 1]);
  }
}

TEST_CASE("cyclic reduction") {
  CHECK(cyclic_reduce(W("X y x")) == W("y"));
  CHECK(cyclic_reduce(W("x y X y")) == W("x y X y"));
  CHECK(cyclic_reduce(W("x y y X")) == W("y y"));
  auto d = cyclic_decomposition(W("x y x y X"));
  CHECK(d.conjugator * d.core * d.conjugator.inverse() == W("x y x y X"));
  CHECK(d.core.is_cyclically_reduced());
}

TEST_CASE("evaluation") {
  auto z5 = make_group("z:5");
  std::vector<Element> two{z5->parse_element("2")};
  CHECK(z5->format(evaluate(W("x x"), two, *z5)) == "4");

  auto ab = make_group("prod(z:4,z:6)");
  std::mt19937_64 rng(3);
  auto elems = ab->elements();
  std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
  for (int i = 0; i < 50; ++i) {
    std::vector<Element> imgs{elems[pick(rng)], elems[pick(rng)]};
    CHECK(evaluate(W("x y X Y"), imgs, *ab) == ab->identity());
  }

  SpecialLinearGroup g5(5);
  auto [x, y] = margulis_generators(g5);
  std::vector<Element> xy{x, y};
  CHECK(evaluate(W("x^5"), xy, g5) == g5.identity());

  auto s4 = make_group("s:4");
  auto se = s4->elements();
  std::uniform_int_distribution<std::size_t> ps(0, se.size() - 1);
  for (int i = 0; i < 2000; ++i) {
    auto a = ReducedWord::reduce(random_letters(rng, 2, 8));
    auto b = ReducedWord::reduce(random_letters(rng, 2, 8));
    std::vector<Element> imgs{se[ps(rng)], se[ps(rng)]};
    CHECK(evaluate(a * b, imgs, *s4) == s4->multiply(evaluate(a, imgs, *s4), evaluate(b, imgs, *s4)));
  }
}

TEST_CASE("Stallings rank") {
  auto r = stallings_rank(W("x x"), W("x x x"));
  CHECK(r.rank == 1);
  REQUIRE(r.generator);
  CHECK(*r.generator == W("x"));
  CHECK(*r.exponents == std::pair<std::int64_t, std::int64_t>{2, 3});

  CHECK(stallings_rank(W("x"), W("y")).rank == 2);
  CHECK(stallings_rank(W("x y X"), W("y")).rank == 2);
  CHECK(stallings_rank(W("e"), W("e")).rank == 0);
  CHECK(stallings_rank(W("x y X"), W("x y y X")).rank == 1);
  CHECK(stallings_rank(W("x y"), W("Y X")).rank == 1);
  auto c = stallings_rank(W("x x"), W("x^4"));
  CHECK(*c.generator == W("x x"));
  CHECK(*c.exponents == std::pair<std::int64_t, std::int64_t>{1, 2});
}

TEST_CASE("rank one iff the two words commute") {
  std::vector<ReducedWord> words;
  for (int n = 0; n <= 4; ++n)
    for (auto const& w : reduced_words(n)) words.push_back(w);
  auto s3 = make_group("s:3");
  auto s3e = s3->elements();
  for (std::size_t i = 0; i < words.size(); i += 3) {
    for (std::size_t j = 0; j < words.size(); j += 2) {
      auto const& a = words[i];
      auto const& b = words[j];
      auto r = stallings_rank(a, b);
      bool commute = a * b == b * a;
      int expected = a.is_trivial() && b.is_trivial() ? 0 : (commute ? 1 : 2);
      REQUIRE(r.rank == expected);
      if (r.rank == 1) {
        CHECK(r.generator->power(r.exponents->first) == a);
        CHECK(r.generator->power(r.exponents->second) == b);
        for (auto const& g : s3e)
          for (auto const& h : s3e) {
            std::vector<Element> imgs{g, h};
            CHECK(evaluate(a, imgs, *s3) == s3->power(evaluate(*r.generator, imgs, *s3), r.exponents->first));
          }
      }
    }
  }
}

TEST_CASE("folded graphs are folded") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    std::vector<ReducedWord> ws{ReducedWord::reduce(random_letters(rng, 2, 8)),
                                ReducedWord::reduce(random_letters(rng, 2, 8))};
    auto g = fold_subgroup(ws);
    std::set<std::pair<int, int>> out, in;
    for (auto const& e : g.edges) {
      CHECK(out.insert({e.from, e.label}).second);
      CHECK(in.insert({e.to, e.label}).second);
    }
    CHECK(g.rank() >= 0);
    CHECK(g.rank() <= 2);
  }
}

TEST_CASE("combine_words") {
  std::vector<ReducedWord> a{W("x x"), W("x x x")};
  CHECK(combine_words(a) == W("x^6"));
  std::vector<ReducedWord> b{W("x"), W("y")};
  CHECK(combine_words(b) == W("x y X Y"));
  std::vector<ReducedWord> bad{W("x"), W("e")};
  CHECK_THROWS_AS(combine_words(bad), InvalidArgument);

  std::vector<ReducedWord> c{W("x"), W("y"), W("x")};
  ReducedWord w = combine_words(c);
  CHECK_FALSE(w.is_trivial());
  for (auto d : {"z:6", "s:3"}) {
    auto g = make_group(d);
    auto el = g->elements();
    for (auto const& p : el)
      for (auto const& q : el) {
        std::vector<Element> imgs{p, q};
        bool solves_input = false;
        for (auto const& in : c) solves_input = solves_input || evaluate(in, imgs, *g) == g->identity();
        if (solves_input) CHECK(evaluate(w, imgs, *g) == g->identity());
      }
  }
}

TEST_CASE("free group elements") {
  FreeGroup f(2);
  Element x = f.generator(1), y = f.generator(2);
  CHECK(f.format(f.multiply(f.multiply(x, y), f.inverse(y))) == "x");
  CHECK(f.multiply(x, f.inverse(x)) == f.identity());
  CHECK(f.parse_element("x y X") == f.element(W("x y X")));
  CHECK_THROWS_AS(f.element(W("z")), InvalidArgument);
}
