#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "posrep/error.hpp"
#include "posrep/smallcanc.hpp"

using namespace posrep;

namespace {

Presentation P(std::string_view s) { return Presentation::parse(s); }

// All-pairs common prefixes over explicitly listed rotations and inverses.
struct NaivePieces {
  int max_piece = 0;
  Rational worst{0};
};

NaivePieces naive_pieces(Presentation const& p) {
  std::vector<std::vector<int>> words;
  for (auto const& r : p.relators()) {
    auto l = r.letters();
    for (std::size_t k = 0; k < l.size(); ++k) {
      std::vector<int> rot(l.begin() + static_cast<long>(k), l.end());
      rot.insert(rot.end(), l.begin(), l.begin() + static_cast<long>(k));
      std::vector<int> inv(rot.rbegin(), rot.rend());
      for (int& x : inv) x = -x;
      words.push_back(rot);
      words.push_back(inv);
    }
  }
  NaivePieces out;
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      auto const& a = words[i];
      auto const& b = words[j];
      int lcp = 0;
      while (lcp < static_cast<int>(std::min(a.size(), b.size())) && a[lcp] == b[lcp]) ++lcp;
      int shorter = static_cast<int>(std::min(a.size(), b.size()));
      int piece = std::min(lcp, shorter - 1);
      out.max_piece = std::max(out.max_piece, piece);
      out.worst = std::max(out.worst, Rational(piece, shorter));
    }
  return out;
}

std::vector<int> random_cyclic_word(std::mt19937_64& rng, int n, int len) {
  for (;;) {
    std::vector<int> w;
    std::uniform_int_distribution<int> g(1, n);
    while (static_cast<int>(w.size()) < len) {
      int l = rng() % 2 ? g(rng) : -g(rng);
      if (!w.empty() && w.back() == -l) continue;
      w.push_back(l);
    }
    if (len == 1 || w.back() != -w.front()) return w;
  }
}

}  // namespace

TEST_CASE("presentation text format") {
  auto p = P("<x,y | x y X Y, x^3>");
  CHECK(p.generators() == 2);
  CHECK(p.relators().size() == 2);
  CHECK(p.to_string() == "<x,y | x y X Y, x x x>");
  CHECK(P(p.to_string()).relators() == p.relators());
  CHECK(P("<x | >").relators().empty());
  CHECK_THROWS_AS(P("<x,z | x>"), ParseError);
  CHECK_THROWS_AS(P("x,y | x"), ParseError);
  CHECK_THROWS_AS(P("<x,y | x q>"), ParseError);
  CHECK_THROWS_AS(P("<x,y | x y X>"), InvalidArgument);
  CHECK_THROWS_AS(P("<x | y>"), InvalidArgument);
  try {
    P("<x,y | x y, y q>");
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.position() == 14);
  }
}

TEST_CASE("piece examples") {
  auto comm = check_c_lambda(P("<x,y | x y X Y>"));
  CHECK(comm.max_piece == 1);
  CHECK_FALSE(comm.c_one_sixth);
  CHECK_FALSE(comm.cayley_representable);
  CHECK_FALSE(check_c_lambda(P("<x,y | x y X y>")).c_one_sixth);
  for (int n = 2; n <= 8; ++n) {
    auto r = check_c_lambda(P("<x,y | x^" + std::to_string(n) + ">"));
    CHECK(r.max_piece == n - 1);
    CHECK_FALSE(r.c_one_sixth);
  }
  CHECK_THROWS_AS(check_c_lambda(P("<x | x>"), Rational(1)), InvalidArgument);
}

TEST_CASE("piece sweep agrees with the all-pairs oracle") {
  std::mt19937_64 rng(7);
  int cases = 0;
  while (cases < 600) {
    int n = 1 + static_cast<int>(rng() % 3);
    int m = 1 + static_cast<int>(rng() % 4);
    std::vector<ReducedWord> rels;
    int total = 0;
    for (int j = 0; j < m; ++j) {
      int len = 1 + static_cast<int>(rng() % 50);
      if (total + len > 200) break;
      total += len;
      rels.push_back(ReducedWord::reduce(random_cyclic_word(rng, n, len)));
    }
    if (rels.empty()) continue;
    Presentation p(n, rels);
    auto rep = check_c_lambda(p);
    auto naive = naive_pieces(p);
    CAPTURE(p.to_string());
    CHECK(rep.max_piece == naive.max_piece);
    CHECK(rep.worst_ratio == naive.worst);
    ++cases;
  }
}

TEST_CASE("C'(lambda) is monotone in lambda") {
  std::mt19937_64 rng(3);
  std::vector<Rational> lambdas{{1, 12}, {1, 8}, {1, 6}, {1, 5}, {1, 4}, {1, 3}, {1, 2}, {3, 4}};
  for (int t = 0; t < 200; ++t) {
    std::vector<ReducedWord> rels{ReducedWord::reduce(random_cyclic_word(rng, 2, 6 + static_cast<int>(rng() % 40))),
                                  ReducedWord::reduce(random_cyclic_word(rng, 2, 6 + static_cast<int>(rng() % 40)))};
    Presentation p(2, rels);
    bool before = false;
    for (auto const& l : lambdas) {
      bool now = check_c_lambda(p, l).satisfies;
      if (before) CHECK(now);
      before = now;
    }
  }
}

TEST_CASE("representability flags") {
  // A 24-letter relator without long pieces.
  std::mt19937_64 rng(11);
  bool saw_true = false;
  for (int t = 0; t < 200 && !saw_true; ++t) {
    Presentation p(2, {ReducedWord::reduce(random_cyclic_word(rng, 2, 40))});
    auto r = check_c_lambda(p);
    if (r.c_one_sixth) {
      saw_true = true;
      CHECK(r.cayley_representable);
    }
  }
  CHECK(saw_true);

  CHECK_FALSE(check_c_lambda(P("<x,y | x>")).proper_power_representable);
  auto r = ReducedWord::parse("x y y x Y x Y Y").power(3);
  auto pp = check_c_lambda(Presentation(2, {r}));
  CHECK(r.length() == 24);
  CHECK(pp.proper_power_representable);
  CHECK_FALSE(pp.c_one_sixth);
  auto short_power = check_c_lambda(Presentation(2, {ReducedWord::parse("x y X y y").power(2)}));
  CHECK_FALSE(short_power.proper_power_representable);
}

namespace {

std::uint64_t enumerate_cyclically_reduced(int n, int l) {
  std::uint64_t count = 0;
  std::vector<int> w;
  std::function<void()> go = [&] {
    if (static_cast<int>(w.size()) == l) {
      if (l == 1 || w.back() != -w.front()) ++count;
      return;
    }
    for (int g = 1; g <= n; ++g)
      for (int l2 : {g, -g}) {
        if (!w.empty() && w.back() == -l2) continue;
        w.push_back(l2);
        go();
        w.pop_back();
      }
  };
  go();
  return count;
}

}  // namespace

TEST_CASE("cyclically reduced word counts") {
  CHECK(count_cyclically_reduced(2, 1).exact == 4);
  CHECK(count_cyclically_reduced(2, 2).exact == 12);
  CHECK(count_cyclically_reduced(2, 3).exact == 28);
  for (int l = 1; l <= 12; ++l) {
    CAPTURE(l);
    CHECK(count_cyclically_reduced(2, l).exact == enumerate_cyclically_reduced(2, l));
  }
  for (int l = 1; l <= 6; ++l) CHECK(count_cyclically_reduced(3, l).exact == enumerate_cyclically_reduced(3, l));
  BigCount three = 1;
  BigCount sum = 0;
  for (int l = 1; l <= 20; ++l) {
    auto c = count_cyclically_reduced(2, l);
    sum += c.exact;
    CHECK(c.exact <= 4 * three);
    CHECK(c.cumulative == sum);
    three *= 3;
  }
}

TEST_CASE("sampler contract and reproducibility") {
  FewRelatorOptions o;
  o.count = 50;
  auto a = sample_few_relators(o);
  for (auto const& p : a) {
    CHECK(p.relators().size() == 2);
    for (auto const& r : p.relators()) {
      CHECK(r.is_cyclically_reduced());
      CHECK(r.length() <= 60);
    }
  }
  o.threads = 3;
  auto b = sample_few_relators(o);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].relators() == b[i].relators());
  o.seed = 8;
  auto c = sample_few_relators(o);
  CHECK_FALSE(a[0].relators() == c[0].relators());
}

TEST_CASE("one-relator samples almost never have short relators") {
  FewRelatorOptions o;
  o.relators = 1;
  o.count = 10000;
  auto s = summarize(sample_few_relators(o));
  CHECK(s.short_relator == 0);
}

TEST_CASE("sampler is uniform on short cyclically reduced words") {
  // Length ≤ 6 over two generators: 4 + 12 + 28 + 84 + 244 + 732 = 1104 words.
  FewRelatorOptions o;
  o.relators = 1;
  o.max_length = 6;
  o.count = 1000000;
  auto ps = sample_few_relators(o);
  std::map<std::vector<int>, std::uint64_t> freq;
  for (auto const& p : ps) ++freq[p.relators()[0].letters()];
  std::uint64_t total_words = static_cast<std::uint64_t>(count_cyclically_reduced(2, 6).cumulative);
  CHECK(total_words == 1104);
  CHECK(freq.size() == total_words);
  double expected = 1e6 / static_cast<double>(total_words);
  double chi2 = 0;
  for (auto const& [w, c] : freq) chi2 += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  // Upper 1% point of χ² with k = 1103 degrees of freedom (Wilson–Hilferty).
  double k = static_cast<double>(total_words - 1);
  double z = 2.3263478740;
  double critical = k * std::pow(1 - 2 / (9 * k) + z * std::sqrt(2 / (9 * k)), 3);
  CHECK(chi2 < critical);
}

TEST_CASE("density model") {
  CHECK(density_relator_count(2, Rational(1, 10), 20) == 9);
  CHECK(density_relator_count(2, parse_rational("0.1"), 20) == 9);
  CHECK(density_relator_count(2, Rational(1, 2), 4) == 9);
  CHECK(density_relator_count(2, Rational(1, 3), 5) == 6);  // 3^{5/3} ≈ 6.24
  auto s = sample_density(2, Rational(1, 10), 20, 7);
  CHECK(s.relator_count == 9);
  CHECK(s.presentation.relators().size() == 9);
  for (auto const& r : s.presentation.relators()) CHECK(r.length() == 20);
  CHECK_THROWS_AS(sample_density(2, Rational(9, 10), 60, 7), CapExceeded);
  CHECK_THROWS_AS(density_relator_count(2, Rational(1), 5), InvalidArgument);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/6") == Rational(1, 6));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("3") == Rational(3));
  CHECK(to_string(Rational(2, 12)) == "1/6");
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("0.x"), ParseError);
}
