#include "posrep/smallcanc.hpp"

#include <algorithm>
#include <thread>

#include "posrep/error.hpp"
#include "posrep/text.hpp"

namespace posrep {

Rational parse_rational(std::string_view text) {
  auto t = text::trim(text);
  if (t.empty()) throw ParseError("empty rational", 0);
  if (auto slash = t.find('/'); slash != std::string_view::npos) {
    auto num = text::parse_int(t.substr(0, slash));
    auto den = text::parse_int(t.substr(slash + 1));
    if (den == 0) throw InvalidArgument("zero denominator");
    return Rational(num, den);
  }
  if (auto dot = t.find('.'); dot != std::string_view::npos) {
    auto frac = t.substr(dot + 1);
    if (frac.empty() || frac.size() > 15) throw ParseError("bad decimal fraction", dot + 1);
    for (std::size_t i = 0; i < frac.size(); ++i)
      if (frac[i] < '0' || frac[i] > '9') throw ParseError("bad decimal digit", dot + 1 + i);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    auto whole_text = t.substr(0, dot);
    bool negative = !whole_text.empty() && whole_text.front() == '-';
    std::int64_t whole = whole_text.empty() || whole_text == "-" ? 0 : text::parse_int(whole_text);
    std::int64_t f = text::parse_int(frac);
    std::int64_t magnitude = (whole < 0 ? -whole : whole) * den + f;
    return Rational(negative ? -magnitude : magnitude, den);
  }
  return Rational(text::parse_int(t));
}

std::string to_string(Rational const& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Presentation::Presentation(int generators, std::vector<ReducedWord> relators)
    : n_(generators), relators_(std::move(relators)) {
  if (n_ < 1) throw InvalidArgument("a presentation needs at least one generator");
  for (auto const& r : relators_) {
    if (r.is_trivial()) throw InvalidArgument("trivial relator");
    if (!r.is_cyclically_reduced()) throw InvalidArgument("relator " + r.to_string() + " is not cyclically reduced");
    if (r.arity() > n_) throw InvalidArgument("relator " + r.to_string() + " uses an undeclared generator");
  }
}

Presentation Presentation::parse(std::string_view s) {
  std::size_t open = s.find('<');
  std::size_t close = s.rfind('>');
  if (open == std::string_view::npos) throw ParseError("expected '<'", 0);
  if (close == std::string_view::npos || close < open) throw ParseError("expected '>'", s.size());
  std::size_t bar = s.find('|', open);
  if (bar == std::string_view::npos || bar > close) throw ParseError("expected '|'", close);

  int n = 0;
  std::size_t start = open + 1;
  for (std::size_t i = open + 1; i <= bar; ++i) {
    if (i < bar && s[i] != ',') continue;
    auto name = text::trim(s.substr(start, i - start));
    if (name.size() != 1 || name[0] != letter_symbol(n + 1)) {
      throw ParseError(std::string("generator ") + std::to_string(n + 1) + " must be named '" + letter_symbol(n + 1) + "'",
                       start);
    }
    ++n;
    start = i + 1;
  }

  std::vector<ReducedWord> rels;
  start = bar + 1;
  for (std::size_t i = bar + 1; i <= close; ++i) {
    if (i < close && s[i] != ',') continue;
    auto piece = s.substr(start, i - start);
    if (!text::trim(piece).empty() || i != close || !rels.empty()) {
      std::size_t lead = std::min(piece.find_first_not_of(" \t"), piece.size());
      try {
        rels.push_back(ReducedWord::parse(piece.substr(lead)));
      } catch (ParseError const& e) {
        throw ParseError("invalid relator", start + lead + e.position());
      }
    }
    start = i + 1;
  }
  return Presentation(n, std::move(rels));
}

std::string Presentation::to_string() const {
  std::vector<std::string> gens, rels;
  for (int i = 1; i <= n_; ++i) gens.emplace_back(1, letter_symbol(i));
  for (auto const& r : relators_) rels.push_back(r.to_string());
  return "<" + text::join(gens, ",") + " | " + text::join(rels, ", ") + ">";
}

std::vector<SymmetrizedElement> symmetrize(Presentation const& p) {
  std::vector<SymmetrizedElement> out;
  for (std::size_t r = 0; r < p.relators().size(); ++r) {
    auto const& l = p.relators()[r].letters();
    int len = static_cast<int>(l.size());
    for (int inv = 0; inv < 2; ++inv)
      for (int k = 0; k < len; ++k) {
        SymmetrizedElement e{static_cast<int>(r), k, inv == 1, {}};
        e.letters.reserve(l.size());
        for (int i = 0; i < len; ++i) e.letters.push_back(l[(k + i) % len]);
        if (inv) {
          std::reverse(e.letters.begin(), e.letters.end());
          for (int& x : e.letters) x = -x;
        }
        out.push_back(std::move(e));
      }
  }
  return out;
}

int piece_length(SymmetrizedElement const& a, SymmetrizedElement const& b) {
  std::size_t lcp = 0;
  while (lcp < a.letters.size() && lcp < b.letters.size() && a.letters[lcp] == b.letters[lcp]) ++lcp;
  int cap = static_cast<int>(std::min(a.letters.size(), b.letters.size())) - 1;
  return std::min(static_cast<int>(lcp), cap);
}

CancellationReport check_c_lambda(Presentation const& p, Rational lambda) {
  if (lambda <= Rational(0) || lambda >= Rational(1)) throw InvalidArgument("lambda must lie in (0,1)");
  CancellationReport rep;
  rep.lambda = lambda;
  for (auto const& r : p.relators()) rep.relator_lengths.push_back(static_cast<int>(r.length()));
  rep.min_length = rep.relator_lengths.empty() ? 0 : *std::min_element(rep.relator_lengths.begin(), rep.relator_lengths.end());
  rep.relator_max_piece.assign(p.relators().size(), 0);

  auto elems = symmetrize(p);
  std::vector<int> order(elems.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return elems[static_cast<std::size_t>(a)].letters < elems[static_cast<std::size_t>(b)].letters;
  });
  // lcp[i]: common prefix of the i-th and (i+1)-th elements in sorted order.
  // The common prefix of any two is the minimum of lcp between them.
  std::vector<int> lcp(order.empty() ? 0 : order.size() - 1);
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    auto const& a = elems[static_cast<std::size_t>(order[i])].letters;
    auto const& b = elems[static_cast<std::size_t>(order[i + 1])].letters;
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    lcp[i] = static_cast<int>(k);
  }

  int worst_num = 0, worst_den = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto const& ea = elems[static_cast<std::size_t>(order[i])];
    int la = static_cast<int>(ea.letters.size());
    int common = la;
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      common = std::min(common, lcp[j - 1]);
      auto const& eb = elems[static_cast<std::size_t>(order[j])];
      int lb = static_cast<int>(eb.letters.size());
      int piece = std::min({common, la - 1, lb - 1});
      rep.max_piece = std::max(rep.max_piece, piece);
      auto& ma = rep.relator_max_piece[static_cast<std::size_t>(ea.relator)];
      auto& mb = rep.relator_max_piece[static_cast<std::size_t>(eb.relator)];
      ma = std::max(ma, piece);
      mb = std::max(mb, piece);
      int shorter = std::min(la, lb);
      if (static_cast<long>(piece) * worst_den > static_cast<long>(worst_num) * shorter) {
        worst_num = piece;
        worst_den = shorter;
      }
    }
  }
  rep.worst_ratio = Rational(worst_num, worst_den);

  rep.satisfies = rep.worst_ratio < lambda;
  rep.c_one_sixth = rep.worst_ratio < Rational(1, 6);
  rep.cayley_representable = rep.c_one_sixth && rep.min_length >= 22 && p.generators() == 2;
  if (p.relators().size() == 1 && p.generators() == 2) {
    auto const& r = p.relators().front();
    std::size_t root = primitive_root(r).length();
    rep.proper_power_representable = r.length() >= 22 && r.length() / root >= 2;
  }
  return rep;
}

int max_piece(Presentation const& p) { return check_c_lambda(p).max_piece; }

CyclicCount count_cyclically_reduced(int n, int l) {
  if (n < 1 || l < 1) throw InvalidArgument("count_cyclically_reduced needs n ≥ 1 and l ≥ 1");
  std::size_t k = static_cast<std::size_t>(2 * n);
  using Matrix = std::vector<std::vector<BigCount>>;
  auto inverse_slot = [n](std::size_t a) { return a < static_cast<std::size_t>(n) ? a + n : a - n; };
  Matrix a(k, std::vector<BigCount>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i][j] = j == inverse_slot(i) ? 0 : 1;
  auto mul = [k](Matrix const& x, Matrix const& y) {
    Matrix z(k, std::vector<BigCount>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t m = 0; m < k; ++m)
        if (x[i][m] != 0)
          for (std::size_t j = 0; j < k; ++j) z[i][j] += x[i][m] * y[m][j];
    return z;
  };
  CyclicCount out;
  Matrix power = a;
  for (int len = 1; len <= l; ++len) {
    if (len > 1) power = mul(power, a);
    BigCount trace = 0;
    for (std::size_t i = 0; i < k; ++i) trace += power[i][i];
    out.cumulative += trace;
    out.exact = trace;
  }
  return out;
}

ReducedWord sample_cyclically_reduced(int n, int length, std::mt19937_64& rng) {
  if (n < 1 || length < 1) throw InvalidArgument("sampling needs n ≥ 1 and length ≥ 1");
  std::uniform_int_distribution<int> first(0, 2 * n - 1), next(0, 2 * n - 2);
  auto letter_of = [n](int slot) { return slot < n ? slot + 1 : -(slot - n + 1); };
  for (;;) {
    std::vector<int> w;
    w.reserve(static_cast<std::size_t>(length));
    w.push_back(letter_of(first(rng)));
    while (static_cast<int>(w.size()) < length) {
      // Uniform among the 2n−1 letters that do not cancel the previous one.
      int l = letter_of(next(rng));
      if (l == -w.back()) l = letter_of(2 * n - 1);
      w.push_back(l);
    }
    if (length == 1 || w.back() != -w.front()) return ReducedWord::reduce(w);
  }
}

namespace {

// Uniform integer in [0, bound) from 64-bit chunks, by rejection.
BigCount uniform_below(BigCount const& bound, std::mt19937_64& rng) {
  if (bound <= 0) throw InvalidArgument("empty range");
  unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(bound)) + 1;
  for (;;) {
    BigCount v = 0;
    unsigned have = 0;
    while (have < bits) {
      v = (v << 64) | BigCount(rng());
      have += 64;
    }
    v >>= (have - bits);
    if (v < bound) return v;
  }
}

// Length distributed as c_L / c_{≤l}, then a uniform word of that length.
ReducedWord sample_up_to(int n, std::vector<BigCount> const& cumulative, std::mt19937_64& rng) {
  BigCount r = uniform_below(cumulative.back(), rng);
  int length = static_cast<int>(std::upper_bound(cumulative.begin(), cumulative.end(), r) - cumulative.begin()) + 1;
  return sample_cyclically_reduced(n, length, rng);
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<Presentation> sample_few_relators(FewRelatorOptions const& o) {
  if (o.generators < 1 || o.relators < 1 || o.max_length < 1 || o.count < 0)
    throw InvalidArgument("sampler parameters must be positive");
  std::vector<BigCount> cumulative;
  for (int len = 1; len <= o.max_length; ++len) cumulative.push_back(count_cyclically_reduced(o.generators, len).cumulative);

  std::vector<Presentation> out(static_cast<std::size_t>(o.count));
  auto work = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      std::mt19937_64 rng(splitmix64(o.seed ^ splitmix64(static_cast<std::uint64_t>(i))));
      std::vector<ReducedWord> rels;
      for (int j = 0; j < o.relators; ++j) rels.push_back(sample_up_to(o.generators, cumulative, rng));
      out[static_cast<std::size_t>(i)] = Presentation(o.generators, std::move(rels));
    }
  };
  int threads = std::max(1, std::min(o.threads, o.count));
  if (threads == 1) {
    work(0, o.count);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, o.count * t / threads, o.count * (t + 1) / threads);
    for (auto& th : pool) th.join();
  }
  return out;
}

BigCount density_relator_count(int n, Rational d, int length) {
  if (d <= Rational(0) || d >= Rational(1)) throw InvalidArgument("density must lie in (0,1)");
  // Largest k with k^q ≤ (2n−1)^{p·l}, for d = p/q.
  auto p = d.numerator(), q = d.denominator();
  BigCount target = boost::multiprecision::pow(BigCount(2 * n - 1), static_cast<unsigned>(p * length));
  BigCount lo = 1, hi = target;
  auto fits = [&](BigCount const& k) { return boost::multiprecision::pow(k, static_cast<unsigned>(q)) <= target; };
  while (lo < hi) {
    BigCount mid = (lo + hi + 1) / 2;
    if (fits(mid))
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

DensitySample sample_density(int n, Rational d, int length, std::uint64_t seed, std::uint64_t max_relators) {
  BigCount count = density_relator_count(n, d, length);
  if (count > max_relators)
    throw CapExceeded("density model asks for " + count.str() + " relators, above the cap " + std::to_string(max_relators));
  DensitySample out;
  out.relator_count = static_cast<std::uint64_t>(count);
  std::mt19937_64 rng(splitmix64(seed));
  std::vector<ReducedWord> rels;
  for (std::uint64_t i = 0; i < out.relator_count; ++i) rels.push_back(sample_cyclically_reduced(n, length, rng));
  out.presentation = Presentation(n, std::move(rels));
  out.density_flag = n == 2 && d < Rational(1, 5) && check_c_lambda(out.presentation).c_one_sixth;
  return out;
}

FewRelatorSummary summarize(std::vector<Presentation> const& ps) {
  FewRelatorSummary s;
  for (auto const& p : ps) {
    ++s.samples;
    auto rep = check_c_lambda(p);
    s.c_one_sixth += rep.c_one_sixth;
    s.representable += rep.cayley_representable;
    s.short_relator += rep.min_length <= 21;
  }
  return s;
}

}  // namespace posrep
