#include "posrep/freegroup.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

#include "posrep/error.hpp"
#include "posrep/text.hpp"

namespace posrep {

namespace {

constexpr std::string_view kAlphabet = "xyzwvuts";

int letter_from_char(char c, std::size_t pos) {
  char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  auto idx = kAlphabet.find(lower);
  if (idx == std::string_view::npos) throw ParseError(std::string("unknown letter '") + c + "'", pos);
  int g = static_cast<int>(idx) + 1;
  return std::isupper(static_cast<unsigned char>(c)) ? -g : g;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

}  // namespace

char letter_symbol(int letter) {
  int g = letter < 0 ? -letter : letter;
  if (g < 1 || g > static_cast<int>(kAlphabet.size())) throw InvalidArgument("generator index out of range");
  char c = kAlphabet[g - 1];
  return letter < 0 ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
}

ReducedWord ReducedWord::reduce(std::span<const int> letters) {
  ReducedWord w;
  for (int l : letters) {
    if (l == 0) throw InvalidArgument("letter 0 is not a generator");
    if (!w.letters_.empty() && w.letters_.back() == -l) {
      w.letters_.pop_back();
    } else {
      w.letters_.push_back(l);
    }
  }
  return w;
}

ReducedWord ReducedWord::generator(int index) {
  if (index < 1) throw InvalidArgument("generator indices start at 1");
  ReducedWord w;
  w.letters_.push_back(index);
  return w;
}

ReducedWord ReducedWord::parse(std::string_view text) {
  std::vector<int> letters;
  std::string_view t = text::trim(text);
  if (t == "e" || t == "1") return {};
  std::size_t i = 0;
  while (i < t.size()) {
    char c = t[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    int l = letter_from_char(c, i);
    ++i;
    std::int64_t exp = 1;
    if (i < t.size() && t[i] == '^') {
      std::size_t start = ++i;
      if (i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
      while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
      if (i == start) throw ParseError("expected exponent after '^'", start);
      exp = text::parse_int(t.substr(start, i - start));
    }
    if (exp < 0) {
      l = -l;
      exp = -exp;
    }
    for (std::int64_t k = 0; k < exp; ++k) letters.push_back(l);
  }
  return reduce(letters);
}

std::string ReducedWord::to_string() const {
  if (letters_.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += ' ';
    out += letter_symbol(letters_[i]);
  }
  return out;
}

std::string ReducedWord::to_power_string() const {
  if (letters_.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < letters_.size();) {
    std::size_t j = i;
    while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
    if (!out.empty()) out += ' ';
    out += letter_symbol(letters_[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

int ReducedWord::arity() const {
  int a = 0;
  for (int l : letters_) a = std::max(a, l < 0 ? -l : l);
  return a;
}

ReducedWord ReducedWord::inverse() const {
  ReducedWord w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(-*it);
  return w;
}

ReducedWord ReducedWord::power(std::int64_t k) const {
  ReducedWord base = k < 0 ? inverse() : *this;
  std::int64_t e = k < 0 ? -k : k;
  // Powers of a non-cyclically-reduced word cancel only at the seams, so
  // build c·core^e·c⁻¹ directly.
  auto [c, core] = cyclic_decomposition(base);
  std::vector<int> letters = c.letters_;
  for (std::int64_t i = 0; i < e; ++i) letters.insert(letters.end(), core.letters_.begin(), core.letters_.end());
  auto ci = c.inverse();
  letters.insert(letters.end(), ci.letters_.begin(), ci.letters_.end());
  return reduce(letters);
}

ReducedWord operator*(ReducedWord const& a, ReducedWord const& b) {
  std::vector<int> letters = a.letters_;
  letters.insert(letters.end(), b.letters_.begin(), b.letters_.end());
  return ReducedWord::reduce(letters);
}

bool ReducedWord::is_cyclically_reduced() const {
  return letters_.size() < 2 || letters_.front() != -letters_.back();
}

ReducedWord commutator(ReducedWord const& a, ReducedWord const& b) { return a * b * a.inverse() * b.inverse(); }

CyclicDecomposition cyclic_decomposition(ReducedWord const& w) {
  auto const& l = w.letters();
  std::size_t i = 0, j = l.size();
  while (j - i >= 2 && l[i] == -l[j - 1]) {
    ++i;
    --j;
  }
  std::vector<int> c(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(i));
  std::vector<int> core(l.begin() + static_cast<std::ptrdiff_t>(i), l.begin() + static_cast<std::ptrdiff_t>(j));
  return {ReducedWord::reduce(c), ReducedWord::reduce(core)};
}

ReducedWord cyclic_reduce(ReducedWord const& w) { return cyclic_decomposition(w).core; }

ReducedWord primitive_root(ReducedWord const& w) {
  auto [c, core] = cyclic_decomposition(w);
  auto const& l = core.letters();
  std::size_t n = l.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = l[i] == l[i - d];
    if (periodic) {
      std::vector<int> root(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(d));
      return c * ReducedWord::reduce(root) * c.inverse();
    }
  }
  return w;
}

Element evaluate(ReducedWord const& w, std::span<const Element> images, Group const& g) {
  if (static_cast<std::size_t>(w.arity()) > images.size()) throw InvalidArgument("word uses more generators than images");
  std::vector<Element> inverses;
  inverses.reserve(images.size());
  for (auto const& x : images) inverses.push_back(g.inverse(x));
  Element result = g.identity();
  for (int l : w.letters()) result = g.multiply(result, l > 0 ? images[l - 1] : inverses[-l - 1]);
  return result;
}

int evaluate(ReducedWord const& w, std::span<const int> images, CayleyTable const& g) {
  if (static_cast<std::size_t>(w.arity()) > images.size()) throw InvalidArgument("word uses more generators than images");
  int result = g.identity();
  for (int l : w.letters()) result = g.mul(result, l > 0 ? images[l - 1] : g.inv(images[-l - 1]));
  return result;
}

// ---------------------------------------------------------------------------
// Stallings folding

StallingsGraph fold_subgroup(std::span<const ReducedWord> words) {
  // Petal graph: one loop at the base vertex per word.
  int vertices = 1;
  std::vector<StallingsGraph::Edge> edges;
  for (auto const& w : words) {
    auto const& l = w.letters();
    if (l.empty()) continue;
    int prev = 0;
    for (std::size_t i = 0; i < l.size(); ++i) {
      int next = i + 1 == l.size() ? 0 : vertices++;
      if (l[i] > 0) {
        edges.push_back({prev, l[i], next});
      } else {
        edges.push_back({next, -l[i], prev});
      }
      prev = next;
    }
  }

  std::vector<int> parent(static_cast<std::size_t>(vertices));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<int, int>, int> out, in;
    for (auto const& e : edges) {
      int a = find(e.from), b = find(e.to);
      auto [oit, onew] = out.emplace(std::pair{a, e.label}, b);
      if (!onew && find(oit->second) != b) {
        parent[find(oit->second)] = b;
        changed = true;
        break;
      }
      auto [iit, inew] = in.emplace(std::pair{b, e.label}, a);
      if (!inew && find(iit->second) != a) {
        parent[find(iit->second)] = a;
        changed = true;
        break;
      }
    }
  }

  std::set<StallingsGraph::Edge> folded;
  for (auto const& e : edges) folded.insert({find(e.from), e.label, find(e.to)});

  // Trim hanging trees away from the base vertex.
  int base = find(0);
  bool trimmed = true;
  while (trimmed) {
    trimmed = false;
    std::map<int, int> degree;
    for (auto const& e : folded) {
      ++degree[e.from];
      ++degree[e.to];
    }
    for (auto it = folded.begin(); it != folded.end(); ++it) {
      int leaf = -1;
      if (it->from != base && degree[it->from] == 1) leaf = it->from;
      if (it->to != base && degree[it->to] == 1) leaf = it->to;
      if (leaf >= 0) {
        folded.erase(it);
        trimmed = true;
        break;
      }
    }
  }

  std::map<int, int> relabel{{base, 0}};
  for (auto const& e : folded) {
    relabel.emplace(e.from, static_cast<int>(relabel.size()));
    relabel.emplace(e.to, static_cast<int>(relabel.size()));
  }
  StallingsGraph g;
  g.vertices = static_cast<int>(relabel.size());
  g.base = 0;
  for (auto const& e : folded) g.edges.push_back({relabel[e.from], e.label, relabel[e.to]});
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

RankResult stallings_rank(ReducedWord const& w1, ReducedWord const& w2) {
  std::vector<ReducedWord> words{w1, w2};
  RankResult result;
  result.rank = fold_subgroup(words).rank();
  if (result.rank != 1) return result;

  // Both words lie in the maximal cyclic subgroup generated by the primitive
  // root of whichever is nontrivial.
  ReducedWord const& ref = w1.is_trivial() ? w2 : w1;
  ReducedWord root = primitive_root(ref);
  std::size_t root_core = cyclic_reduce(root).length();
  auto exponent_of = [&](ReducedWord const& w) -> std::int64_t {
    if (w.is_trivial()) return 0;
    auto k = static_cast<std::int64_t>(cyclic_reduce(w).length() / root_core);
    if (root.power(k) == w) return k;
    if (root.power(-k) == w) return -k;
    throw Error("rank-1 subgroup without a common root for " + w.to_string());
  };
  std::int64_t l = exponent_of(w1), m = exponent_of(w2);
  std::int64_t g = gcd64(l, m);
  result.generator = root.power(g);
  result.exponents = std::pair{l / g, m / g};
  return result;
}

ReducedWord combine_words(std::span<const ReducedWord> words) {
  if (words.empty()) throw InvalidArgument("combine_words needs at least one word");
  for (auto const& w : words)
    if (w.is_trivial()) throw InvalidArgument("combine_words needs nontrivial words");
  ReducedWord acc = words[0];
  for (std::size_t i = 1; i < words.size(); ++i) {
    auto r = stallings_rank(acc, words[i]);
    if (r.rank == 1) {
      acc = r.generator->power(r.exponents->first * r.exponents->second);
    } else {
      acc = commutator(acc, words[i]);
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------
// FreeGroup

FreeGroup::FreeGroup(int rank) : rank_(rank) {
  if (rank < 1 || rank > static_cast<int>(kAlphabet.size())) throw InvalidArgument("free group rank must be in 1..8");
}

Element FreeGroup::element(ReducedWord const& w) const {
  if (w.arity() > rank_) throw InvalidArgument("word uses generators outside f:" + std::to_string(rank_));
  std::string s;
  s.reserve(w.length());
  for (int l : w.letters()) s.push_back(static_cast<char>(static_cast<signed char>(l)));
  return Element(std::move(s));
}

ReducedWord FreeGroup::word(Element const& a) const {
  std::vector<int> letters;
  letters.reserve(a.bytes().size());
  for (char c : a.bytes()) letters.push_back(static_cast<signed char>(c));
  return ReducedWord::reduce(letters);
}

Element FreeGroup::multiply(Element const& a, Element const& b) const {
  auto const& x = a.bytes();
  auto const& y = b.bytes();
  std::size_t i = 0;
  while (i < x.size() && i < y.size() &&
         static_cast<signed char>(x[x.size() - 1 - i]) == -static_cast<signed char>(y[i])) {
    ++i;
  }
  std::string s = x.substr(0, x.size() - i);
  s.append(y, i);
  return Element(std::move(s));
}

Element FreeGroup::inverse(Element const& a) const {
  std::string s(a.bytes().rbegin(), a.bytes().rend());
  for (char& c : s) c = static_cast<char>(-static_cast<signed char>(c));
  return Element(std::move(s));
}

std::string FreeGroup::format(Element const& a) const { return word(a).to_string(); }

Element FreeGroup::parse_element(std::string_view text) const { return element(ReducedWord::parse(text)); }

GroupPtr free_group(int rank) { return std::make_shared<FreeGroup>(rank); }

}  // namespace posrep
