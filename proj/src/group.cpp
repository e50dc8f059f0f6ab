#include "posrep/group.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_set>

#include "posrep/error.hpp"
#include "posrep/text.hpp"

namespace posrep {

namespace {

int width_for(std::uint64_t modulus) {
  if (modulus <= (1ull << 8)) return 1;
  if (modulus <= (1ull << 16)) return 2;
  if (modulus <= (1ull << 32)) return 4;
  return 8;
}

void put_uint(std::string& out, std::uint64_t v, int width) {
  for (int i = 0; i < width; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_uint(std::string const& s, std::size_t offset, int width) {
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[offset + i])) << (8 * i);
  }
  return v;
}

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1, x = b % m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t reduce_mod(std::int64_t v, std::uint64_t m) {
  std::int64_t r = v % static_cast<std::int64_t>(m);
  if (r < 0) r += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r);
}

}  // namespace

// ---------------------------------------------------------------------------
// Group

std::vector<Element> Group::elements() const {
  throw NotEnumerable("group " + descriptor() + " is infinite and has no element enumerator");
}

Element Group::power(Element const& a, std::int64_t k) const {
  Element base = k < 0 ? inverse(a) : a;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  Element result = identity();
  while (e) {
    if (e & 1) result = multiply(result, base);
    base = multiply(base, base);
    e >>= 1;
  }
  return result;
}

std::uint64_t Group::element_order(Element const& a, std::uint64_t cap) const {
  Element e = identity();
  Element x = a;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    if (x == e) return k;
    x = multiply(x, a);
  }
  throw CapExceeded("element order exceeds " + std::to_string(cap));
}

// ---------------------------------------------------------------------------
// Z_n

CyclicGroup::CyclicGroup(std::uint64_t n) : n_(n), width_(width_for(n)) {
  if (n == 0) throw InvalidArgument("cyclic group order must be >= 1");
}

std::string CyclicGroup::descriptor() const { return "z:" + std::to_string(n_); }

Element CyclicGroup::element(std::int64_t residue) const {
  std::string s;
  put_uint(s, reduce_mod(residue, n_), width_);
  return Element(std::move(s));
}

std::uint64_t CyclicGroup::residue(Element const& a) const { return get_uint(a.bytes(), 0, width_); }

Element CyclicGroup::identity() const { return element(0); }

Element CyclicGroup::multiply(Element const& a, Element const& b) const {
  std::uint64_t r = residue(a) + residue(b);
  if (r >= n_) r -= n_;
  std::string s;
  put_uint(s, r, width_);
  return Element(std::move(s));
}

Element CyclicGroup::inverse(Element const& a) const {
  std::uint64_t r = residue(a);
  std::string s;
  put_uint(s, r == 0 ? 0 : n_ - r, width_);
  return Element(std::move(s));
}

std::vector<Element> CyclicGroup::elements() const {
  if (n_ > (1ull << 26)) throw CapExceeded("z:" + std::to_string(n_) + " too large to enumerate");
  std::vector<Element> out;
  out.reserve(n_);
  for (std::uint64_t i = 0; i < n_; ++i) out.push_back(element(static_cast<std::int64_t>(i)));
  return out;
}

std::string CyclicGroup::format(Element const& a) const { return std::to_string(residue(a)); }

Element CyclicGroup::parse_element(std::string_view text) const { return element(text::parse_int(text)); }

// ---------------------------------------------------------------------------
// Z_p^k

ElementaryAbelianGroup::ElementaryAbelianGroup(int p, int k) : p_(p), k_(k) {
  if (p < 2 || p > 255 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw InvalidArgument("elementary abelian group needs a prime p < 256, got " + std::to_string(p));
  }
  if (k < 1 || k > 16) throw InvalidArgument("elementary abelian rank must be in 1..16");
}

std::string ElementaryAbelianGroup::descriptor() const {
  return "z" + std::to_string(p_) + "^k:" + std::to_string(k_);
}

Element ElementaryAbelianGroup::element(std::vector<int> const& exponents) const {
  if (static_cast<int>(exponents.size()) != k_) throw InvalidArgument("wrong exponent vector length");
  std::string s;
  for (int e : exponents) s.push_back(static_cast<char>(reduce_mod(e, static_cast<std::uint64_t>(p_))));
  return Element(std::move(s));
}

std::vector<int> ElementaryAbelianGroup::exponents(Element const& a) const {
  std::vector<int> out;
  for (char c : a.bytes()) out.push_back(static_cast<unsigned char>(c));
  return out;
}

Element ElementaryAbelianGroup::identity() const { return Element(std::string(static_cast<std::size_t>(k_), '\0')); }

Element ElementaryAbelianGroup::multiply(Element const& a, Element const& b) const {
  std::string s(static_cast<std::size_t>(k_), '\0');
  for (int i = 0; i < k_; ++i) {
    int v = static_cast<unsigned char>(a.bytes()[i]) + static_cast<unsigned char>(b.bytes()[i]);
    s[i] = static_cast<char>(v % p_);
  }
  return Element(std::move(s));
}

Element ElementaryAbelianGroup::inverse(Element const& a) const {
  std::string s(static_cast<std::size_t>(k_), '\0');
  for (int i = 0; i < k_; ++i) s[i] = static_cast<char>((p_ - static_cast<unsigned char>(a.bytes()[i])) % p_);
  return Element(std::move(s));
}

std::optional<std::uint64_t> ElementaryAbelianGroup::order() const {
  std::uint64_t n = 1;
  for (int i = 0; i < k_; ++i) n *= static_cast<std::uint64_t>(p_);
  return n;
}

std::vector<Element> ElementaryAbelianGroup::elements() const {
  std::uint64_t n = *order();
  if (n > (1ull << 24)) throw CapExceeded(descriptor() + " too large to enumerate");
  std::vector<Element> out;
  out.reserve(n);
  for (std::uint64_t code = 0; code < n; ++code) {
    // Most significant coordinate varies slowest.
    std::string s(static_cast<std::size_t>(k_), '\0');
    std::uint64_t c = code;
    for (int i = k_ - 1; i >= 0; --i) {
      s[i] = static_cast<char>(c % static_cast<std::uint64_t>(p_));
      c /= static_cast<std::uint64_t>(p_);
    }
    out.emplace_back(std::move(s));
  }
  return out;
}

std::string ElementaryAbelianGroup::format(Element const& a) const {
  std::string out = "(";
  for (int i = 0; i < k_; ++i) {
    if (i) out += ",";
    out += std::to_string(static_cast<unsigned char>(a.bytes()[i]));
  }
  return out + ")";
}

Element ElementaryAbelianGroup::parse_element(std::string_view t) const {
  std::string_view s = text::trim(t);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw ParseError("expected (e1,...,ek)", 0);
  auto vals = text::parse_int_list(s.substr(1, s.size() - 2));
  std::vector<int> ex(vals.begin(), vals.end());
  return element(ex);
}

// ---------------------------------------------------------------------------
// S_n

SymmetricGroup::SymmetricGroup(int n) : n_(n) {
  if (n < 1 || n > 12) throw InvalidArgument("symmetric group degree must be in 1..12");
}

std::string SymmetricGroup::descriptor() const { return "s:" + std::to_string(n_); }

Element SymmetricGroup::element(std::vector<int> const& images) const {
  if (static_cast<int>(images.size()) != n_) throw InvalidArgument("wrong permutation length");
  std::vector<bool> seen(static_cast<std::size_t>(n_), false);
  std::string s;
  for (int v : images) {
    if (v < 0 || v >= n_ || seen[v]) throw InvalidArgument("not a permutation");
    seen[v] = true;
    s.push_back(static_cast<char>(v));
  }
  return Element(std::move(s));
}

std::vector<int> SymmetricGroup::images(Element const& a) const {
  std::vector<int> out;
  for (char c : a.bytes()) out.push_back(static_cast<unsigned char>(c));
  return out;
}

Element SymmetricGroup::identity() const {
  std::string s;
  for (int i = 0; i < n_; ++i) s.push_back(static_cast<char>(i));
  return Element(std::move(s));
}

Element SymmetricGroup::multiply(Element const& a, Element const& b) const {
  std::string s(static_cast<std::size_t>(n_), '\0');
  for (int i = 0; i < n_; ++i) s[i] = a.bytes()[static_cast<unsigned char>(b.bytes()[i])];
  return Element(std::move(s));
}

Element SymmetricGroup::inverse(Element const& a) const {
  std::string s(static_cast<std::size_t>(n_), '\0');
  for (int i = 0; i < n_; ++i) s[static_cast<unsigned char>(a.bytes()[i])] = static_cast<char>(i);
  return Element(std::move(s));
}

std::optional<std::uint64_t> SymmetricGroup::order() const {
  std::uint64_t f = 1;
  for (int i = 2; i <= n_; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::vector<Element> SymmetricGroup::elements() const {
  if (n_ > 9) throw CapExceeded(descriptor() + " too large to enumerate");
  std::vector<int> perm(static_cast<std::size_t>(n_));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Element> out;
  do {
    out.push_back(element(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::string SymmetricGroup::format(Element const& a) const {
  auto img = images(a);
  std::vector<bool> done(img.size(), false);
  std::string out;
  for (int i = 0; i < n_; ++i) {
    if (done[i] || img[i] == i) continue;
    out += "(";
    int j = i;
    bool first = true;
    while (!done[j]) {
      if (!first && n_ > 9) out += " ";
      out += std::to_string(j + 1);
      done[j] = true;
      j = img[j];
      first = false;
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

Element SymmetricGroup::parse_element(std::string_view t) const {
  std::string_view s = text::trim(t);
  Element result = identity();
  if (s == "e") return result;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    if (s[i] != '(') throw ParseError("expected '(' in cycle notation", i);
    std::size_t close = s.find(')', i);
    if (close == std::string_view::npos) throw ParseError("unterminated cycle", i);
    std::string_view body = s.substr(i + 1, close - i - 1);
    std::vector<int> points;
    if (n_ <= 9 && body.find(' ') == std::string_view::npos && body.find(',') == std::string_view::npos) {
      for (char c : body) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad cycle point", i);
        points.push_back(c - '0');
      }
    } else {
      std::string b(body);
      std::replace(b.begin(), b.end(), ',', ' ');
      for (auto const& tok : text::split_top_level(b, ' ')) {
        if (!tok.empty()) points.push_back(static_cast<int>(text::parse_int(tok)));
      }
    }
    std::vector<int> img(static_cast<std::size_t>(n_));
    std::iota(img.begin(), img.end(), 0);
    for (std::size_t k = 0; k < points.size(); ++k) {
      int from = points[k] - 1, to = points[(k + 1) % points.size()] - 1;
      if (from < 0 || from >= n_ || to < 0 || to >= n_) throw ParseError("cycle point out of range", i);
      img[from] = to;
    }
    result = multiply(result, element(img));
    i = close + 1;
  }
  return result;
}

// ---------------------------------------------------------------------------
// D_n

DihedralGroup::DihedralGroup(int n) : n_(n) {
  if (n < 1 || n > 200) throw InvalidArgument("dihedral parameter must be in 1..200");
}

std::string DihedralGroup::descriptor() const { return "d:" + std::to_string(n_); }

Element DihedralGroup::element(int rotation, bool reflection) const {
  std::string s;
  s.push_back(static_cast<char>(reduce_mod(rotation, static_cast<std::uint64_t>(n_))));
  s.push_back(static_cast<char>(reflection ? 1 : 0));
  return Element(std::move(s));
}

Element DihedralGroup::identity() const { return element(0, false); }

Element DihedralGroup::multiply(Element const& a, Element const& b) const {
  int ra = static_cast<unsigned char>(a.bytes()[0]), fa = a.bytes()[1];
  int rb = static_cast<unsigned char>(b.bytes()[0]), fb = b.bytes()[1];
  return element(fa ? ra - rb : ra + rb, (fa ^ fb) != 0);
}

Element DihedralGroup::inverse(Element const& a) const {
  int r = static_cast<unsigned char>(a.bytes()[0]), f = a.bytes()[1];
  return f ? a : element(-r, false);
}

std::optional<std::uint64_t> DihedralGroup::order() const { return 2ull * static_cast<std::uint64_t>(n_); }

std::vector<Element> DihedralGroup::elements() const {
  std::vector<Element> out;
  for (int f = 0; f < 2; ++f)
    for (int r = 0; r < n_; ++r) out.push_back(element(r, f != 0));
  return out;
}

std::string DihedralGroup::format(Element const& a) const {
  int r = static_cast<unsigned char>(a.bytes()[0]), f = a.bytes()[1];
  if (r == 0 && !f) return "e";
  std::string out;
  if (r) out = r == 1 ? "r" : "r^" + std::to_string(r);
  if (f) out += "s";
  return out;
}

Element DihedralGroup::parse_element(std::string_view t) const {
  std::string s(text::trim(t));
  if (s == "e") return identity();
  bool refl = !s.empty() && s.back() == 's';
  if (refl) s.pop_back();
  int r = 0;
  if (!s.empty()) {
    if (s[0] != 'r') throw ParseError("expected r^k[s]", 0);
    r = s.size() == 1 ? 1 : static_cast<int>(text::parse_int(s.substr(2)));
  }
  return element(r, refl);
}

// ---------------------------------------------------------------------------
// Q_8: byte = 4*sign + unit, unit 0..3 = 1,i,j,k

namespace {
// unit product table: (unit, sign)
constexpr std::array<std::array<std::pair<int, int>, 4>, 4> kQuatTable{{
    {{{0, 0}, {1, 0}, {2, 0}, {3, 0}}},
    {{{1, 0}, {0, 1}, {3, 0}, {2, 1}}},
    {{{2, 0}, {3, 1}, {0, 1}, {1, 0}}},
    {{{3, 0}, {2, 0}, {1, 1}, {0, 1}}},
}};
constexpr std::array<char const*, 4> kQuatNames{"1", "i", "j", "k"};

Element quat(int unit, int sign) { return Element(std::string(1, static_cast<char>(4 * sign + unit))); }
}  // namespace

Element QuaternionGroup::identity() const { return quat(0, 0); }

Element QuaternionGroup::multiply(Element const& a, Element const& b) const {
  int ca = a.bytes()[0], cb = b.bytes()[0];
  auto [unit, sign] = kQuatTable[ca % 4][cb % 4];
  return quat(unit, (sign + ca / 4 + cb / 4) % 2);
}

Element QuaternionGroup::inverse(Element const& a) const {
  int c = a.bytes()[0];
  int unit = c % 4, sign = c / 4;
  return quat(unit, unit == 0 ? sign : 1 - sign);
}

std::vector<Element> QuaternionGroup::elements() const {
  std::vector<Element> out;
  for (int sign = 0; sign < 2; ++sign)
    for (int unit = 0; unit < 4; ++unit) out.push_back(quat(unit, sign));
  return out;
}

std::string QuaternionGroup::format(Element const& a) const {
  int c = a.bytes()[0];
  return std::string(c / 4 ? "-" : "") + kQuatNames[c % 4];
}

Element QuaternionGroup::parse_element(std::string_view t) const {
  std::string_view s = text::trim(t);
  int sign = 0;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    sign = s.front() == '-';
    s.remove_prefix(1);
  }
  for (int u = 0; u < 4; ++u)
    if (s == kQuatNames[u]) return quat(u, sign);
  throw ParseError("expected one of 1,i,j,k with optional sign", 0);
}

// ---------------------------------------------------------------------------
// SL_2(Z_p)

SpecialLinearGroup::SpecialLinearGroup(std::uint64_t p) : p_(p), width_(width_for(p)) {
  if (!is_prime(p)) throw InvalidArgument("sl2 needs a prime modulus, got " + std::to_string(p));
  if (p >= (1ull << 31)) throw InvalidArgument("sl2 modulus too large");
}

std::string SpecialLinearGroup::descriptor() const { return "sl2:" + std::to_string(p_); }

Element SpecialLinearGroup::encode(Matrix const& m) const {
  std::string s;
  s.reserve(4 * static_cast<std::size_t>(width_));
  put_uint(s, m.a, width_);
  put_uint(s, m.b, width_);
  put_uint(s, m.c, width_);
  put_uint(s, m.d, width_);
  return Element(std::move(s));
}

SpecialLinearGroup::Matrix SpecialLinearGroup::matrix(Element const& e) const {
  auto const& s = e.bytes();
  return {get_uint(s, 0, width_), get_uint(s, width_, width_), get_uint(s, 2 * width_, width_),
          get_uint(s, 3 * width_, width_)};
}

Element SpecialLinearGroup::element(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) const {
  Matrix m{reduce_mod(a, p_), reduce_mod(b, p_), reduce_mod(c, p_), reduce_mod(d, p_)};
  if ((m.a * m.d % p_ + p_ - m.b * m.c % p_) % p_ != 1 % p_) {
    throw InvalidArgument("matrix does not have determinant 1 mod " + std::to_string(p_));
  }
  return encode(m);
}

Element SpecialLinearGroup::identity() const { return encode({1, 0, 0, 1}); }

Element SpecialLinearGroup::multiply(Element const& x, Element const& y) const {
  Matrix m = matrix(x), n = matrix(y);
  return encode({(m.a * n.a + m.b * n.c) % p_, (m.a * n.b + m.b * n.d) % p_, (m.c * n.a + m.d * n.c) % p_,
                 (m.c * n.b + m.d * n.d) % p_});
}

Element SpecialLinearGroup::inverse(Element const& x) const {
  Matrix m = matrix(x);
  return encode({m.d, (p_ - m.b) % p_, (p_ - m.c) % p_, m.a});
}

std::optional<std::uint64_t> SpecialLinearGroup::order() const { return p_ * (p_ * p_ - 1); }

std::vector<Element> SpecialLinearGroup::elements() const {
  if (*order() > (1ull << 24)) throw CapExceeded(descriptor() + " too large to enumerate");
  std::vector<Matrix> ms;
  for (std::uint64_t a = 0; a < p_; ++a)
    for (std::uint64_t b = 0; b < p_; ++b)
      for (std::uint64_t c = 0; c < p_; ++c) {
        if (a != 0) {
          std::uint64_t d = (1 + b * c) % p_ * mod_pow(a, p_ - 2, p_) % p_;
          ms.push_back({a, b, c, d});
        } else if ((b * c) % p_ == p_ - 1 || (p_ == 2 && b * c % 2 == 1)) {
          for (std::uint64_t d = 0; d < p_; ++d) ms.push_back({a, b, c, d});
        }
      }
  std::vector<Element> out;
  out.reserve(ms.size());
  for (auto const& m : ms) out.push_back(encode(m));
  return out;
}

std::string SpecialLinearGroup::format(Element const& e) const {
  Matrix m = matrix(e);
  return "[[" + std::to_string(m.a) + "," + std::to_string(m.b) + "],[" + std::to_string(m.c) + "," +
         std::to_string(m.d) + "]]";
}

Element SpecialLinearGroup::parse_element(std::string_view t) const {
  std::string s;
  for (char c : t)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '[' && c != ']') s.push_back(c);
  auto v = text::parse_int_list(s);
  if (v.size() != 4) throw ParseError("expected [[a,b],[c,d]]", 0);
  return element(v[0], v[1], v[2], v[3]);
}

// ---------------------------------------------------------------------------
// Direct products: each component is stored as <length byte><bytes>

DirectProduct::DirectProduct(std::vector<GroupPtr> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw InvalidArgument("direct product needs at least one factor");
}

std::string DirectProduct::descriptor() const {
  std::vector<std::string> parts;
  for (auto const& f : factors_) parts.push_back(f->descriptor());
  return "prod(" + text::join(parts, ",") + ")";
}

Element DirectProduct::element(std::vector<Element> const& comps) const {
  if (comps.size() != factors_.size()) throw InvalidArgument("wrong number of components");
  std::string s;
  for (auto const& c : comps) {
    if (c.bytes().size() > 255) throw InvalidArgument("component encoding too long");
    s.push_back(static_cast<char>(c.bytes().size()));
    s += c.bytes();
  }
  return Element(std::move(s));
}

std::vector<Element> DirectProduct::components(Element const& a) const {
  std::vector<Element> out;
  std::size_t pos = 0;
  auto const& s = a.bytes();
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::size_t len = static_cast<unsigned char>(s[pos]);
    out.emplace_back(s.substr(pos + 1, len));
    pos += 1 + len;
  }
  return out;
}

Element DirectProduct::identity() const {
  std::vector<Element> c;
  for (auto const& f : factors_) c.push_back(f->identity());
  return element(c);
}

Element DirectProduct::multiply(Element const& a, Element const& b) const {
  auto ca = components(a), cb = components(b);
  for (std::size_t i = 0; i < factors_.size(); ++i) ca[i] = factors_[i]->multiply(ca[i], cb[i]);
  return element(ca);
}

Element DirectProduct::inverse(Element const& a) const {
  auto ca = components(a);
  for (std::size_t i = 0; i < factors_.size(); ++i) ca[i] = factors_[i]->inverse(ca[i]);
  return element(ca);
}

std::optional<std::uint64_t> DirectProduct::order() const {
  std::uint64_t n = 1;
  for (auto const& f : factors_) {
    auto o = f->order();
    if (!o) return std::nullopt;
    n *= *o;
  }
  return n;
}

std::vector<Element> DirectProduct::elements() const {
  auto n = order();
  if (!n) return Group::elements();
  if (*n > (1ull << 24)) throw CapExceeded(descriptor() + " too large to enumerate");
  std::vector<std::vector<Element>> lists;
  for (auto const& f : factors_) lists.push_back(f->elements());
  std::vector<Element> out;
  std::vector<std::size_t> idx(lists.size(), 0);
  while (true) {
    std::vector<Element> comps;
    for (std::size_t i = 0; i < lists.size(); ++i) comps.push_back(lists[i][idx[i]]);
    out.push_back(element(comps));
    std::size_t k = lists.size();
    while (k > 0) {
      --k;
      if (++idx[k] < lists[k].size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
    if (lists.empty()) return out;
  }
}

std::string DirectProduct::format(Element const& a) const {
  auto ca = components(a);
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < ca.size(); ++i) parts.push_back(factors_[i]->format(ca[i]));
  return "(" + text::join(parts, ";") + ")";
}

Element DirectProduct::parse_element(std::string_view t) const {
  std::string_view s = text::trim(t);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw ParseError("expected (a;b;...)", 0);
  auto parts = text::split_top_level(s.substr(1, s.size() - 2), ';');
  if (parts.size() != factors_.size()) throw ParseError("wrong number of product components", 0);
  std::vector<Element> comps;
  for (std::size_t i = 0; i < parts.size(); ++i) comps.push_back(factors_[i]->parse_element(parts[i]));
  return element(comps);
}

// ---------------------------------------------------------------------------
// Z

Element IntegerGroup::element(std::int64_t v) const {
  std::string s;
  put_uint(s, static_cast<std::uint64_t>(v), 8);
  return Element(std::move(s));
}

std::int64_t IntegerGroup::value(Element const& a) const {
  return static_cast<std::int64_t>(get_uint(a.bytes(), 0, 8));
}

Element IntegerGroup::identity() const { return element(0); }
Element IntegerGroup::multiply(Element const& a, Element const& b) const { return element(value(a) + value(b)); }
Element IntegerGroup::inverse(Element const& a) const { return element(-value(a)); }
std::string IntegerGroup::format(Element const& a) const { return std::to_string(value(a)); }
Element IntegerGroup::parse_element(std::string_view t) const { return element(text::parse_int(t)); }

// ---------------------------------------------------------------------------
// Factories

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

GroupPtr cyclic(std::uint64_t n) { return std::make_shared<CyclicGroup>(n); }
GroupPtr elementary_abelian(int p, int k) { return std::make_shared<ElementaryAbelianGroup>(p, k); }
GroupPtr symmetric(int n) { return std::make_shared<SymmetricGroup>(n); }
GroupPtr dihedral(int n) { return std::make_shared<DihedralGroup>(n); }
GroupPtr quaternion() { return std::make_shared<QuaternionGroup>(); }
GroupPtr special_linear(std::uint64_t p) { return std::make_shared<SpecialLinearGroup>(p); }
GroupPtr direct_product(std::vector<GroupPtr> factors) { return std::make_shared<DirectProduct>(std::move(factors)); }
GroupPtr integers() { return std::make_shared<IntegerGroup>(); }

std::pair<Element, Element> margulis_generators(SpecialLinearGroup const& g) {
  if (g.prime() <= 2) throw InvalidArgument("Margulis generators need an odd prime");
  return {g.element(1, 2, 0, 1), g.element(1, 0, 2, 1)};
}

std::optional<std::uint64_t> generated_subgroup_order(Group const& g, std::span<const Element> gens,
                                                      std::uint64_t cap) {
  std::unordered_set<Element, ElementHash> seen{g.identity()};
  std::deque<Element> queue{g.identity()};
  while (!queue.empty()) {
    Element x = std::move(queue.front());
    queue.pop_front();
    for (auto const& s : gens) {
      for (Element y : {g.multiply(x, s), g.multiply(x, g.inverse(s))}) {
        if (seen.insert(y).second) {
          if (seen.size() > cap) return std::nullopt;
          queue.push_back(std::move(y));
        }
      }
    }
  }
  return seen.size();
}

// ---------------------------------------------------------------------------
// CayleyTable

CayleyTable::CayleyTable(GroupPtr group, std::size_t max_order) : group_(std::move(group)) {
  auto n = group_->order();
  if (!n) throw NotEnumerable(group_->descriptor() + " is infinite; a Cayley table needs a finite group");
  if (*n > max_order) {
    throw CapExceeded("group " + group_->descriptor() + " of order " + std::to_string(*n) +
                      " exceeds the table bound " + std::to_string(max_order));
  }
  elements_ = group_->elements();
  std::size_t size = elements_.size();
  index_.reserve(size * 2);
  for (std::size_t i = 0; i < size; ++i) index_.emplace(elements_[i], static_cast<int>(i));
  identity_ = index_.at(group_->identity());
  mul_.resize(size * size);
  inv_.resize(size);
  for (std::size_t i = 0; i < size; ++i) {
    inv_[i] = index_.at(group_->inverse(elements_[i]));
    for (std::size_t j = 0; j < size; ++j) {
      mul_[i * size + j] = index_.at(group_->multiply(elements_[i], elements_[j]));
    }
  }
}

int CayleyTable::index_of(Element const& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) throw InvalidArgument("element does not belong to " + group_->descriptor());
  return it->second;
}

std::vector<int> CayleyTable::generated_subgroup(std::span<const int> gens) const {
  std::vector<bool> in(size(), false);
  std::vector<int> stack{identity_};
  in[identity_] = true;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int s : gens) {
      int y = mul(x, s);
      if (!in[y]) {
        in[y] = true;
        stack.push_back(y);
      }
    }
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (in[i]) out.push_back(static_cast<int>(i));
  return out;
}

// ---------------------------------------------------------------------------
// Automorphisms

bool TableAutomorphism::is_identity() const {
  for (std::size_t i = 0; i < image.size(); ++i)
    if (image[i] != static_cast<int>(i)) return false;
  return true;
}

TableAutomorphism TableAutomorphism::compose(TableAutomorphism const& inner) const {
  TableAutomorphism out;
  out.image.resize(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) out.image[i] = image[inner.image[i]];
  return out;
}

TableAutomorphism TableAutomorphism::inverse() const {
  TableAutomorphism out;
  out.image.resize(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) out.image[image[i]] = static_cast<int>(i);
  return out;
}

std::vector<int> greedy_generating_tuple(CayleyTable const& g) {
  std::vector<int> gens;
  std::size_t current = 1;
  for (std::size_t i = 0; i < g.size() && current < g.size(); ++i) {
    std::vector<int> trial = gens;
    trial.push_back(static_cast<int>(i));
    std::size_t size = g.generated_subgroup(trial).size();
    if (size > current) {
      gens = std::move(trial);
      current = size;
    }
  }
  return gens;
}

namespace {

// Extends generator images to a homomorphism by closing over words in the
// generators. Returns false on an inconsistency or a non-bijective result.
bool extend_to_automorphism(CayleyTable const& g, std::vector<int> const& gens, std::vector<int> const& images,
                            std::vector<int>& map) {
  std::size_t n = g.size();
  map.assign(n, -1);
  map[g.identity()] = g.identity();
  std::vector<int> stack{g.identity()};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      int y = g.mul(x, gens[k]);
      int fy = g.mul(map[x], images[k]);
      if (map[y] == -1) {
        map[y] = fy;
        stack.push_back(y);
      } else if (map[y] != fy) {
        return false;
      }
    }
  }
  std::vector<bool> hit(n, false);
  for (int v : map) {
    if (v < 0 || hit[v]) return false;
    hit[v] = true;
  }
  // Closure over generators guarantees map(xs) = map(x)map(s); check the
  // full table so that non-generator products are covered too.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (map[g.mul(static_cast<int>(a), static_cast<int>(b))] != g.mul(map[a], map[b])) return false;
  return true;
}

}  // namespace

std::vector<TableAutomorphism> group_automorphisms(CayleyTable const& g, std::size_t max_order) {
  if (g.size() > max_order) {
    throw CapExceeded("automorphism search limited to order " + std::to_string(max_order) + ", group " +
                      g.descriptor() + " has order " + std::to_string(g.size()));
  }
  std::vector<int> gens = greedy_generating_tuple(g);
  std::vector<std::uint64_t> orders(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) orders[i] = g.group().element_order(g.element(static_cast<int>(i)));

  std::vector<std::vector<int>> candidates(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::size_t i = 0; i < g.size(); ++i)
      if (orders[i] == orders[gens[k]]) candidates[k].push_back(static_cast<int>(i));

  std::vector<TableAutomorphism> out;
  std::vector<int> images(gens.size());
  std::vector<int> map;
  // Iterative odometer over the candidate tuples.
  std::vector<std::size_t> pos(gens.size(), 0);
  if (gens.empty()) {
    out.push_back({std::vector<int>{g.identity()}});
    return out;
  }
  while (true) {
    for (std::size_t k = 0; k < gens.size(); ++k) images[k] = candidates[k][pos[k]];
    if (extend_to_automorphism(g, gens, images, map)) out.push_back({map});
    std::size_t k = gens.size();
    bool done = true;
    while (k > 0) {
      --k;
      if (++pos[k] < candidates[k].size()) {
        done = false;
        break;
      }
      pos[k] = 0;
    }
    if (done) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TableAutomorphism> automorphism_generators(std::vector<TableAutomorphism> const& all) {
  std::vector<TableAutomorphism> gens;
  if (all.empty()) return gens;
  std::set<std::vector<int>> closure;
  TableAutomorphism id;
  id.image.resize(all.front().image.size());
  std::iota(id.image.begin(), id.image.end(), 0);
  closure.insert(id.image);
  for (auto const& a : all) {
    if (closure.count(a.image)) continue;
    gens.push_back(a);
    // Recompute the closure under the enlarged generating set.
    std::vector<TableAutomorphism> frontier;
    for (auto const& img : closure) frontier.push_back({img});
    while (!frontier.empty()) {
      std::vector<TableAutomorphism> next;
      for (auto const& x : frontier)
        for (auto const& s : gens) {
          auto y = s.compose(x);
          if (closure.insert(y.image).second) next.push_back(std::move(y));
        }
      frontier = std::move(next);
    }
  }
  return gens;
}

}  // namespace posrep
