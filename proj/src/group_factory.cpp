#include <string>

#include "posrep/error.hpp"
#include "posrep/freegroup.hpp"
#include "posrep/group.hpp"
#include "posrep/text.hpp"

namespace posrep {

namespace {

std::int64_t parameter(std::string_view s, std::string_view descriptor) {
  try {
    return text::parse_int(s);
  } catch (ParseError const&) {
    throw ParseError("bad parameter in group descriptor '" + std::string(descriptor) + "'",
                     static_cast<std::size_t>(s.data() - descriptor.data()));
  }
}

}  // namespace

GroupPtr make_group(std::string_view descriptor) {
  std::string_view d = text::trim(descriptor);
  if (d == "q8") return quaternion();
  if (d == "int" || d == "z") return integers();
  if (d.starts_with("prod(")) {
    if (d.back() != ')') throw ParseError("unterminated prod(", d.size());
    std::vector<GroupPtr> factors;
    for (auto const& part : text::split_top_level(d.substr(5, d.size() - 6), ',')) {
      factors.push_back(make_group(part));
    }
    return direct_product(std::move(factors));
  }
  auto colon = d.find(':');
  if (colon == std::string_view::npos) throw ParseError("unknown group descriptor '" + std::string(d) + "'", 0);
  std::string_view family = d.substr(0, colon);
  std::string_view arg = d.substr(colon + 1);
  if (family == "z") {
    auto n = parameter(arg, d);
    if (n < 1) throw InvalidArgument("cyclic group order must be >= 1");
    return cyclic(static_cast<std::uint64_t>(n));
  }
  if (family.size() > 3 && family.front() == 'z' && family.ends_with("^k")) {
    auto p = parameter(family.substr(1, family.size() - 3), d);
    return elementary_abelian(static_cast<int>(p), static_cast<int>(parameter(arg, d)));
  }
  if (family == "s") return symmetric(static_cast<int>(parameter(arg, d)));
  if (family == "d") return dihedral(static_cast<int>(parameter(arg, d)));
  if (family == "sl2") {
    auto p = parameter(arg, d);
    if (p < 2) throw InvalidArgument("sl2 needs a prime modulus");
    return special_linear(static_cast<std::uint64_t>(p));
  }
  if (family == "f") return free_group(static_cast<int>(parameter(arg, d)));
  throw ParseError("unknown group family '" + std::string(family) + "'", 0);
}

}  // namespace posrep
