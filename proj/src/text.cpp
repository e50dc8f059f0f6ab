#include "posrep/text.hpp"

#include <cctype>
#include <charconv>

#include "posrep/error.hpp"

namespace posrep::text {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_top_level(std::string_view s, char sep) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[' || c == '{' || c == '<') {
      ++depth;
    } else if (c == ')' || c == ']' || c == '}' || c == '>') {
      if (--depth < 0) throw ParseError("unbalanced '" + std::string(1, c) + "'", i);
    } else if (c == sep && depth == 0) {
      out.emplace_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw ParseError("unbalanced brackets", s.size());
  out.emplace_back(trim(s.substr(start)));
  return out;
}

std::int64_t parse_int(std::string_view s) {
  std::string_view t = trim(s);
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ParseError("expected an integer, got '" + std::string(s) + "'",
                     static_cast<std::size_t>(ptr - t.data()));
  }
  return value;
}

std::vector<std::int64_t> parse_int_list(std::string_view s) {
  std::vector<std::int64_t> out;
  for (auto const& piece : split_top_level(s, ',')) out.push_back(parse_int(piece));
  return out;
}

}  // namespace posrep::text
