#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace posrep::text {

std::string_view trim(std::string_view s);

/// Splits `s` at every `sep` that is not nested inside (), [], {} or <>.
/// Pieces are trimmed; an all-blank input yields an empty vector.
std::vector<std::string> split_top_level(std::string_view s, char sep);

/// Parses a signed decimal integer, rejecting trailing garbage.
std::int64_t parse_int(std::string_view s);

/// Comma separated list of integers, e.g. "0,1,3".
std::vector<std::int64_t> parse_int_list(std::string_view s);

template <typename Range>
std::string join(Range const& items, std::string_view sep) {
  std::string out;
  bool first = true;
  for (auto const& item : items) {
    if (!first) out += sep;
    out += item;
    first = false;
  }
  return out;
}

}  // namespace posrep::text
