#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace posrep {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside the domain of an operation (non-prime modulus,
/// empty connection set, trivial word where a nontrivial one is required).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A configured size bound was exceeded (poset points, group order,
/// BFS node budget, sample count).
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed. `position` is a 0-based offset into the
/// offending string.
class ParseError : public Error {
 public:
  ParseError(std::string const& message, std::size_t position)
      : Error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An operation that needs to enumerate elements was applied to an
/// infinite group.
class NotEnumerable : public Error {
 public:
  using Error::Error;
};

}  // namespace posrep
