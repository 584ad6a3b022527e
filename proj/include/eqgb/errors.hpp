#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eqgb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial or monomial text; `position` is a byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An index outside the ring (row > ring width, column 0, ...).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A caller violated an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A computation exceeded its configured resource cap.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace eqgb
