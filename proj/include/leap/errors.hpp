#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace leap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `position` is a 0-based byte offset into the parsed string.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        detail_(what),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }
  const std::string& detail() const noexcept { return detail_; }
  /// Same error relative to an enclosing string that starts `offset` bytes earlier.
  ParseError shifted(std::size_t offset) const { return {detail_, position_ + offset}; }

 private:
  std::string detail_;
  std::size_t position_;
};

class EmptyGuard : public Error {
 public:
  using Error::Error;
};

class UnknownClock : public Error {
 public:
  using Error::Error;
};

class UnknownEvent : public Error {
 public:
  using Error::Error;
};

class ConstantTooLarge : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class StateBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class BackendUnavailable : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class InvalidSample : public Error {
 public:
  using Error::Error;
};

}  // namespace leap
