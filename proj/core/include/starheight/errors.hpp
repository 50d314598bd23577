#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace starheight {

/// Malformed input text. `position` is a byte offset (regexes) or a
/// 1-based line number (line-oriented files), see `where()`.
class ParseError : public std::runtime_error {
 public:
  enum class Unit { Offset, Line };

  ParseError(const std::string& message, std::size_t position, Unit unit = Unit::Offset)
      : std::runtime_error(message), position_(position), unit_(unit) {}

  std::size_t position() const noexcept { return position_; }
  Unit unit() const noexcept { return unit_; }
  std::string where() const {
    return (unit_ == Unit::Line ? "line " : "offset ") + std::to_string(position_);
  }

 private:
  std::size_t position_;
  Unit unit_;
};

/// An exponential construction hit one of the configured size limits.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cost automaton and language disagree on the input alphabet.
class AlphabetMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An invariant the algorithms rely on was violated.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace starheight
