#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace starheight {

using Symbol = char;
using Word = std::string;
using StateId = std::uint32_t;

/// Sorted, duplicate-free list of input letters.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Symbol> letters) : letters_(std::move(letters)) {
    std::sort(letters_.begin(), letters_.end());
    letters_.erase(std::unique(letters_.begin(), letters_.end()), letters_.end());
  }

  const std::vector<Symbol>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool contains(Symbol s) const { return std::binary_search(letters_.begin(), letters_.end(), s); }
  /// Position of `s` in the sorted letter list; `s` must be a member.
  std::size_t index(Symbol s) const {
    return static_cast<std::size_t>(std::lower_bound(letters_.begin(), letters_.end(), s) -
                                    letters_.begin());
  }
  Symbol operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  /// Space-separated letters, as used in `alphabet:` header lines.
  std::string to_string() const {
    std::string out;
    for (Symbol s : letters_) {
      if (!out.empty()) out += ' ';
      out += s;
    }
    return out;
  }

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<Symbol> letters_;
};

/// A natural number or infinity; the codomain of cost functions.
class Cost {
 public:
  constexpr Cost() = default;
  constexpr explicit Cost(std::uint64_t value) : value_(value) {}
  static constexpr Cost infinity() {
    Cost c;
    c.value_ = kInfinity;
    return c;
  }

  constexpr bool is_infinite() const noexcept { return value_ == kInfinity; }
  constexpr bool is_finite() const noexcept { return value_ != kInfinity; }
  /// Only meaningful for finite costs.
  constexpr std::uint64_t value() const noexcept { return value_; }

  constexpr auto operator<=>(const Cost&) const = default;
  constexpr bool operator==(const Cost&) const = default;

  std::string to_string() const { return is_infinite() ? "inf" : std::to_string(value_); }

 private:
  static constexpr std::uint64_t kInfinity = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t value_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const Cost& c) { return os << c.to_string(); }

/// All words over `alphabet` of exactly `length` letters, in lexicographic order.
std::vector<Word> words_of_length(const Alphabet& alphabet, std::size_t length);
/// All words of length at most `max_length`, shortest first.
std::vector<Word> words_up_to(const Alphabet& alphabet, std::size_t max_length);

}  // namespace starheight
