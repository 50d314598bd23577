#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "starheight/automata.hpp"

namespace starheight {

using Element = std::uint32_t;
/// Subset of monoid elements as a bit mask; monoids are capped at 64 elements.
using ElementSet = std::uint64_t;

/// Finite monoid M with a homomorphism alpha: A* -> M recognising a language.
class MonoidPresentation {
 public:
  MonoidPresentation() = default;
  MonoidPresentation(Alphabet alphabet, std::vector<std::vector<Element>> table, Element identity,
                     std::vector<Element> letter_image, std::vector<bool> accepting);

  std::size_t size() const { return table_.size(); }
  Element identity() const { return identity_; }
  Element multiply(Element x, Element y) const { return table_[x][y]; }
  Element letter(Symbol a) const { return letter_image_[alphabet_.index(a)]; }
  Element image(std::string_view word) const;
  bool accepting(Element x) const { return accepting_[x]; }
  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<std::vector<Element>>& table() const { return table_; }

  /// alpha(L) as a mask.
  ElementSet accepting_set() const;
  ElementSet all() const;
  /// Submonoid generated by `gens` (always contains the identity).
  ElementSet generated_submonoid(ElementSet gens) const;
  /// Pointwise product {xy : x in lhs, y in rhs}.
  ElementSet product(ElementSet lhs, ElementSet rhs) const;
  ElementSet times(ElementSet lhs, Element y) const;

  /// Exhaustive associativity and identity checks.
  bool satisfies_monoid_laws() const;

 private:
  Alphabet alphabet_;
  std::vector<std::vector<Element>> table_;
  Element identity_ = 0;
  std::vector<Element> letter_image_;
  std::vector<bool> accepting_;
};

inline bool contains(ElementSet s, Element x) { return (s >> x) & 1U; }
inline ElementSet singleton(Element x) { return ElementSet{1} << x; }

/// Transition monoid of a total DFA: elements are the state transformations
/// induced by words, multiplied in reading order. Throws BudgetExceeded when
/// more than `max_size` (at most 64) transformations exist.
MonoidPresentation transition_monoid(const Dfa& d, std::size_t max_size = 64);

}  // namespace starheight
