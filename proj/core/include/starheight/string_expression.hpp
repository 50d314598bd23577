#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "starheight/language.hpp"
#include "starheight/monoid.hpp"
#include "starheight/regex.hpp"

namespace starheight {

/// Normal-form regular expression with a height and a degree.
///
/// Height 0: a finite set of words, each of length at most `degree`.
/// Height h >= 1: a finite union of blocks `w1 e1* w2 e2* ... wi ei*` with
/// i <= degree, |wj| <= degree, and each ej a string expression of height
/// at most h-1 and degree at most `degree`. An empty union denotes the
/// empty language; an empty block denotes {eps}.
struct StringExpression {
  struct Factor {
    Word prefix;
    std::shared_ptr<const StringExpression> iterated;
  };
  using Block = std::vector<Factor>;

  std::size_t height = 0;
  std::size_t degree = 0;
  std::vector<Word> words;    // height 0
  std::vector<Block> blocks;  // height >= 1

  /// Recursive check of the height and degree bounds.
  bool well_formed() const;
};

bool string_expression_contains(const StringExpression& e, std::string_view word);
Regex to_regex(const StringExpression& e);
std::string to_string(const StringExpression& e);

/// The set [N]^m_h: union of all string expressions of height <= h and
/// degree <= m contained in alpha^{-1}(N).
struct SubsetLanguage {
  ElementSet subset = 0;
  std::size_t height = 0;
  std::size_t degree = 0;
};

/// Brute-force membership in [N]^m_h by exhaustive factorisation
/// w = w1 v1 ... wi vi and guessing of the subsets N1..Ni, recursing on
/// the height. Shares no code with the height automaton. Oracle scale only:
/// throws BudgetExceeded for |w| > 10, m > 10, h > 2 or |M| > 8.
bool subset_language_member_oracle(const MonoidPresentation& monoid, const SubsetLanguage& n,
                                   std::string_view word);

/// Smallest m with word in [N]^m_h, searching m = 0..max(|w|, 1); infinity
/// when none qualifies (then no degree does).
Cost minimal_degree_oracle(const MonoidPresentation& monoid, ElementSet subset, std::size_t height,
                           std::string_view word);

/// A string expression of height <= h and degree <= m defining exactly the
/// language, built as a union of the expressions contained in it. Tiny
/// budgets only (h <= 1, m <= 2, |M| <= 4 at h = 1); BudgetExceeded otherwise.
std::optional<StringExpression> string_expression_reconstruct(const Language& language, std::size_t height,
                                                              std::size_t degree);

}  // namespace starheight
