#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "starheight/types.hpp"

namespace starheight {

/// Immutable regular expression tree (no complementation).
///
/// Nodes are shared; copying a `Regex` is cheap. Grammar accepted by
/// `parse_regex`:
///
///     expr   := term ('+' term)*
///     term   := factor+
///     factor := base '*'*
///     base   := letter | 'eps' | 'empty' | '(' expr ')'
///
/// Keywords win over letter sequences, so with an alphabet containing
/// `e`, `p` and `s` the text `eps` still denotes the empty word.
class Regex {
 public:
  enum class Kind { Empty, Epsilon, Letter, Union, Concat, Star };

  static Regex empty();
  static Regex epsilon();
  static Regex letter(Symbol s);
  static Regex union_of(Regex left, Regex right);
  static Regex concat(Regex left, Regex right);
  static Regex star(Regex child);

  Kind kind() const { return node_->kind; }
  Symbol symbol() const { return node_->symbol; }
  const Regex& left() const { return *node_->left; }
  const Regex& right() const { return *node_->right; }
  const Regex& child() const { return *node_->left; }

  bool operator==(const Regex& other) const;

 private:
  struct Node {
    Kind kind = Kind::Empty;
    Symbol symbol = 0;
    std::shared_ptr<const Regex> left;
    std::shared_ptr<const Regex> right;
  };
  explicit Regex(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Throws ParseError for syntax errors, empty input and letters outside `alphabet`.
Regex parse_regex(std::string_view text, const Alphabet& alphabet);

/// Prints with the minimal parentheses under star > concat > union.
std::string to_string(const Regex& e);

/// Nesting depth of the Kleene star.
std::size_t expression_star_height(const Regex& e);

/// Letters occurring in `e`.
Alphabet letters_of(const Regex& e);

/// Direct semantic membership test, independent of any automaton.
bool regex_matches(const Regex& e, std::string_view word);

}  // namespace starheight
