#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "starheight/automata.hpp"
#include "starheight/monoid.hpp"
#include "starheight/regex.hpp"

namespace starheight {

/// A regular language in the two shapes the pipeline consumes: its minimal
/// DFA (for games) and the transition monoid of that DFA (for the height
/// automaton construction).
struct Language {
  Dfa dfa;
  MonoidPresentation monoid;
  std::optional<Regex> source;

  const Alphabet& alphabet() const { return dfa.alphabet; }
  bool contains(std::string_view word) const { return dfa.accepts(word); }
};

Language language_from_dfa(const Dfa& d, std::size_t max_monoid = 64);
Language language_from_regex(const Regex& e, const Alphabet& alphabet, std::size_t max_monoid = 64);
/// `alphabet: a b` header line followed by a regular expression.
Language language_from_regex_text(std::string_view text, std::size_t max_monoid = 64);
/// Dispatches on the first line: `dfa` selects the DFA format, anything else
/// is read as a regex file.
Language load_language(std::string_view text, std::size_t max_monoid = 64);

}  // namespace starheight
