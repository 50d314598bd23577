#include "starheight/language.hpp"

#include <cctype>

#include "starheight/errors.hpp"
#include "text_format.hpp"

namespace starheight {

Language language_from_dfa(const Dfa& d, std::size_t max_monoid) {
  Dfa m = minimize(d);
  MonoidPresentation monoid = transition_monoid(m, max_monoid);
  return Language{std::move(m), std::move(monoid), std::nullopt};
}

Language language_from_regex(const Regex& e, const Alphabet& alphabet, std::size_t max_monoid) {
  Language l = language_from_dfa(determinize_minimize(regex_to_nfa(e, alphabet)), max_monoid);
  l.source = e;
  return l;
}

Language language_from_regex_text(std::string_view text, std::size_t max_monoid) {
  // header line, then the expression on the remaining lines
  std::size_t nl = text.find('\n');
  std::string_view header = text.substr(0, nl);
  while (true) {
    auto lines = detail::read_lines(header);
    if (!lines.empty() || nl == std::string_view::npos) break;
    text = text.substr(nl + 1);
    nl = text.find('\n');
    header = text.substr(0, nl);
  }
  auto lines = detail::read_lines(header);
  if (lines.empty() || lines[0].key != "alphabet" || !lines[0].has_colon)
    throw ParseError("regex file must start with an 'alphabet:' line", 1, ParseError::Unit::Line);
  Alphabet alphabet = detail::parse_alphabet(lines[0]);
  std::string body;
  if (nl != std::string_view::npos) {
    std::string_view rest = text.substr(nl + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
      std::size_t end = rest.find('\n', start);
      if (end == std::string_view::npos) end = rest.size();
      std::string_view line = rest.substr(start, end - start);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      body += line;
      body += ' ';
      if (end == rest.size()) break;
      start = end + 1;
    }
  }
  return language_from_regex(parse_regex(body, alphabet), alphabet, max_monoid);
}

Language load_language(std::string_view text, std::size_t max_monoid) {
  auto lines = detail::read_lines(text);
  if (lines.empty()) throw ParseError("empty language file", 1, ParseError::Unit::Line);
  if (lines[0].key == "dfa" && !lines[0].has_colon) return language_from_dfa(parse_dfa(text), max_monoid);
  return language_from_regex_text(text, max_monoid);
}

}  // namespace starheight
