#pragma once

// Shared helpers for the line-oriented file formats.

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "starheight/errors.hpp"
#include "starheight/types.hpp"

namespace starheight::detail {

struct Line {
  std::size_t number;  // 1-based
  std::string key;     // text before ':' (or the whole line when there is none)
  std::vector<std::string> values;
  bool has_colon = false;
};

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

/// Non-empty lines with '#' comments removed.
inline std::vector<Line> read_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(start, end - start);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    auto colon = raw.find(':');
    Line line{number, {}, {}, false};
    if (colon == std::string_view::npos) {
      auto toks = split_ws(raw);
      if (!toks.empty()) {
        line.key = toks.front();
        line.values.assign(toks.begin() + 1, toks.end());
        out.push_back(std::move(line));
      }
    } else {
      auto keys = split_ws(raw.substr(0, colon));
      if (keys.size() != 1) throw ParseError("malformed line", number, ParseError::Unit::Line);
      line.key = keys.front();
      line.values = split_ws(raw.substr(colon + 1));
      line.has_colon = true;
      out.push_back(std::move(line));
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

[[noreturn]] inline void fail(const std::string& message, const Line& line) {
  throw ParseError(message, line.number, ParseError::Unit::Line);
}

inline Alphabet parse_alphabet(const Line& line) {
  std::vector<Symbol> letters;
  for (const auto& v : line.values) {
    if (v.size() != 1 || !std::isalnum(static_cast<unsigned char>(v[0])))
      fail("alphabet letters must be single alphanumeric characters", line);
    letters.push_back(v[0]);
  }
  Alphabet a(letters);
  if (a.size() != letters.size()) fail("duplicate letter in alphabet", line);
  return a;
}

/// Maps names to dense ids, rejecting duplicates.
inline std::map<std::string, StateId> index_names(const std::vector<std::string>& names, const Line& line) {
  std::map<std::string, StateId> ids;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (!ids.emplace(names[i], static_cast<StateId>(i)).second) fail("duplicate state '" + names[i] + "'", line);
  return ids;
}

inline StateId lookup(const std::map<std::string, StateId>& ids, const std::string& name, const Line& line) {
  auto it = ids.find(name);
  if (it == ids.end()) fail("unknown state '" + name + "'", line);
  return it->second;
}

inline std::string join(const std::vector<std::string>& xs, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

}  // namespace starheight::detail
