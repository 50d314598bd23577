#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "starheight/cost_automaton.hpp"
#include "starheight/language.hpp"

namespace fixtures {

inline std::string read(const std::string& name) {
  std::ifstream in(std::string(STARHEIGHT_DATA_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline starheight::CostAutomaton automaton(const std::string& name) {
  return starheight::parse_cost_automaton(read(name + ".ca"));
}

inline starheight::CostAutomaton ex1() { return automaton("ex1"); }
inline starheight::CostAutomaton ex2() { return automaton("ex2"); }
inline starheight::CostAutomaton ex3() { return automaton("ex3"); }
inline starheight::CostAutomaton mixed() { return automaton("mixed"); }

/// Language over {a, b} given by a regex.
inline starheight::Language lang(const std::string& regex) {
  return starheight::language_from_regex_text("alphabet: a b\n" + regex + "\n");
}

}  // namespace fixtures
