#include "starheight/dot.hpp"

#include <sstream>

namespace starheight {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void node(std::ostringstream& os, const std::string& name, bool initial, bool final) {
  os << "  " << quote(name) << " [shape=" << (final ? "doublecircle" : "circle");
  if (initial) os << ", style=bold";
  os << "];\n";
}

}  // namespace

std::string to_dot(const CostAutomaton& a) {
  std::ostringstream os;
  os << "digraph costautomaton {\n  rankdir=LR;\n";
  for (StateId q = 0; q < a.num_states(); ++q) node(os, a.state_names[q], a.is_initial(q), a.is_final(q));
  for (const auto& t : a.transitions)
    os << "  " << quote(a.state_names[t.source]) << " -> " << quote(a.state_names[t.target])
       << " [label=" << quote(std::string(1, t.letter) + "/" + to_string(t.actions)) << "];\n";
  os << "}\n";
  return os.str();
}

std::string to_dot(const Dfa& d) {
  std::ostringstream os;
  os << "digraph dfa {\n  rankdir=LR;\n";
  for (StateId q = 0; q < d.num_states(); ++q) node(os, d.state_names[q], q == d.initial, d.final[q]);
  for (StateId q = 0; q < d.num_states(); ++q)
    for (std::size_t i = 0; i < d.alphabet.size(); ++i)
      os << "  " << quote(d.state_names[q]) << " -> " << quote(d.state_names[d.delta[q][i]])
         << " [label=" << quote(std::string(1, d.alphabet[i])) << "];\n";
  os << "}\n";
  return os.str();
}

std::string to_dot(const FiniteMemoryStrategy& s) {
  std::ostringstream os;
  os << "digraph strategy {\n  rankdir=LR;\n";
  for (StateId q = 0; q < s.num_states(); ++q) {
    node(os, s.state_names[q], q == s.initial, false);
    std::string label = "{";
    for (std::size_t i = 0; i < s.output[q].size(); ++i) {
      if (i) label += ',';
      label += std::to_string(s.output[q][i]);
    }
    label += "}";
    os << "  " << quote("out:" + s.state_names[q]) << " [shape=box, label=" << quote(label) << "];\n";
    os << "  " << quote(s.state_names[q]) << " -> " << quote("out:" + s.state_names[q]) << " [style=dashed];\n";
  }
  for (StateId q = 0; q < s.num_states(); ++q)
    for (std::size_t i = 0; i < s.alphabet.size(); ++i)
      os << "  " << quote(s.state_names[q]) << " -> " << quote(s.state_names[s.delta[q][i]])
         << " [label=" << quote(std::string(1, s.alphabet[i])) << "];\n";
  os << "}\n";
  return os.str();
}

}  // namespace starheight
