#pragma once

#include <string>

#include "starheight/automata.hpp"
#include "starheight/cost_automaton.hpp"
#include "starheight/strategy.hpp"

namespace starheight {

/// Graphviz renderings. Initial states are bold, final states double circles;
/// cost automaton edges are labelled `letter/actions`.
std::string to_dot(const CostAutomaton& a);
std::string to_dot(const Dfa& d);
/// Memory states as circles, each linked to a box listing its output set.
std::string to_dot(const FiniteMemoryStrategy& s);

}  // namespace starheight
