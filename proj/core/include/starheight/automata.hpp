#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "starheight/regex.hpp"
#include "starheight/types.hpp"

namespace starheight {

/// Epsilon-free nondeterministic automaton over finite words.
struct Nfa {
  Alphabet alphabet;
  std::size_t num_states = 0;
  /// transitions[state][letter index] = sorted target states
  std::vector<std::vector<std::vector<StateId>>> transitions;
  std::vector<StateId> initial;
  std::vector<bool> final;

  explicit Nfa(Alphabet a = {}, std::size_t n = 0);
  void add_transition(StateId from, Symbol letter, StateId to);
  bool accepts(std::string_view word) const;
};

/// Total deterministic automaton. State names are kept for file round trips.
struct Dfa {
  Alphabet alphabet;
  std::vector<std::string> state_names;
  /// delta[state][letter index]
  std::vector<std::vector<StateId>> delta;
  StateId initial = 0;
  std::vector<bool> final;

  std::size_t num_states() const { return delta.size(); }
  StateId step(StateId q, Symbol a) const { return delta[q][alphabet.index(a)]; }
  StateId run(StateId q, std::string_view word) const;
  bool accepts(std::string_view word) const { return final[run(initial, word)]; }

  bool operator==(const Dfa&) const = default;
};

/// Position (Glushkov) automaton; language equals that of `e`.
Nfa regex_to_nfa(const Regex& e, const Alphabet& alphabet);

/// Subset construction followed by partition refinement. The result is
/// minimal, total and canonically numbered (breadth-first from the initial
/// state, letters in alphabet order), so equal languages give equal DFAs
/// up to state names.
Dfa determinize_minimize(const Nfa& n);
Dfa minimize(const Dfa& d);

Nfa to_nfa(const Dfa& d);
/// Drops states that cannot reach a final state (the initial state is kept).
Nfa trim(const Dfa& d);

bool equivalent(const Dfa& x, const Dfa& y);
/// L(x) is a subset of L(y); alphabets must agree.
bool is_subset(const Dfa& x, const Dfa& y);
/// Minimal DFA of L(x) union L(y).
Dfa dfa_union(const Dfa& x, const Dfa& y);
bool is_finite_language(const Dfa& d);

/// Cycle rank of the transition digraph. Throws BudgetExceeded above
/// `max_states` states in one strongly connected component.
std::size_t cycle_rank(const Nfa& n, std::size_t max_states = 24);

/// Line-based DFA format:
///     dfa
///     alphabet: a b
///     states: q0 q1
///     initial: q0
///     final: q1
///     trans: q0 a q1
/// Missing transitions go to an added `_sink` state.
Dfa parse_dfa(std::string_view text);
std::string print_dfa(const Dfa& d);

}  // namespace starheight
