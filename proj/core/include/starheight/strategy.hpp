#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "starheight/types.hpp"

namespace starheight {

/// Deterministic memory automaton over player A's letters with an output per
/// memory state: the set of transition ids player B plays after the input
/// read so far. The output of the initial state is never played.
struct FiniteMemoryStrategy {
  Alphabet alphabet;
  std::vector<std::string> state_names;
  StateId initial = 0;
  std::vector<std::vector<StateId>> delta;          // [state][letter index]
  std::vector<std::vector<std::size_t>> output;     // sorted transition ids

  std::size_t num_states() const { return state_names.size(); }
  StateId step(StateId m, Symbol a) const { return delta[m][alphabet.index(a)]; }
  StateId run(std::string_view word) const;
  /// delta_1 ... delta_n chosen along `word`.
  std::vector<std::vector<std::size_t>> play(std::string_view word) const;

  bool operator==(const FiniteMemoryStrategy&) const = default;
};

/// Merges memory states with equal outputs and equivalent futures, keeping
/// only reachable ones. States are renamed m0, m1, ... in BFS order.
FiniteMemoryStrategy minimize(const FiniteMemoryStrategy& s);

/// Line-based format:
///     strategy
///     alphabet: a b
///     states: m0 m1
///     initial: m0
///     trans: m0 a m1
///     out: m1 -> {0,2}
/// Transitions must be total; missing `out` lines mean the empty set.
FiniteMemoryStrategy parse_strategy(std::string_view text);
std::string print_strategy(const FiniteMemoryStrategy& s);

}  // namespace starheight
