#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "starheight/cost_automaton.hpp"
#include "starheight/language.hpp"
#include "starheight/limitedness_game.hpp"
#include "starheight/monoid.hpp"

namespace starheight {

struct HeightAutomatonBudget {
  std::size_t max_monoid = 12;        // subsets of M are enumerated
  std::size_t max_states = 200'000;   // per constructed automaton
};

/// Cost automaton whose value on w is the least degree m with w in [N]^m_h,
/// infinity when there is none. Counters: 0 at height 0; at each height k >= 1
/// a short-factor counter 2k-1 and a block counter 2k, so 2h+1 in total.
/// States are named after their construction data and trimmed.
CostAutomaton build_height_automaton(const MonoidPresentation& monoid, ElementSet subset, std::size_t height,
                                     const HeightAutomatonBudget& budget = {});
/// Same with N = alpha(L).
CostAutomaton build_height_automaton(const Language& language, std::size_t height,
                                     const HeightAutomatonBudget& budget = {});

struct StarHeightLevel {
  std::size_t height = 0;
  bool limited = false;
  std::size_t automaton_states = 0;
  std::size_t automaton_transitions = 0;
  std::size_t counters = 0;
  std::size_t arena_vertices = 0;
  std::optional<std::size_t> bound;
};

struct StarHeightResult {
  std::size_t star_height = 0;
  std::size_t cycle_rank_cap = 0;
  std::vector<StarHeightLevel> levels;
  /// Height automaton and solver answer at the final level.
  CostAutomaton automaton;
  LimitednessAnswer answer;
};

bool is_star_height_at_most(const Language& language, std::size_t height, const HeightAutomatonBudget& budget = {},
                            const GameBudget& game_budget = {});

/// Least h whose height automaton is limited over L. Heights above the cycle
/// rank of the trimmed minimal DFA are never tried; reaching that cap throws
/// InternalError.
StarHeightResult star_height(const Language& language, const HeightAutomatonBudget& budget = {},
                             const GameBudget& game_budget = {});

}  // namespace starheight
