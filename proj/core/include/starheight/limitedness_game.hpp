#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "starheight/automata.hpp"
#include "starheight/cost_automaton.hpp"
#include "starheight/omega.hpp"
#include "starheight/parity_game.hpp"
#include "starheight/strategy.hpp"

namespace starheight {

/// One round of the game: A's input letter and B's set of transition ids.
struct PlayLetter {
  Symbol letter = 0;
  std::vector<std::size_t> delta;  // sorted

  auto operator<=>(const PlayLetter&) const = default;
};

/// The limitedness game with bound infinity.
struct GameSpec {
  CostAutomaton automaton;
  Dfa language;

  /// Ids of the transitions reading `a`; B's letters for `a` are its subsets.
  std::vector<std::size_t> transitions_reading(Symbol a) const;
  /// 2^k for k transitions reading `a`.
  std::size_t num_b_letters(Symbol a) const;
};

/// Throws AlphabetMismatch when the alphabets differ.
GameSpec build_limitedness_game(const CostAutomaton& a, const Dfa& language);

/// NBA over play letters accepting exactly the plays lost by B: some delta_i
/// holds a transition not reading a_i, or some prefix in L has no accepting
/// run in delta_1...delta_i, or some infinite run increments a counter
/// infinitely often and resets it finitely often. States are (L-state,
/// reachable set, guessed-run state) plus a violation sink, created on demand.
BuchiAutomaton<PlayLetter> complement_condition_nba(const GameSpec& g);

/// The part of the NBA above that guesses the bad infinite run, over delta
/// alone. States: pre(q) = q, and commit(c, q, seen) = |Q| + 2(c|Q| + q) + seen.
BuchiAutomaton<std::vector<std::size_t>> bad_run_nba(const CostAutomaton& a);

template <class Letter>
std::unique_ptr<SafraDeterminizer<Letter>> determinize_to_parity(BuchiAutomaton<Letter> nba,
                                                                 std::size_t max_states = 200'000) {
  return std::make_unique<SafraDeterminizer<Letter>>(std::move(nba), max_states);
}

struct GameBudget {
  std::size_t max_arena_vertices = 400'000;
  std::size_t max_transitions_per_letter = 16;  // B has 2^k letters
  std::size_t max_parity_states = 200'000;
};

enum class Verdict { Limited, Unlimited };
std::string to_string(Verdict v);

struct GameStats {
  std::size_t pruned_states = 0;
  std::size_t pruned_transitions = 0;
  std::size_t parity_states = 0;
  std::size_t arena_vertices = 0;
  std::size_t arena_edges = 0;
};

class Arena;

/// Player A's winning strategy: memoryless on the arena, which serves as its
/// memory. B's letters are intersected with the transitions B can usefully
/// play before they are looked up.
class AStrategy {
 public:
  explicit AStrategy(std::shared_ptr<const Arena> arena) : arena_(std::move(arena)) {}
  /// Memory state before the first round.
  std::size_t initial() const;
  /// A's next letter, or nullopt when B has already lost (A's goal is met).
  std::optional<Symbol> letter(std::size_t memory) const;
  /// Memory after B answers with `delta` (original transition ids), or
  /// nullopt when that answer loses for B immediately.
  std::optional<std::size_t> respond(std::size_t memory, const std::vector<std::size_t>& delta) const;
  /// The arena in DOT form.
  std::string to_dot() const;

 private:
  std::shared_ptr<const Arena> arena_;
};

struct LimitednessAnswer {
  Verdict verdict = Verdict::Limited;
  std::optional<FiniteMemoryStrategy> strategy_b;
  std::shared_ptr<const AStrategy> strategy_a;
  /// The empty word is in L but has no accepting run; decided without a game.
  bool empty_word_unlimited = false;
  std::size_t automaton_states = 0;
  GameStats stats;
};

/// Decides limitedness of `a` over `language`. Throws AlphabetMismatch or
/// BudgetExceeded.
LimitednessAnswer solve_game(const GameSpec& g, const GameBudget& budget = {});
LimitednessAnswer solve_limitedness(const CostAutomaton& a, const Dfa& language, const GameBudget& budget = {});

/// |Q| times the number of memory states of B's strategy. Throws
/// std::invalid_argument for an unlimited answer.
std::size_t extracted_bound(const LimitednessAnswer& answer, const CostAutomaton& a);

struct SimulationReport {
  bool ok = true;
  int item = 0;               // violated condition: 1, 2 or 3
  std::size_t position = 0;   // round (1-based) of the violation
  std::string message;
};

/// Plays `word` against B's strategy and checks the three conditions with
/// the finite `bound` at every prefix.
SimulationReport simulate_strategy_b(const FiniteMemoryStrategy& s, const CostAutomaton& a, const Dfa& language,
                                     std::string_view word, std::uint64_t bound);

struct Lasso {
  Word prefix;
  Word loop;
  std::vector<Cost> values;  // [[A]](prefix loop^n) for n = 1..probe
};

/// u v^n in L for n = 1..probe with strictly increasing values. Tries the
/// play of A's strategy against B playing everything, then small lassos.
/// Throws std::invalid_argument for a limited answer and BudgetExceeded when
/// nothing is found.
Lasso pump_witness(const LimitednessAnswer& answer, const CostAutomaton& a, const Dfa& language,
                   std::size_t probe = 6);

}  // namespace starheight
