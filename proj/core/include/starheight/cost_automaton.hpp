#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "starheight/automata.hpp"
#include "starheight/types.hpp"

namespace starheight {

using Counter = std::uint32_t;

/// One primitive counter operation. Acting on counter c also resets every
/// counter below c; that cascade lives in the semantics, not in the data.
struct CounterAction {
  enum class Kind { None, Increment, Reset };
  Kind kind = Kind::None;
  Counter counter = 0;

  static CounterAction none() { return {}; }
  static CounterAction inc(Counter c) { return {Kind::Increment, c}; }
  static CounterAction reset(Counter c) { return {Kind::Reset, c}; }

  std::string to_string() const;
  auto operator<=>(const CounterAction&) const = default;
};

/// Operations performed by one transition, left to right. Almost always a
/// single action; the height automata need short sequences such as
/// `inc(2),inc(1)`. Empty means no counter operation.
using ActionSeq = std::vector<CounterAction>;

std::string to_string(const ActionSeq& actions);
/// Does some operation reset `c` (directly or via a higher counter)?
bool resets(const ActionSeq& actions, Counter c);
/// Does some operation increment `c`?
bool increments(const ActionSeq& actions, Counter c);

struct Transition {
  StateId source = 0;
  Symbol letter = 0;
  StateId target = 0;
  ActionSeq actions;

  auto operator<=>(const Transition&) const = default;
};

/// Nondeterministic automaton with counters 0..num_counters-1, totally
/// ordered by index (higher = more important).
struct CostAutomaton {
  Alphabet alphabet;
  std::size_t num_counters = 1;
  std::vector<std::string> state_names;
  std::vector<Transition> transitions;
  std::vector<StateId> initial;
  std::vector<StateId> final;

  std::size_t num_states() const { return state_names.size(); }
  bool is_final(StateId q) const;
  bool is_initial(StateId q) const;

  bool operator==(const CostAutomaton&) const = default;
};

/// Transition ids grouped by source state and letter.
class OutgoingIndex {
 public:
  explicit OutgoingIndex(const CostAutomaton& a);
  const std::vector<std::size_t>& from(StateId q, Symbol letter) const {
    return table_[q][alphabet_.index(letter)];
  }

 private:
  Alphabet alphabet_;
  std::vector<std::vector<std::vector<std::size_t>>> table_;
};

/// A run is a sequence of transition ids.
using Run = std::vector<std::size_t>;
using CounterValuation = std::vector<std::uint64_t>;

/// Structural problems, one message per problem; empty means valid.
std::vector<std::string> validate(const CostAutomaton& a);
/// Throws std::invalid_argument with the first validation message.
void require_valid(const CostAutomaton& a);

/// Applies `actions` to `valuation`, returning the largest counter value
/// produced by an increment along the way (0 if none).
std::uint64_t apply(const ActionSeq& actions, CounterValuation& valuation);

/// Smallest m such that no counter sees more than m increments that are not
/// separated by a reset. Throws std::invalid_argument for broken runs.
std::uint64_t run_value(const CostAutomaton& a, const Run& run);
bool is_run(const CostAutomaton& a, const Run& run);
Word run_word(const CostAutomaton& a, const Run& run);

/// Is there an accepting run over `word` of value at most `bound`?
bool has_run_within(const CostAutomaton& a, std::string_view word, std::uint64_t bound);

/// Minimal value of an accepting run over `word`, or infinity.
Cost evaluate(const CostAutomaton& a, std::string_view word);

struct RunWithValue {
  Run run;
  StateId end = 0;  // distinguishes the empty runs of several initial states
  std::uint64_t value = 0;
};

/// Every run over `word` starting in an initial state (accepting or not),
/// each exactly once. Throws BudgetExceeded past `max_runs` runs.
std::vector<RunWithValue> enumerate_runs(const CostAutomaton& a, std::string_view word,
                                         std::size_t max_runs = 1'000'000);
std::vector<RunWithValue> enumerate_accepting_runs(const CostAutomaton& a, std::string_view word,
                                                   std::size_t max_runs = 1'000'000);

/// profile[n] = max of evaluate(a, w) over words w in `language` with |w| = n,
/// or nullopt when the language has no word of that length.
std::vector<std::optional<Cost>> value_profile(const CostAutomaton& a, const Dfa& language,
                                               std::size_t max_length);

/// Removes states that are unreachable or cannot reach a final state, and
/// transitions dominated by a parallel transition whose counter effect is
/// never worse. The function computed by the automaton is unchanged.
/// `original_ids[i]` is the id in `a` of transition i of the result.
struct PrunedAutomaton {
  CostAutomaton automaton;
  std::vector<std::size_t> original_ids;
  std::vector<StateId> original_states;
};
PrunedAutomaton prune(const CostAutomaton& a);

/// Line-based format:
///     costautomaton
///     alphabet: a b
///     counters: 1
///     states: q
///     initial: q
///     final: q
///     trans: q a q inc(0)
///     trans: q b q reset(0)
/// Actions are `none`, `inc(c)`, `reset(c)` or a comma-joined sequence.
CostAutomaton parse_cost_automaton(std::string_view text);
std::string print_cost_automaton(const CostAutomaton& a);

}  // namespace starheight
