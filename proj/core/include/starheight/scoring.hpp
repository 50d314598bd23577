#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "starheight/cost_automaton.hpp"
#include "starheight/strategy.hpp"

namespace starheight {

/// Base-(m+1) digit vector a_0..a_n, or infinity. Digit i holds the
/// increments of counter i since its last reset while the run stays within m.
class Score {
 public:
  static Score zero(std::uint64_t m, std::size_t n);
  static Score infinity(std::uint64_t m, std::size_t n);
  /// Digits a_0..a_n, each at most m.
  static Score from_digits(std::uint64_t m, const std::vector<std::uint64_t>& digits);

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  std::uint64_t base_bound() const { return m_; }
  std::size_t top() const { return digits_.size() - 1; }
  const std::vector<std::uint64_t>& digits() const { return digits_; }
  /// sum a_i (m+1)^i; throws std::logic_error when infinite.
  std::uint64_t value() const;
  std::string to_string() const;

  /// Numeric order; infinity is above every finite score and equal to itself.
  std::strong_ordering operator<=>(const Score& other) const;
  bool operator==(const Score& other) const;

  friend Score score_extend(const Score& s, const CounterAction& action);

 private:
  Score(std::uint64_t m, std::size_t n, bool infinite) : m_(m), digits_(n + 1, 0), infinite_(infinite) {}
  std::uint64_t m_;
  std::vector<std::uint64_t> digits_;
  bool infinite_;
};

/// Reset of k clears digits 0..k; increment of k clears digits 0..k-1 and
/// adds one at digit k, carrying upwards. A carry out of digit n gives
/// infinity, which absorbs.
Score score_extend(const Score& s, const CounterAction& action);
Score score_extend(const Score& s, const ActionSeq& actions);
/// Left fold from the zero score; n is the automaton's top counter.
Score score_run(const CostAutomaton& a, const Run& run, std::uint64_t m);
/// Same fold on the numeric representation, used to cross-check digits.
Score score_run_numeric(const CostAutomaton& a, const Run& run, std::uint64_t m);

/// (m+1)^(n+1) - 1.
std::uint64_t m_prime(std::uint64_t m, std::size_t n);

/// One counter: the score is the current block length, infinite past m.
Score single_counter_extend(const Score& s, const CounterAction& action);

/// B plays, after a_1...a_i, the transitions that end some optimal run over
/// a_1...a_i, where a run is optimal when its score is finite and minimal among
/// runs over the same word ending in the same state. Memory states pair the map from
/// each state to its minimal finite score with the last output. BudgetExceeded past `max_memory` states.
FiniteMemoryStrategy optimal_run_strategy(const CostAutomaton& a, std::uint64_t m,
                                          std::size_t max_memory = 200'000);

}  // namespace starheight
