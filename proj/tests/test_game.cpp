#include "doctest.h"
#include "fixtures.hpp"
#include "starheight/errors.hpp"
#include "starheight/limitedness_game.hpp"

using namespace starheight;

namespace {

const Alphabet ab{{'a', 'b'}};

std::vector<std::size_t> reading(const CostAutomaton& a, Symbol x) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.transitions.size(); ++i)
    if (a.transitions[i].letter == x) out.push_back(i);
  return out;
}

FiniteMemoryStrategy constant_strategy(const CostAutomaton& a, bool full) {
  FiniteMemoryStrategy s;
  s.alphabet = a.alphabet;
  s.state_names = {"m0"};
  s.delta = {std::vector<StateId>(a.alphabet.size(), 1)};
  s.output = {{}};
  for (Symbol x : a.alphabet) {
    s.state_names.push_back(std::string("after_") + x);
    s.output.push_back(full ? reading(a, x) : std::vector<std::size_t>{});
  }
  s.delta[0] = {1, 2};
  s.delta.push_back({1, 2});
  s.delta.push_back({1, 2});
  return s;
}

}  // namespace

TEST_CASE("player B letters") {
  GameSpec g1 = build_limitedness_game(fixtures::ex1(), fixtures::lang("(ab)*").dfa);
  CHECK(g1.num_b_letters('a') == 2);
  GameSpec g3 = build_limitedness_game(fixtures::ex3(), fixtures::lang("(ab)*").dfa);
  CHECK(g3.num_b_letters('a') == std::size_t{1} << reading(fixtures::ex3(), 'a').size());
  CHECK(g3.num_b_letters('b') == 16);
  Language abc = language_from_regex_text("alphabet: a b c\na*\n");
  CHECK_THROWS_AS(build_limitedness_game(fixtures::ex1(), abc.dfa), AlphabetMismatch);
}

TEST_CASE("complement NBA examples") {
  GameSpec g = build_limitedness_game(fixtures::ex1(), fixtures::lang("a*").dfa);
  auto nba = complement_condition_nba(g);
  // item 1: the b-transition offered while reading a
  CHECK(nba_accepts_lasso<PlayLetter>(nba, {{'a', {1}}}, {{'a', {0}}}));
  // a forever with the full set: counter 0 grows without a reset
  CHECK(nba_accepts_lasso<PlayLetter>(nba, {}, {{'a', {0}}}));
  // item 3: a is in L but no run survives
  CHECK(nba_accepts_lasso<PlayLetter>(nba, {}, {{'a', {}}}));

  GameSpec h = build_limitedness_game(fixtures::ex1(), fixtures::lang("(ab)*").dfa);
  auto ok = complement_condition_nba(h);
  CHECK_FALSE(nba_accepts_lasso<PlayLetter>(ok, {}, {{'a', {0}}, {'b', {1}}}));
  // the empty set is fine while no prefix is in L
  GameSpec never = build_limitedness_game(fixtures::ex1(), fixtures::lang("b(a+b)*").dfa);
  CHECK_FALSE(nba_accepts_lasso<PlayLetter>(complement_condition_nba(never), {{'a', {}}}, {{'b', {}}}));
}

TEST_CASE("bad-run NBA size") {
  auto nba = bad_run_nba(fixtures::ex2());
  CHECK(nba.initial == std::vector<StateId>{0});
  // commit(c, q, seen) states sit above the |Q| pre states
  CHECK(nba.accepting(1 + 1));
  CHECK_FALSE(nba.accepting(0));
}

TEST_CASE("solve_game examples") {
  auto limited = solve_limitedness(fixtures::ex1(), fixtures::lang("(ab)*").dfa);
  CHECK(limited.verdict == Verdict::Limited);
  REQUIRE(limited.strategy_b.has_value());
  CHECK(limited.strategy_a == nullptr);
  auto unlimited = solve_limitedness(fixtures::ex1(), fixtures::lang("a*").dfa);
  CHECK(unlimited.verdict == Verdict::Unlimited);
  CHECK(unlimited.strategy_a != nullptr);
  CHECK_FALSE(unlimited.strategy_b.has_value());
  CHECK(solve_limitedness(fixtures::ex2(), fixtures::lang("(a+b)*").dfa).verdict == Verdict::Unlimited);
  // Example 2 is limited exactly on finite languages
  CHECK(solve_limitedness(fixtures::ex2(), fixtures::lang("ab+ba+aab").dfa).verdict == Verdict::Limited);
  CHECK(solve_limitedness(fixtures::ex2(), fixtures::lang("a(ba)*").dfa).verdict == Verdict::Unlimited);
}

TEST_CASE("empty word without an accepting run") {
  auto a = fixtures::ex3();
  a.initial = {0};  // only L, which is not final
  auto ans = solve_limitedness(a, fixtures::lang("b*").dfa);
  CHECK(ans.verdict == Verdict::Unlimited);
  CHECK(ans.empty_word_unlimited);
}

TEST_CASE("extracted bound") {
  LimitednessAnswer ans;
  FiniteMemoryStrategy one;
  one.alphabet = ab;
  one.state_names = {"m0"};
  one.delta = {{0, 0}};
  one.output = {{}};
  ans.strategy_b = one;
  CHECK(extracted_bound(ans, fixtures::ex1()) == 1);
  FiniteMemoryStrategy four = one;
  four.state_names = {"m0", "m1", "m2", "m3"};
  four.delta = {{1, 2}, {3, 3}, {3, 3}, {3, 3}};
  four.output = {{}, {}, {}, {}};
  ans.strategy_b = four;
  CHECK(extracted_bound(ans, fixtures::ex3()) == 12);
  ans.verdict = Verdict::Unlimited;
  CHECK_THROWS_AS(extracted_bound(ans, fixtures::ex1()), std::invalid_argument);
}

TEST_CASE("simulate_strategy_b examples") {
  const Dfa abstar = fixtures::lang("(ab)*").dfa;
  auto ans = solve_limitedness(fixtures::ex1(), abstar);
  std::uint64_t bound = extracted_bound(ans, fixtures::ex1());
  for (const auto& w : words_up_to(ab, 12))
    if (abstar.accepts(w)) CHECK(simulate_strategy_b(*ans.strategy_b, fixtures::ex1(), abstar, w, bound).ok);

  auto none = constant_strategy(fixtures::ex1(), false);
  auto r = simulate_strategy_b(none, fixtures::ex1(), abstar, "ab", 5);
  CHECK_FALSE(r.ok);
  CHECK(r.item == 3);

  auto full = constant_strategy(fixtures::ex1(), true);
  const Dfa astar = fixtures::lang("a*").dfa;
  r = simulate_strategy_b(full, fixtures::ex1(), astar, std::string(4, 'a'), 3);
  CHECK_FALSE(r.ok);
  CHECK(r.item == 2);
  CHECK(r.position == 4);

  auto wrong = constant_strategy(fixtures::ex1(), true);
  wrong.output[1] = {1};
  r = simulate_strategy_b(wrong, fixtures::ex1(), astar, "a", 3);
  CHECK(r.item == 1);
}

TEST_CASE("pump witnesses") {
  const Dfa astar = fixtures::lang("a*").dfa;
  auto ans = solve_limitedness(fixtures::ex1(), astar);
  Lasso l = pump_witness(ans, fixtures::ex1(), astar);
  CHECK(l.loop == "a");
  for (std::size_t i = 1; i < l.values.size(); ++i) CHECK(l.values[i - 1] < l.values[i]);

  const Dfa all = fixtures::lang("(a+b)*").dfa;
  auto ans2 = solve_limitedness(fixtures::ex2(), all);
  Lasso l2 = pump_witness(ans2, fixtures::ex2(), all);
  CHECK(l2.values.size() == 6);
  for (std::size_t i = 1; i < l2.values.size(); ++i) CHECK(l2.values[i - 1] < l2.values[i]);

  auto limited = solve_limitedness(fixtures::ex1(), fixtures::lang("(ab)*").dfa);
  CHECK_THROWS_AS(pump_witness(limited, fixtures::ex1(), fixtures::lang("(ab)*").dfa), std::invalid_argument);
}

TEST_CASE("A's strategy wins against B's obvious answers") {
  const Dfa astar = fixtures::lang("a*").dfa;
  auto ans = solve_limitedness(fixtures::ex1(), astar);
  const AStrategy& sa = *ans.strategy_a;
  auto m = sa.initial();
  REQUIRE(sa.letter(m).has_value());
  CHECK(*sa.letter(m) == 'a');
  // answering with nothing breaks the accepting-run condition at once
  CHECK_FALSE(sa.respond(m, {}).has_value());
  auto next = sa.respond(m, {0});
  REQUIRE(next.has_value());
  CHECK(sa.to_dot().find("digraph arena") == 0);
}

TEST_CASE("arena budget") {
  GameBudget tiny;
  tiny.max_arena_vertices = 5;
  CHECK_THROWS_AS(solve_limitedness(fixtures::ex3(), fixtures::lang("(ab)*").dfa, tiny), BudgetExceeded);
  GameBudget narrow;
  narrow.max_transitions_per_letter = 1;
  CHECK_THROWS_AS(solve_limitedness(fixtures::ex3(), fixtures::lang("(ab)*").dfa, narrow), BudgetExceeded);
}
