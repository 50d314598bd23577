#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "starheight/cost_automaton.hpp"
#include "starheight/errors.hpp"

using namespace starheight;

namespace {

const Alphabet ab{{'a', 'b'}};

// One state, one letter per action, for run_value examples.
CostAutomaton actions_automaton(std::size_t counters, const std::vector<ActionSeq>& actions) {
  CostAutomaton a;
  a.alphabet = Alphabet{{'x'}};
  a.num_counters = counters;
  a.state_names = {"q"};
  a.initial = {0};
  a.final = {0};
  for (const auto& act : actions) a.transitions.push_back({0, 'x', 0, act});
  return a;
}

Cost min_over_runs(const CostAutomaton& a, const std::string& w) {
  Cost best = Cost::infinity();
  for (const auto& r : enumerate_accepting_runs(a, w)) best = std::min(best, Cost(r.value));
  return best;
}

}  // namespace

TEST_CASE("validate") {
  CHECK(validate(fixtures::ex1()).empty());
  CostAutomaton bad = fixtures::ex2();
  bad.transitions.push_back({0, 'a', 0, {CounterAction::inc(5)}});
  CHECK(validate(bad).size() == 1);
  CostAutomaton no_final = fixtures::ex1();
  no_final.final = {3};
  CHECK_FALSE(validate(no_final).empty());
  CHECK_THROWS_AS(require_valid(no_final), std::invalid_argument);
}

TEST_CASE("run_value examples") {
  auto one = actions_automaton(1, {{CounterAction::inc(0)}, {CounterAction::reset(0)}});
  CHECK(run_value(one, {}) == 0);
  CHECK(run_value(one, {0, 0, 1, 0}) == 2);
  auto two = actions_automaton(2, {{CounterAction::inc(0)}, {CounterAction::inc(1)}});
  CHECK(run_value(two, {0, 0, 1, 0}) == 2);
  CHECK_THROWS_AS(run_value(two, {7}), std::invalid_argument);
}

TEST_CASE("run_value does not drop under increments") {
  auto a = actions_automaton(2, {{CounterAction::inc(0)}, {CounterAction::inc(1)}, {CounterAction::reset(0)},
                                 {}, {CounterAction::reset(1)}});
  std::vector<Run> runs{{}};
  for (std::size_t len = 0; len < 5; ++len) {
    std::vector<Run> next;
    for (const auto& r : runs)
      for (std::size_t t = 0; t < a.transitions.size(); ++t) {
        Run e = r;
        e.push_back(t);
        const auto& acts = a.transitions[t].actions;
        bool keeps = acts.empty() || acts[0].kind == CounterAction::Kind::Increment;
        if (keeps) CHECK(run_value(a, e) >= run_value(a, r));
        next.push_back(e);
      }
    runs.swap(next);
  }
}

TEST_CASE("evaluate examples") {
  CHECK(evaluate(fixtures::ex1(), "aabaaa") == Cost(3));
  CHECK(evaluate(fixtures::ex3(), "aabaaaaa") == Cost(2));
  CHECK(evaluate(fixtures::ex1(), "") == Cost(0));
  CostAutomaton dead = fixtures::ex1();
  dead.final.clear();
  CHECK(evaluate(dead, "ab").is_infinite());
  CHECK(evaluate(fixtures::ex3(), "aaa") == Cost(3));
}

TEST_CASE("enumerate_accepting_runs examples") {
  auto runs = enumerate_accepting_runs(fixtures::ex3(), "aba");
  REQUIRE(runs.size() == 2);
  CHECK(runs[0].value == 1);
  CHECK(runs[1].value == 1);
  for (const auto& w : words_up_to(ab, 6)) CHECK(enumerate_accepting_runs(fixtures::ex1(), w).size() == 1);
  CHECK(enumerate_accepting_runs(fixtures::ex3(), "aa").size() == 1);
  CHECK_THROWS_AS(enumerate_runs(fixtures::ex3(), "bbbbbbbbbbbbbbbb", 10), BudgetExceeded);
}

TEST_CASE("evaluate equals the minimum over enumerated runs") {
  for (const auto& a : {fixtures::ex1(), fixtures::ex2(), fixtures::ex3(), fixtures::mixed()})
    for (const auto& w : words_up_to(ab, 8)) CHECK(evaluate(a, w) == min_over_runs(a, w));
}

TEST_CASE("value_profile examples") {
  auto p = value_profile(fixtures::ex1(), fixtures::lang("a*").dfa, 8);
  for (std::size_t n = 0; n <= 8; ++n) CHECK(*p[n] == Cost(n));
  auto q = value_profile(fixtures::ex1(), fixtures::lang("(ab)*").dfa, 8);
  for (std::size_t n = 0; n <= 8; ++n) {
    if (n % 2) CHECK_FALSE(q[n].has_value());
    else CHECK(*q[n] <= Cost(1));
  }
  auto r = value_profile(fixtures::ex2(), fixtures::lang("(a+b)*").dfa, 10);
  for (std::size_t n = 0; n <= 10; ++n)
    CHECK(*r[n] >= Cost(static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))))));
}

TEST_CASE("Example 2 lies between the square root and the length") {
  auto a = fixtures::ex2();
  for (std::size_t n = 0; n <= 12; ++n)
    for (const auto& w : words_of_length(ab, n)) {
      Cost c = evaluate(a, w);
      REQUIRE(c.is_finite());
      // k b's give value >= k and a-blocks of at most value each: n <= v(v+2)
      CHECK((c.value() + 1) * (c.value() + 1) >= n + 1);
      CHECK(c.value() <= n);
    }
  // the plain square root bound is only asymptotic
  CHECK(evaluate(a, "ab") == Cost(1));
  CHECK(evaluate(a, "aabaab") == Cost(2));
}

TEST_CASE("file format round trip") {
  for (const char* name : {"ex1", "ex2", "ex3", "mixed"}) {
    auto a = fixtures::automaton(name);
    auto text = print_cost_automaton(a);
    CHECK(parse_cost_automaton(text) == a);
    CHECK(print_cost_automaton(parse_cost_automaton(text)) == text);
  }
  auto seq = parse_cost_automaton(
      "costautomaton\nalphabet: a\ncounters: 3\nstates: p\ninitial: p\nfinal: p\ntrans: p a p inc(2),inc(1)\n");
  CHECK(seq.transitions[0].actions == ActionSeq{CounterAction::inc(2), CounterAction::inc(1)});
  CHECK(parse_cost_automaton(print_cost_automaton(seq)) == seq);
  CHECK_THROWS_AS(parse_cost_automaton(""), ParseError);
  CHECK_THROWS_AS(parse_cost_automaton("costautomaton\nalphabet: a\ncounters: 1\nstates: p\ninitial: p\nfinal: p\n"
                                       "trans: p a p inc(3)\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_cost_automaton("costautomaton\nalphabet: a\ncounters: 1\nstates: p\ninitial: q\n"), ParseError);
}

TEST_CASE("prune keeps the function") {
  for (const auto& a : {fixtures::ex1(), fixtures::ex2(), fixtures::ex3(), fixtures::mixed()}) {
    auto p = prune(a);
    for (std::size_t i = 0; i < p.automaton.transitions.size(); ++i) {
      const auto& t = p.automaton.transitions[i];
      const auto& o = a.transitions[p.original_ids[i]];
      CHECK(t.letter == o.letter);
      CHECK(t.actions == o.actions);
      CHECK(p.original_states[t.source] == o.source);
    }
    for (const auto& w : words_up_to(ab, 7)) CHECK(evaluate(p.automaton, w) == evaluate(a, w));
  }
}

TEST_CASE("counter effects") {
  ActionSeq seq{CounterAction::inc(2), CounterAction::inc(1)};
  CHECK(resets(seq, 0));
  CHECK(resets(seq, 1));
  CHECK_FALSE(resets(seq, 2));
  CHECK(increments(seq, 1));
  CHECK(increments(seq, 2));
  CHECK_FALSE(increments(seq, 0));
  CounterValuation v{4, 0, 0};
  CHECK(starheight::apply(seq, v) == 1);
  CHECK(v == CounterValuation{0, 1, 1});
  CHECK(to_string(seq) == "inc(2),inc(1)");
  CHECK(to_string(ActionSeq{}) == "none");
}
