#include "doctest.h"
#include "fixtures.hpp"
#include "starheight/automata.hpp"
#include "starheight/errors.hpp"
#include "starheight/height_automaton.hpp"
#include "starheight/string_expression.hpp"

using namespace starheight;

namespace {

const Alphabet ab{{'a', 'b'}};

std::shared_ptr<const StringExpression> finite(std::vector<Word> words, std::size_t degree) {
  auto e = std::make_shared<StringExpression>();
  e->height = 0;
  e->degree = degree;
  e->words = std::move(words);
  return e;
}

}  // namespace

TEST_CASE("string expression semantics") {
  StringExpression e = *finite({"ab"}, 2);
  CHECK(string_expression_contains(e, "ab"));
  CHECK_FALSE(string_expression_contains(e, "a"));

  StringExpression all;
  all.height = 1;
  all.degree = 1;
  all.blocks.push_back({{"", finite({"a", "b"}, 1)}});
  CHECK(all.well_formed());
  for (const auto& w : words_up_to(ab, 6)) CHECK(string_expression_contains(all, w));

  for (const auto& words : {std::vector<Word>{"ab", "b"}, std::vector<Word>{"", "aa"}}) {
    StringExpression s = *finite(words, 2);
    CHECK_FALSE(string_expression_contains(s, "aaa"));
  }
  StringExpression too_long = *finite({"aaa"}, 2);
  CHECK_FALSE(too_long.well_formed());

  StringExpression blocks;
  blocks.height = 1;
  blocks.degree = 2;
  blocks.blocks.push_back({{"a", finite({"b"}, 2)}, {"b", finite({"aa"}, 2)}});
  Dfa d = determinize_minimize(regex_to_nfa(to_regex(blocks), ab));
  for (const auto& w : words_up_to(ab, 7)) CHECK(string_expression_contains(blocks, w) == d.accepts(w));
  CHECK(string_expression_contains(blocks, "abbbaaaa"));
}

TEST_CASE("subset language oracle examples") {
  Language finite_lang = fixtures::lang("ab+ba");
  const auto& m = finite_lang.monoid;
  CHECK(subset_language_member_oracle(m, {singleton(m.image("ab")), 0, 2}, "ab"));
  CHECK_FALSE(subset_language_member_oracle(m, {singleton(m.image("ab")), 0, 1}, "ab"));
  Language all = fixtures::lang("(a+b)*");
  for (const auto& w : words_up_to(ab, 6))
    CHECK(subset_language_member_oracle(all.monoid, {all.monoid.all(), 1, 1}, w));
  CHECK_FALSE(subset_language_member_oracle(all.monoid, {all.monoid.all(), 0, 1}, "aa"));
  CHECK_THROWS_AS(subset_language_member_oracle(all.monoid, {1, 3, 1}, "a"), BudgetExceeded);
}

TEST_CASE("height automaton at height 0 counts the length") {
  for (const char* text : {"ab+ba", "a*", "(ab)*"}) {
    Language l = fixtures::lang(text);
    CostAutomaton a = build_height_automaton(l, 0);
    CHECK(a.num_counters == 1);
    for (const auto& w : words_up_to(ab, 6))
      CHECK(evaluate(a, w) == (l.contains(w) ? Cost(w.size()) : Cost::infinity()));
  }
  CostAutomaton a = build_height_automaton(fixtures::lang("ab+ba"), 0);
  CHECK(evaluate(a, "ab") == Cost(2));
  CHECK(evaluate(a, "aa").is_infinite());
}

TEST_CASE("height automaton for all words at height 1") {
  CostAutomaton a = build_height_automaton(fixtures::lang("(a+b)*"), 1);
  CHECK(a.num_counters == 3);
  CHECK(validate(a).empty());
  for (const auto& w : words_up_to(ab, 6)) CHECK(evaluate(a, w) == Cost(w.empty() ? 0 : 1));
}

TEST_CASE("height automaton matches the oracle and stays below the length") {
  for (const char* text : {"(a+b)*", "ab+ba", "a*", "b*"}) {
    Language l = fixtures::lang(text);
    for (std::size_t h : {0, 1}) {
      CostAutomaton a = build_height_automaton(l, h);
      for (const auto& w : words_up_to(ab, 5)) {
        Cost got = evaluate(a, w);
        CHECK_MESSAGE(got == minimal_degree_oracle(l.monoid, l.monoid.accepting_set(), h, w), text, " h=", h, " w=", w);
        if (l.contains(w)) CHECK(got <= Cost(w.size()));
      }
    }
  }
}

TEST_CASE("height automaton file round trip") {
  CostAutomaton a = build_height_automaton(fixtures::lang("a*"), 1);
  CHECK(parse_cost_automaton(print_cost_automaton(a)) == a);
}

TEST_CASE("height automaton budget") {
  HeightAutomatonBudget tiny;
  tiny.max_monoid = 2;
  CHECK_THROWS_AS(build_height_automaton(fixtures::lang("ab+ba"), 1, tiny), BudgetExceeded);
}

TEST_CASE("string expression reconstruction") {
  auto all = string_expression_reconstruct(fixtures::lang("(a+b)*"), 1, 1);
  REQUIRE(all.has_value());
  CHECK(all->height == 1);
  CHECK(all->blocks.size() <= 2);
  CHECK(equivalent(determinize_minimize(regex_to_nfa(to_regex(*all), ab)), fixtures::lang("(a+b)*").dfa));
  auto single = string_expression_reconstruct(fixtures::lang("ab"), 0, 2);
  REQUIRE(single.has_value());
  CHECK(single->words == std::vector<Word>{"ab"});
  CHECK_FALSE(string_expression_reconstruct(fixtures::lang("(a+b)*"), 0, 2).has_value());
  CHECK_THROWS_AS(string_expression_reconstruct(fixtures::lang("(a+b)*"), 2, 1), BudgetExceeded);
}

TEST_CASE("star height decisions") {
  CHECK(is_star_height_at_most(fixtures::lang("(a*b*)*"), 1));
  CHECK_FALSE(is_star_height_at_most(fixtures::lang("(a+b)*"), 0));
  CHECK(is_star_height_at_most(fixtures::lang("ab+ba"), 0));
  CHECK(is_star_height_at_most(fixtures::lang("ab+ba"), 1));
}

TEST_CASE("star height") {
  struct Case {
    const char* regex;
    std::size_t height;
  };
  for (auto c : {Case{"ab+ba", 0}, Case{"eps", 0}, Case{"(a*b*)*", 1}, Case{"a*", 1}, Case{"b*", 1}}) {
    Language l = fixtures::lang(c.regex);
    StarHeightResult r = star_height(l);
    CHECK_MESSAGE(r.star_height == c.height, c.regex);
    CHECK(r.star_height <= r.cycle_rank_cap);
    CHECK(r.levels.back().limited);
    for (std::size_t i = 0; i + 1 < r.levels.size(); ++i) CHECK_FALSE(r.levels[i].limited);
  }
}
