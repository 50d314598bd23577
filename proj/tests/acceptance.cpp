// Acceptance checks 1-8. One PASS/FAIL line each; exit status 1 on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "checks.hpp"
#include "fixtures.hpp"
#include "starheight/errors.hpp"
#include "starheight/height_automaton.hpp"
#include "starheight/limitedness_game.hpp"
#include "starheight/scoring.hpp"
#include "starheight/string_expression.hpp"

using namespace starheight;

namespace {

const Alphabet ab{{'a', 'b'}};

struct Criterion {
  bool ok = true;
  std::ostringstream notes;
  void fail(const std::string& what) {
    if (ok) notes << what;
    ok = false;
  }
};

struct Instance {
  std::string name;
  CostAutomaton a;
  std::string lang;
};

std::vector<Instance> matrix() {
  std::vector<Instance> out;
  std::vector<std::pair<std::string, CostAutomaton>> as{
      {"Ex1", fixtures::ex1()}, {"Ex2", fixtures::ex2()}, {"Ex3", fixtures::ex3()}};
  for (const auto& [n, a] : as)
    for (const char* l : {"a*", "(ab)*", "(a+b)*", "b*"}) out.push_back({n + " over " + l, a, l});
  return out;
}

std::vector<std::pair<Instance, LimitednessAnswer>>& answers() {
  static std::vector<std::pair<Instance, LimitednessAnswer>> cache = [] {
    std::vector<std::pair<Instance, LimitednessAnswer>> out;
    for (auto& inst : matrix()) {
      auto ans = solve_limitedness(inst.a, fixtures::lang(inst.lang).dfa);
      out.emplace_back(inst, ans);
    }
    return out;
  }();
  return cache;
}

void c1(Criterion& c) {
  struct Case {
    const char* regex;
    std::size_t expected;
  };
  for (Case k : {Case{"ab+ba", 0}, Case{"eps", 0}, Case{"(a*b*)*", 1}, Case{"a*", 1}}) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = star_height(fixtures::lang(k.regex));
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.notes << k.regex << "=" << r.star_height << " (" << std::fixed << std::setprecision(2) << secs << "s) ";
    if (r.star_height != k.expected) c.fail(std::string("wrong height for ") + k.regex + "; ");
    if (secs > 60) c.fail(std::string("too slow: ") + k.regex + "; ");
  }
}

void c2(Criterion& c) {
  std::size_t compared = 0;
  for (const char* regex : {"(a+b)*", "ab+ba", "a*"}) {
    Language l = fixtures::lang(regex);
    for (std::size_t h : {0u, 1u}) {
      CostAutomaton n = build_height_automaton(l, h);
      for (const auto& w : words_up_to(ab, 6)) {
        ++compared;
        Cost got = evaluate(n, w);
        Cost want = minimal_degree_oracle(l.monoid, l.monoid.accepting_set(), h, w);
        if (got != want) c.fail(std::string(regex) + " h=" + std::to_string(h) + " w=" + w + "; ");
      }
    }
  }
  c.notes << compared << " comparisons ";
}

void c3(Criterion& c) {
  for (auto& [inst, ans] : answers()) {
    Dfa l = fixtures::lang(inst.lang).dfa;
    c.notes << inst.name << ": " << to_string(ans.verdict);
    if (ans.verdict == Verdict::Limited) {
      auto bound = extracted_bound(ans, inst.a);
      c.notes << " (bound " << bound << "); ";
      for (const auto& v : value_profile(inst.a, l, 12))
        if (v && *v > Cost(bound)) c.fail(inst.name + " exceeds its bound; ");
    } else {
      c.notes << "; ";
      try {
        Lasso lasso = pump_witness(ans, inst.a, l);
        if (lasso.values.size() != 6) c.fail(inst.name + " lasso too short; ");
        for (std::size_t i = 1; i < lasso.values.size(); ++i)
          if (!(lasso.values[i - 1] < lasso.values[i])) c.fail(inst.name + " lasso not growing; ");
        for (std::size_t n = 1; n <= 6; ++n) {
          Word w = lasso.prefix;
          for (std::size_t i = 0; i < n; ++i) w += lasso.loop;
          if (!l.accepts(w)) c.fail(inst.name + " lasso leaves L; ");
        }
      } catch (const BudgetExceeded&) {
        c.fail(inst.name + " no lasso found; ");
      }
    }
  }
}

void c4(Criterion& c) {
  std::size_t words = 0;
  for (auto& [inst, ans] : answers()) {
    if (ans.verdict != Verdict::Limited) continue;
    Dfa l = fixtures::lang(inst.lang).dfa;
    auto bound = extracted_bound(ans, inst.a);
    for (const auto& w : words_up_to(ab, 10))
      if (l.accepts(w)) {
        ++words;
        auto r = simulate_strategy_b(*ans.strategy_b, inst.a, l, w, bound);
        if (!r.ok) c.fail(inst.name + " on '" + w + "': " + r.message + "; ");
      }
  }
  c.notes << words << " plays ";
}

void c5(Criterion& c) {
  // (m, n) picks the fixtures with n+1 counters
  struct Case {
    std::uint64_t m;
    std::size_t n;
  };
  std::vector<CostAutomaton> fixtures_all{fixtures::ex1(), fixtures::ex2(), fixtures::ex3(), fixtures::mixed()};
  std::size_t pairs = 0;
  for (Case k : {Case{1, 0}, Case{2, 1}, Case{3, 1}})
    for (const auto& a : fixtures_all) {
      if (a.num_counters != k.n + 1) continue;
      auto rep = checks::score_properties(a, k.m, 6);
      pairs += rep.checked_pairs;
      if (!rep.ok()) c.fail("property failure at m=" + std::to_string(k.m) + "; ");
    }
  c.notes << pairs << " monotonicity pairs; ";
  for (std::uint64_t m : {1u, 2u, 3u}) {
    Score s = Score::zero(m, 1);
    for (std::uint64_t i = 0; i < m; ++i) s = score_extend(s, CounterAction::inc(0));
    if (!(s.is_finite() && s.value() == m)) c.fail("carry example: m increments; ");
    Score t = score_extend(Score::zero(m, 1), CounterAction::inc(1));
    if (!(t.is_finite() && t.value() == m + 1)) c.fail("carry example: inc(1); ");
    if (!(score_extend(s, CounterAction::inc(0)) == t)) c.fail("carry example: overflow; ");
  }
}

void c6(Criterion& c) {
  std::size_t words = 0, tie_words = 0;
  std::vector<CostAutomaton> all{fixtures::ex1(), fixtures::ex2(), fixtures::ex3(), fixtures::mixed()};
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::uint64_t m : {1u, 2u, 3u}) {
      const auto& a = all[i];
      const bool exact = i < 3;
      auto strat = optimal_run_strategy(a, m);
      for (std::size_t len = 1; len <= 6; ++len)
        for (const auto& w : words_of_length(ab, len)) {
          ++words;
          const std::string where = "fixture " + std::to_string(i) + " m=" + std::to_string(m) + " w=" + w + "; ";
          auto played = checks::runs_in(a, strat.play(w));
          auto optimal = checks::optimal_runs(a, w, m);
          if (exact && played != optimal) c.fail(where);
          if (!std::includes(optimal.begin(), optimal.end(), played.begin(), played.end()) ||
              checks::ends(played) != checks::ends(optimal))
            c.fail(where);
          if (!exact && played != optimal) ++tie_words;

          // accepting part against the accepting-run enumeration
          std::map<StateId, Score> best;
          auto acc = enumerate_accepting_runs(a, w);
          for (const auto& r : acc) {
            Score s = score_run(a, r.run, m);
            if (s.is_infinite()) continue;
            auto it = best.find(r.end);
            if (it == best.end()) best.emplace(r.end, s);
            else if (s < it->second) it->second = s;
          }
          std::set<std::pair<Run, StateId>> acc_played, acc_opt;
          for (const auto& p : played)
            if (a.is_final(p.second)) acc_played.insert(p);
          for (const auto& r : acc)
            if (best.count(r.end) && score_run(a, r.run, m) == best.at(r.end)) acc_opt.insert({r.run, r.end});
          if (exact && acc_played != acc_opt) c.fail("accepting " + where);
        }
    }
  c.notes << words << " words; exact on Ex1-Ex3; mixed fixture: inclusion only, " << tie_words
          << " words with tied non-optimal prefixes";
}

void c7(Criterion& c) {
  std::mt19937 rng(2024);
  std::size_t lassos = 0;
  for (auto& [inst, ans] : answers()) {
    GameSpec g = build_limitedness_game(inst.a, fixtures::lang(inst.lang).dfa);
    auto nba = complement_condition_nba(g);
    auto dpa = determinize_to_parity(nba);
    auto random_letter = [&] {
      PlayLetter p;
      p.letter = ab[rng() % 2];
      // mostly letters from T_a, sometimes any transition
      bool any = rng() % 8 == 0;
      for (std::size_t t = 0; t < inst.a.transitions.size(); ++t)
        if ((any || inst.a.transitions[t].letter == p.letter) && rng() % 2) p.delta.push_back(t);
      return p;
    };
    for (int k = 0; k < 200; ++k) {
      std::vector<PlayLetter> u(rng() % 5), v(1 + rng() % 4);
      for (auto& x : u) x = random_letter();
      for (auto& x : v) x = random_letter();
      ++lassos;
      if (nba_accepts_lasso(nba, u, v) != dpa_accepts_lasso(*dpa, u, v)) c.fail(inst.name + " NBA/DPA disagree; ");
    }
    bool one_winner = (ans.strategy_b.has_value() != (ans.strategy_a != nullptr || ans.empty_word_unlimited)) &&
                      ans.strategy_b.has_value() == (ans.verdict == Verdict::Limited);
    if (!one_winner) c.fail(inst.name + " winner not unique; ");
  }
  c.notes << lassos << " lassos ";
}

void c8(Criterion& c) {
  Cost v1 = evaluate(fixtures::ex1(), "aabaaa");
  Cost v3 = evaluate(fixtures::ex3(), "aabaaaaa");
  c.notes << "Ex1(aabaaa)=" << v1 << " Ex3(aabaaaaa)=" << v3 << " ";
  if (v1 != Cost(3)) c.fail("Ex1; ");
  if (v3 != Cost(2)) c.fail("Ex3; ");
  std::size_t words = 0, below_sqrt = 0;
  for (std::size_t n = 0; n <= 16; ++n) {
    std::uint64_t longest = 0;
    for (const auto& w : words_of_length(ab, n)) {
      ++words;
      Cost v = evaluate(fixtures::ex2(), w);
      if (v.is_infinite() || v.value() > n) {
        c.fail("Ex2 on " + w + "; ");
        continue;
      }
      // n <= v(v+2) since k b's force v >= k and each a-block is at most v
      if ((v.value() + 1) * (v.value() + 1) < n + 1) c.fail("Ex2 lower bound on " + w + "; ");
      if (static_cast<double>(v.value()) < std::sqrt(static_cast<double>(n))) ++below_sqrt;
      longest = std::max(longest, v.value());
    }
    if (static_cast<double>(longest) < std::sqrt(static_cast<double>(n))) c.fail("Ex2 profile; ");
  }
  c.notes << "Ex2 checked on " << words << " words (sqrt(n+1)-1 <= value <= n; " << below_sqrt
          << " words below sqrt(n))";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
      {"star height end-to-end", c1},     {"reduction vs oracle", c2},   {"limitedness verdicts", c3},
      {"strategy validity", c4},          {"scoring properties", c5},    {"optimal runs", c6},
      {"omega backend", c7},              {"semantics spot checks", c8}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << c.notes.str()
              << std::endl;
    if (!c.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
