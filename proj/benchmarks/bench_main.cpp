#include <benchmark/benchmark.h>

#include "starheight/cost_automaton.hpp"
#include "starheight/height_automaton.hpp"
#include "starheight/language.hpp"
#include "starheight/limitedness_game.hpp"
#include "starheight/scoring.hpp"

using namespace starheight;

namespace {

Language lang(const char* regex) { return language_from_regex_text(std::string("alphabet: a b\n") + regex + "\n"); }

CostAutomaton ex3() {
  return parse_cost_automaton(
      "costautomaton\nalphabet: a b\ncounters: 1\nstates: L M R\ninitial: L M\nfinal: M R\n"
      "trans: L a L none\ntrans: L b L none\ntrans: L b M none\ntrans: M a M inc(0)\n"
      "trans: M b R none\ntrans: R a R none\ntrans: R b R none\n");
}

void BM_Evaluate(benchmark::State& state) {
  auto a = ex3();
  std::string w;
  for (int i = 0; i < state.range(0); ++i) w += (i % 5 == 4) ? 'b' : 'a';
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(a, w));
}
BENCHMARK(BM_Evaluate)->Arg(64)->Arg(1024)->Arg(16384);

void BM_Determinize(benchmark::State& state) {
  auto a = ex3();
  GameSpec g = build_limitedness_game(a, lang("(ab)*").dfa);
  std::vector<PlayLetter> letters;
  for (Symbol x : a.alphabet) {
    auto ts = g.transitions_reading(x);
    for (std::size_t mask = 0; mask < (std::size_t{1} << ts.size()); ++mask) {
      PlayLetter p{x, {}};
      for (std::size_t i = 0; i < ts.size(); ++i)
        if (mask >> i & 1) p.delta.push_back(ts[i]);
      letters.push_back(p);
    }
  }
  for (auto _ : state) {
    auto d = determinize_to_parity(complement_condition_nba(g));
    benchmark::DoNotOptimize(explore(*d, letters));
  }
}
BENCHMARK(BM_Determinize)->Unit(benchmark::kMillisecond);

void BM_Limitedness(benchmark::State& state) {
  auto a = ex3();
  Dfa l = lang("(ab)*").dfa;
  for (auto _ : state) benchmark::DoNotOptimize(solve_limitedness(a, l).verdict);
}
BENCHMARK(BM_Limitedness)->Unit(benchmark::kMillisecond);

void BM_OptimalRunStrategy(benchmark::State& state) {
  auto a = ex3();
  for (auto _ : state) benchmark::DoNotOptimize(optimal_run_strategy(a, state.range(0)).num_states());
}
BENCHMARK(BM_OptimalRunStrategy)->Arg(1)->Arg(4)->Arg(16);

void BM_StarHeight(benchmark::State& state) {
  Language l = lang("a*");
  for (auto _ : state) benchmark::DoNotOptimize(star_height(l).star_height);
}
BENCHMARK(BM_StarHeight)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace
BENCHMARK_MAIN();
