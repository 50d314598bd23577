#include <random>

#include "doctest.h"
#include "starheight/omega.hpp"

using namespace starheight;

namespace {

std::vector<std::vector<char>> all_words(std::size_t max_len, std::size_t min_len) {
  std::vector<std::vector<char>> out, layer{{}};
  for (std::size_t n = 0; n <= max_len; ++n) {
    if (n >= min_len) out.insert(out.end(), layer.begin(), layer.end());
    std::vector<std::vector<char>> next;
    for (const auto& w : layer)
      for (char c : {'x', 'y'}) {
        auto e = w;
        e.push_back(c);
        next.push_back(e);
      }
    layer.swap(next);
  }
  return out;
}

bool has_x(const std::vector<char>& v) { return std::find(v.begin(), v.end(), 'x') != v.end(); }

}  // namespace

TEST_CASE("finitely many x") {
  auto nba = explicit_buchi<char>({0}, {{0, 'x', 0}, {0, 'y', 0}, {0, 'x', 1}, {0, 'y', 1}, {1, 'y', 1}}, {1});
  SafraDeterminizer<char> dpa(nba);
  for (const auto& u : all_words(4, 0))
    for (const auto& v : all_words(4, 1)) {
      CHECK(nba_accepts_lasso(nba, u, v) == !has_x(v));
      CHECK(dpa_accepts_lasso(dpa, u, v) == !has_x(v));
    }
}

TEST_CASE("deterministic input keeps its language") {
  auto nba = explicit_buchi<char>({0}, {{0, 'x', 1}, {0, 'y', 0}, {1, 'x', 1}, {1, 'y', 0}}, {1});
  SafraDeterminizer<char> dpa(nba);
  for (const auto& u : all_words(4, 0))
    for (const auto& v : all_words(4, 1)) CHECK(dpa_accepts_lasso(dpa, u, v) == has_x(v));
}

TEST_CASE("empty language") {
  auto nba = explicit_buchi<char>({}, {}, {});
  SafraDeterminizer<char> dpa(nba);
  for (const auto& u : all_words(3, 0))
    for (const auto& v : all_words(3, 1)) CHECK_FALSE(dpa_accepts_lasso(dpa, u, v));
  CHECK(explore<char>(dpa, {'x', 'y'}) == 1);
}

TEST_CASE("random automata agree with their determinisation") {
  std::mt19937 rng(7);
  for (int round = 0; round < 60; ++round) {
    const StateId n = 2 + rng() % 3;
    std::vector<std::tuple<StateId, char, StateId>> edges;
    for (StateId p = 0; p < n; ++p)
      for (char c : {'x', 'y'})
        for (StateId q = 0; q < n; ++q)
          if (rng() % 3 == 0) edges.emplace_back(p, c, q);
    std::vector<StateId> acc;
    for (StateId q = 0; q < n; ++q)
      if (rng() % 2) acc.push_back(q);
    std::vector<StateId> init{0};
    if (rng() % 2) init.push_back(n - 1);
    auto nba = explicit_buchi<char>(init, edges, acc);
    SafraDeterminizer<char> dpa(nba);
    for (const auto& u : all_words(3, 0))
      for (const auto& v : all_words(3, 1))
        CHECK_MESSAGE(nba_accepts_lasso(nba, u, v) == dpa_accepts_lasso(dpa, u, v), "round ", round);
  }
}

TEST_CASE("state budget") {
  auto nba = explicit_buchi<char>({0}, {{0, 'x', 0}, {0, 'y', 0}, {0, 'x', 1}, {0, 'y', 1}, {1, 'y', 1}}, {1});
  SafraDeterminizer<char> dpa(nba, 1);
  CHECK_THROWS_AS(explore<char>(dpa, {'x', 'y'}), BudgetExceeded);
}

TEST_CASE("lasso loops must be nonempty") {
  auto nba = explicit_buchi<char>({0}, {{0, 'x', 0}}, {0});
  CHECK_THROWS_AS(nba_accepts_lasso<char>(nba, {}, {}), std::invalid_argument);
}
