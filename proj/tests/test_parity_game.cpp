#include <stdexcept>
#include <functional>
#include <random>

#include "doctest.h"
#include "starheight/parity_game.hpp"

using namespace starheight;

namespace {

// Does every cycle inside `keep` (edges restricted by `edge_ok`) have an even
// least priority?
bool all_cycles_even(const ParityGame& g, const std::vector<bool>& keep,
                     const std::function<bool(std::size_t, std::size_t)>& edge_ok) {
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (!keep[v] || g.priority(v) % 2 == 0) continue;
    // odd v on a cycle through vertices of priority >= priority(v)?
    std::vector<bool> seen(g.size(), false);
    std::vector<std::size_t> todo{v};
    while (!todo.empty()) {
      auto x = todo.back();
      todo.pop_back();
      for (auto y : g.successors(x)) {
        if (!keep[y] || !edge_ok(x, y) || g.priority(y) < g.priority(v)) continue;
        if (y == v) return false;
        if (!seen[y]) seen[y] = true, todo.push_back(y);
      }
    }
  }
  return true;
}

// Checks that each player's strategy wins on its region.
void verify(const ParityGame& g, const ParitySolution& s) {
  for (int player : {0, 1}) {
    std::vector<bool> region(g.size(), false);
    for (std::size_t v = 0; v < g.size(); ++v) region[v] = s.winner[v] == player;
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (!region[v]) continue;
      if (g.owner(v) == player) {
        REQUIRE(s.strategy[v].has_value());
        CHECK(region[*s.strategy[v]]);
      } else {
        for (auto w : g.successors(v)) CHECK(region[w]);
      }
    }
    auto edge_ok = [&](std::size_t x, std::size_t y) { return g.owner(x) != player || *s.strategy[x] == y; };
    if (player == 0) {
      CHECK(all_cycles_even(g, region, edge_ok));
    } else {
      // shift priorities by one so that player 1 plays for even
      ParityGame h;
      for (std::size_t v = 0; v < g.size(); ++v) h.add_vertex(g.owner(v), g.priority(v) + 1);
      for (std::size_t v = 0; v < g.size(); ++v)
        for (auto w : g.successors(v)) h.add_edge(v, w);
      CHECK(all_cycles_even(h, region, edge_ok));
    }
  }
}

}  // namespace

TEST_CASE("small games") {
  ParityGame g;
  auto a = g.add_vertex(0, 2);
  auto b = g.add_vertex(1, 3);
  auto c = g.add_vertex(0, 3);
  g.add_edge(a, b);
  g.add_edge(a, c);
  g.add_edge(b, a);
  g.add_edge(c, c);
  auto s = solve_parity_game(g);
  CHECK(s.winner[a] == 0);
  CHECK(s.winner[b] == 0);
  CHECK(s.winner[c] == 1);
  CHECK(*s.strategy[a] == b);
  verify(g, s);
}

TEST_CASE("dead ends are rejected") {
  ParityGame g;
  g.add_vertex(0, 0);
  CHECK_THROWS_AS(solve_parity_game(g), std::invalid_argument);
  CHECK_THROWS_AS(g.add_vertex(2, 0), std::invalid_argument);
}

TEST_CASE("random games have verified winning strategies") {
  std::mt19937 rng(11);
  for (int round = 0; round < 200; ++round) {
    ParityGame g;
    const std::size_t n = 2 + rng() % 10;
    for (std::size_t v = 0; v < n; ++v) g.add_vertex(static_cast<int>(rng() % 2), rng() % 6);
    for (std::size_t v = 0; v < n; ++v) {
      g.add_edge(v, rng() % n);
      for (std::size_t k = 0; k < 2; ++k)
        if (rng() % 2) g.add_edge(v, rng() % n);
    }
    auto s = solve_parity_game(g);
    verify(g, s);
  }
}
