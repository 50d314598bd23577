#include "starheight/parity_game.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace starheight {

std::size_t ParityGame::add_vertex(int owner, unsigned priority) {
  if (owner != 0 && owner != 1) throw std::invalid_argument("vertex owner must be 0 or 1");
  owner_.push_back(owner);
  priority_.push_back(priority);
  succ_.emplace_back();
  pred_.emplace_back();
  return owner_.size() - 1;
}

void ParityGame::add_edge(std::size_t from, std::size_t to) {
  if (from >= size() || to >= size()) throw std::out_of_range("edge endpoint is not a vertex");
  succ_[from].push_back(to);
  pred_[to].push_back(from);
}

std::size_t ParityGame::num_edges() const {
  std::size_t n = 0;
  for (const auto& s : succ_) n += s.size();
  return n;
}

namespace {

// Internally priorities follow the max convention: player 0 wins iff the
// largest priority seen infinitely often is even.
class Zielonka {
 public:
  explicit Zielonka(const ParityGame& g) : g_(g), prio_(g.size()), strategy_(g.size()), winner_(g.size(), -1) {
    // compress: order by min-priority, merge equal parities, then flip to max
    std::vector<unsigned> values;
    for (std::size_t v = 0; v < g.size(); ++v) values.push_back(g.priority(v));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::map<unsigned, unsigned> rank;
    unsigned r = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i == 0) r = values[i] % 2;
      else if (values[i] % 2 != values[i - 1] % 2) ++r;
      rank[values[i]] = r;
    }
    unsigned top = r + (r % 2);  // even
    for (std::size_t v = 0; v < g.size(); ++v) prio_[v] = top - rank[g.priority(v)];
  }

  ParitySolution run() {
    for (std::size_t v = 0; v < g_.size(); ++v)
      if (g_.successors(v).empty()) throw std::invalid_argument("vertex " + std::to_string(v) + " has no successor");
    std::vector<bool> all(g_.size(), true);
    solve(all);
    ParitySolution s;
    s.winner = winner_;
    s.strategy = strategy_;
    return s;
  }

 private:
  using Set = std::vector<bool>;

  // Attractor of `target` for `player` inside `game`; records attractor moves.
  Set attractor(const Set& game, const Set& target, int player) {
    Set attr = target;
    std::vector<std::size_t> count(g_.size(), 0), todo;
    for (std::size_t v = 0; v < g_.size(); ++v) {
      if (!game[v]) continue;
      if (attr[v]) todo.push_back(v);
      for (auto w : g_.successors(v))
        if (game[w]) ++count[v];
    }
    while (!todo.empty()) {
      auto w = todo.back();
      todo.pop_back();
      for (auto v : g_.predecessors(w)) {
        if (!game[v] || attr[v]) continue;
        if (g_.owner(v) == player) {
          attr[v] = true;
          strategy_[v] = w;
          todo.push_back(v);
        } else if (--count[v] == 0) {
          attr[v] = true;
          todo.push_back(v);
        }
      }
    }
    return attr;
  }

  void solve(const Set& game) {
    bool empty = true;
    unsigned d = 0;
    for (std::size_t v = 0; v < g_.size(); ++v)
      if (game[v]) {
        empty = false;
        d = std::max(d, prio_[v]);
      }
    if (empty) return;
    const int p = static_cast<int>(d % 2);
    Set top(g_.size(), false);
    for (std::size_t v = 0; v < g_.size(); ++v) top[v] = game[v] && prio_[v] == d;
    Set a = attractor(game, top, p);
    Set rest(g_.size(), false);
    for (std::size_t v = 0; v < g_.size(); ++v) rest[v] = game[v] && !a[v];
    solve(rest);
    bool opponent_wins_somewhere = false;
    for (std::size_t v = 0; v < g_.size(); ++v)
      if (rest[v] && winner_[v] == 1 - p) opponent_wins_somewhere = true;
    if (!opponent_wins_somewhere) {
      for (std::size_t v = 0; v < g_.size(); ++v) {
        if (!game[v]) continue;
        winner_[v] = p;
        if (top[v] && g_.owner(v) == p) {
          for (auto w : g_.successors(v))
            if (game[w]) {
              strategy_[v] = w;
              break;
            }
        }
      }
      return;
    }
    Set lost(g_.size(), false);
    for (std::size_t v = 0; v < g_.size(); ++v) lost[v] = rest[v] && winner_[v] == 1 - p;
    // strategies inside `lost` come from the subgame and stay valid
    Set b = attractor(game, lost, 1 - p);
    Set remaining(g_.size(), false);
    for (std::size_t v = 0; v < g_.size(); ++v) {
      remaining[v] = game[v] && !b[v];
      if (b[v]) winner_[v] = 1 - p;
    }
    solve(remaining);
  }

  const ParityGame& g_;
  std::vector<unsigned> prio_;
  std::vector<std::optional<std::size_t>> strategy_;
  std::vector<int> winner_;
};

}  // namespace

ParitySolution solve_parity_game(const ParityGame& game) {
  ParitySolution s = Zielonka(game).run();
  for (std::size_t v = 0; v < game.size(); ++v)
    if (s.winner[v] != game.owner(v)) s.strategy[v].reset();
  return s;
}

}  // namespace starheight
