#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace starheight {

/// Explicit two-player parity game. Player 0 wins a play when the least
/// priority occurring infinitely often is even. Every vertex needs a successor.
class ParityGame {
 public:
  std::size_t add_vertex(int owner, unsigned priority);
  void add_edge(std::size_t from, std::size_t to);

  std::size_t size() const { return owner_.size(); }
  int owner(std::size_t v) const { return owner_[v]; }
  unsigned priority(std::size_t v) const { return priority_[v]; }
  const std::vector<std::size_t>& successors(std::size_t v) const { return succ_[v]; }
  const std::vector<std::size_t>& predecessors(std::size_t v) const { return pred_[v]; }
  std::size_t num_edges() const;

 private:
  std::vector<int> owner_;
  std::vector<unsigned> priority_;
  std::vector<std::vector<std::size_t>> succ_, pred_;
};

struct ParitySolution {
  std::vector<int> winner;
  /// For each vertex won by its owner: a successor realising a memoryless
  /// winning strategy.
  std::vector<std::optional<std::size_t>> strategy;
};

/// Zielonka's recursive algorithm. Throws std::invalid_argument on dead ends.
ParitySolution solve_parity_game(const ParityGame& game);

}  // namespace starheight
