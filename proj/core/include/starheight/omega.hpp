#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "starheight/errors.hpp"
#include "starheight/types.hpp"

namespace starheight {

/// Nondeterministic Buchi automaton given by a successor function, so that
/// states can be created on demand.
template <class Letter>
struct BuchiAutomaton {
  std::vector<StateId> initial;
  std::function<std::vector<StateId>(StateId, const Letter&)> successors;
  std::function<bool(StateId)> accepting;
};

/// Explicit NBA built from a transition list, mostly for tests.
template <class Letter>
BuchiAutomaton<Letter> explicit_buchi(std::vector<StateId> initial,
                                      std::vector<std::tuple<StateId, Letter, StateId>> transitions,
                                      std::vector<StateId> accepting) {
  auto table = std::make_shared<std::map<std::pair<StateId, Letter>, std::vector<StateId>>>();
  for (auto& [p, a, q] : transitions) (*table)[{p, a}].push_back(q);
  for (auto& [key, succ] : *table) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }
  auto acc = std::make_shared<std::vector<StateId>>(std::move(accepting));
  BuchiAutomaton<Letter> b;
  b.initial = std::move(initial);
  b.successors = [table](StateId q, const Letter& a) {
    auto it = table->find({q, a});
    return it == table->end() ? std::vector<StateId>{} : it->second;
  };
  b.accepting = [acc](StateId q) { return std::find(acc->begin(), acc->end(), q) != acc->end(); };
  return b;
}

namespace detail {
/// Is there a node reachable from `start` that is accepting and lies on a cycle?
bool has_accepting_cycle(const std::vector<std::vector<std::size_t>>& edges, const std::vector<bool>& accepting,
                         const std::vector<std::size_t>& start);
}  // namespace detail

/// Does the NBA accept u v^omega? Requires v nonempty.
template <class Letter>
bool nba_accepts_lasso(const BuchiAutomaton<Letter>& b, const std::vector<Letter>& u, const std::vector<Letter>& v) {
  if (v.empty()) throw std::invalid_argument("lasso loop must be nonempty");
  std::vector<StateId> current = b.initial;
  auto step = [&](const std::vector<StateId>& from, const Letter& a) {
    std::vector<StateId> out;
    for (StateId q : from)
      for (StateId r : b.successors(q, a)) out.push_back(r);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  std::sort(current.begin(), current.end());
  current.erase(std::unique(current.begin(), current.end()), current.end());
  for (const auto& a : u) current = step(current, a);

  // nodes (state, position in v)
  std::map<std::pair<StateId, std::size_t>, std::size_t> ids;
  std::vector<std::pair<StateId, std::size_t>> nodes;
  std::vector<std::vector<std::size_t>> edges;
  std::vector<bool> acc;
  auto intern = [&](StateId q, std::size_t i) {
    auto [it, fresh] = ids.emplace(std::make_pair(q, i), nodes.size());
    if (fresh) {
      nodes.emplace_back(q, i);
      edges.emplace_back();
      acc.push_back(b.accepting(q));
    }
    return it->second;
  };
  std::vector<std::size_t> start;
  for (StateId q : current) start.push_back(intern(q, 0));
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    auto [q, i] = nodes[n];
    std::size_t next = (i + 1) % v.size();
    for (StateId r : b.successors(q, v[i])) {
      std::size_t m = intern(r, next);
      edges[n].push_back(m);
    }
  }
  return detail::has_accepting_cycle(edges, acc, start);
}

/// Deterministic automaton with priorities on transitions. A run is accepting
/// when the least priority seen infinitely often is even.
template <class Letter>
class ParityAutomaton {
 public:
  virtual ~ParityAutomaton() = default;
  virtual StateId initial() const = 0;
  /// Successor state and the priority of the transition.
  virtual std::pair<StateId, unsigned> step(StateId q, const Letter& a) = 0;
  virtual std::size_t num_states() const = 0;
};

/// Safra-Piterman determinisation, built lazily. Trees have compact node
/// names in age order; a transition gets priority 2e when the oldest marked
/// node e is older than every removed node, 2f-1 when f is the oldest removed
/// node, and a large odd neutral priority otherwise.
template <class Letter>
class SafraDeterminizer final : public ParityAutomaton<Letter> {
 public:
  explicit SafraDeterminizer(BuchiAutomaton<Letter> nba, std::size_t max_states = 100'000)
      : nba_(std::move(nba)), max_states_(max_states) {
    Tree t;
    std::vector<StateId> init = nba_.initial;
    normalize(init);
    if (!init.empty()) t.nodes.push_back({1, init, {}});
    intern(t);
  }

  StateId initial() const override { return 0; }
  std::size_t num_states() const override { return trees_.size(); }
  static constexpr unsigned neutral_priority() { return (1U << 30) + 1; }

  std::pair<StateId, unsigned> step(StateId q, const Letter& a) override {
    auto key = std::make_pair(q, a);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Tree next = trees_[q];
    unsigned priority = advance(next, a);
    std::pair<StateId, unsigned> result{intern(next), priority};
    memo_.emplace(std::move(key), result);
    return result;
  }

  /// Labels of the tree nodes of a state in preorder, for diagnostics.
  std::vector<std::vector<StateId>> labels(StateId q) const {
    std::vector<std::vector<StateId>> out;
    for (const auto& n : trees_[q].nodes) out.push_back(n.label);
    return out;
  }

 private:
  struct Node {
    unsigned name;
    std::vector<StateId> label;
    std::vector<std::size_t> children;  // indices, oldest first
  };
  struct Tree {
    std::vector<Node> nodes;  // nodes[0] is the root when nonempty
  };

  static void normalize(std::vector<StateId>& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }

  static std::vector<StateId> minus(const std::vector<StateId>& x, const std::vector<StateId>& y) {
    std::vector<StateId> out;
    std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return out;
  }

  static std::vector<StateId> unite(const std::vector<StateId>& x, const std::vector<StateId>& y) {
    std::vector<StateId> out;
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return out;
  }

  unsigned advance(Tree& t, const Letter& a) {
    if (t.nodes.empty()) return neutral_priority();
    const std::size_t old_count = t.nodes.size();
    unsigned next_name = 0;
    for (const auto& n : t.nodes) next_name = std::max(next_name, n.name);
    // spawn
    for (std::size_t i = 0; i < old_count; ++i) {
      std::vector<StateId> f;
      for (StateId s : t.nodes[i].label)
        if (nba_.accepting(s)) f.push_back(s);
      if (f.empty()) continue;
      t.nodes.push_back({++next_name, f, {}});
      t.nodes[i].children.push_back(t.nodes.size() - 1);
    }
    // successors
    for (auto& n : t.nodes) {
      std::vector<StateId> out;
      for (StateId s : n.label)
        for (StateId r : nba_.successors(s, a)) out.push_back(r);
      normalize(out);
      n.label = std::move(out);
    }
    // horizontal merge
    std::function<void(std::size_t, const std::vector<StateId>&)> process = [&](std::size_t i,
                                                                                 const std::vector<StateId>& blocked) {
      t.nodes[i].label = minus(t.nodes[i].label, blocked);
      std::vector<StateId> acc = blocked;
      for (std::size_t c : t.nodes[i].children) {
        process(c, acc);
        acc = unite(acc, t.nodes[c].label);
      }
    };
    process(0, {});
    // removal of empty nodes, then vertical merge top-down
    std::vector<bool> alive(t.nodes.size(), true), marked(t.nodes.size(), false);
    std::function<void(std::size_t)> kill = [&](std::size_t i) {
      alive[i] = false;
      for (std::size_t c : t.nodes[i].children) kill(c);
    };
    std::function<void(std::size_t)> sweep = [&](std::size_t i) {
      if (t.nodes[i].label.empty()) {
        kill(i);
        return;
      }
      for (std::size_t c : t.nodes[i].children) sweep(c);
    };
    sweep(0);
    std::function<void(std::size_t)> merge = [&](std::size_t i) {
      if (!alive[i]) return;
      std::vector<StateId> below;
      bool any = false;
      for (std::size_t c : t.nodes[i].children)
        if (alive[c]) {
          below = unite(below, t.nodes[c].label);
          any = true;
        }
      if (any && below == t.nodes[i].label) {
        for (std::size_t c : t.nodes[i].children)
          if (alive[c]) kill(c);
        marked[i] = true;
        return;
      }
      for (std::size_t c : t.nodes[i].children) merge(c);
    };
    merge(0);

    unsigned e = std::numeric_limits<unsigned>::max(), f = std::numeric_limits<unsigned>::max();
    for (std::size_t i = 0; i < old_count; ++i) {
      if (!alive[i]) f = std::min(f, t.nodes[i].name);
      else if (marked[i]) e = std::min(e, t.nodes[i].name);
    }
    unsigned priority = neutral_priority();
    if (e < f) priority = 2 * e;
    else if (f != std::numeric_limits<unsigned>::max()) priority = 2 * f - 1;

    // rebuild with compact names preserving age order
    Tree out;
    if (alive[0]) {
      std::vector<unsigned> names;
      for (std::size_t i = 0; i < t.nodes.size(); ++i)
        if (alive[i]) names.push_back(t.nodes[i].name);
      std::sort(names.begin(), names.end());
      std::function<std::size_t(std::size_t)> copy = [&](std::size_t i) {
        std::size_t idx = out.nodes.size();
        unsigned rank = static_cast<unsigned>(std::lower_bound(names.begin(), names.end(), t.nodes[i].name) -
                                              names.begin()) + 1;
        out.nodes.push_back({rank, t.nodes[i].label, {}});
        for (std::size_t c : t.nodes[i].children)
          if (alive[c]) {
            std::size_t ci = copy(c);
            out.nodes[idx].children.push_back(ci);
          }
        return idx;
      };
      copy(0);
    }
    t = std::move(out);
    return priority;
  }

  static std::vector<std::uint64_t> serialize(const Tree& t) {
    std::vector<std::uint64_t> out;
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
      const auto& n = t.nodes[i];
      out.push_back(n.name);
      out.push_back(n.label.size());
      out.insert(out.end(), n.label.begin(), n.label.end());
      out.push_back(n.children.size());
      for (std::size_t c : n.children) walk(c);
    };
    if (!t.nodes.empty()) walk(0);
    return out;
  }

  StateId intern(const Tree& t) {
    auto key = serialize(t);
    auto [it, fresh] = ids_.emplace(std::move(key), static_cast<StateId>(trees_.size()));
    if (fresh) {
      if (trees_.size() >= max_states_)
        throw BudgetExceeded("parity automaton exceeds " + std::to_string(max_states_) + " states");
      trees_.push_back(t);
    }
    return it->second;
  }

  BuchiAutomaton<Letter> nba_;
  std::size_t max_states_;
  std::vector<Tree> trees_;
  std::map<std::vector<std::uint64_t>, StateId> ids_;
  std::map<std::pair<StateId, Letter>, std::pair<StateId, unsigned>> memo_;
};

/// Does the deterministic parity automaton accept u v^omega?
template <class Letter>
bool dpa_accepts_lasso(ParityAutomaton<Letter>& d, const std::vector<Letter>& u, const std::vector<Letter>& v) {
  if (v.empty()) throw std::invalid_argument("lasso loop must be nonempty");
  StateId q = d.initial();
  for (const auto& a : u) q = d.step(q, a).first;
  std::map<StateId, std::size_t> seen;
  std::vector<unsigned> loop_min;
  while (!seen.count(q)) {
    seen[q] = loop_min.size();
    unsigned lowest = std::numeric_limits<unsigned>::max();
    for (const auto& a : v) {
      auto [r, p] = d.step(q, a);
      lowest = std::min(lowest, p);
      q = r;
    }
    loop_min.push_back(lowest);
  }
  unsigned lowest = std::numeric_limits<unsigned>::max();
  for (std::size_t i = seen[q]; i < loop_min.size(); ++i) lowest = std::min(lowest, loop_min[i]);
  return lowest % 2 == 0;
}

/// Explores all states reachable over `letters`; returns the state count.
template <class Letter>
std::size_t explore(ParityAutomaton<Letter>& d, const std::vector<Letter>& letters) {
  std::vector<StateId> todo{d.initial()};
  std::vector<bool> seen;
  auto mark = [&](StateId q) {
    if (seen.size() <= q) seen.resize(q + 1, false);
    if (seen[q]) return false;
    seen[q] = true;
    return true;
  };
  mark(d.initial());
  while (!todo.empty()) {
    StateId q = todo.back();
    todo.pop_back();
    for (const auto& a : letters)
      if (StateId r = d.step(q, a).first; mark(r)) todo.push_back(r);
  }
  return static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true));
}

}  // namespace starheight
