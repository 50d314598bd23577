#include "starheight/automata.hpp"

#include <bit>
#include <functional>
#include <map>
#include <queue>
#include <set>

#include "starheight/errors.hpp"
#include "text_format.hpp"

namespace starheight {

Nfa::Nfa(Alphabet a, std::size_t n)
    : alphabet(std::move(a)),
      num_states(n),
      transitions(n, std::vector<std::vector<StateId>>(alphabet.size())),
      final(n, false) {}

void Nfa::add_transition(StateId from, Symbol letter, StateId to) {
  auto& targets = transitions[from][alphabet.index(letter)];
  auto it = std::lower_bound(targets.begin(), targets.end(), to);
  if (it == targets.end() || *it != to) targets.insert(it, to);
}

bool Nfa::accepts(std::string_view word) const {
  std::set<StateId> current(initial.begin(), initial.end());
  for (Symbol a : word) {
    if (!alphabet.contains(a)) return false;
    std::set<StateId> next;
    for (StateId q : current)
      for (StateId r : transitions[q][alphabet.index(a)]) next.insert(r);
    current.swap(next);
  }
  for (StateId q : current)
    if (final[q]) return true;
  return false;
}

StateId Dfa::run(StateId q, std::string_view word) const {
  for (Symbol a : word) q = step(q, a);
  return q;
}

namespace {

struct Glushkov {
  std::vector<Symbol> position_letter;  // index 0 unused
  std::vector<std::set<std::size_t>> follow;

  struct Info {
    bool nullable;
    std::set<std::size_t> first, last;
  };

  Info visit(const Regex& e) {
    switch (e.kind()) {
      case Regex::Kind::Empty:
        return {false, {}, {}};
      case Regex::Kind::Epsilon:
        return {true, {}, {}};
      case Regex::Kind::Letter: {
        std::size_t p = position_letter.size();
        position_letter.push_back(e.symbol());
        follow.emplace_back();
        return {false, {p}, {p}};
      }
      case Regex::Kind::Union: {
        Info l = visit(e.left());
        Info r = visit(e.right());
        l.first.insert(r.first.begin(), r.first.end());
        l.last.insert(r.last.begin(), r.last.end());
        return {l.nullable || r.nullable, l.first, l.last};
      }
      case Regex::Kind::Concat: {
        Info l = visit(e.left());
        Info r = visit(e.right());
        for (std::size_t p : l.last) follow[p].insert(r.first.begin(), r.first.end());
        Info out{l.nullable && r.nullable, l.first, r.last};
        if (l.nullable) out.first.insert(r.first.begin(), r.first.end());
        if (r.nullable) out.last.insert(l.last.begin(), l.last.end());
        return out;
      }
      case Regex::Kind::Star: {
        Info c = visit(e.child());
        for (std::size_t p : c.last) follow[p].insert(c.first.begin(), c.first.end());
        return {true, c.first, c.last};
      }
    }
    return {false, {}, {}};
  }
};

Dfa canonical(const Alphabet& alphabet, const std::vector<std::vector<StateId>>& delta, StateId initial,
              const std::vector<bool>& final) {
  std::vector<StateId> order;
  std::vector<long> renumber(delta.size(), -1);
  std::queue<StateId> todo;
  renumber[initial] = 0;
  order.push_back(initial);
  todo.push(initial);
  while (!todo.empty()) {
    StateId q = todo.front();
    todo.pop();
    for (StateId r : delta[q]) {
      if (renumber[r] < 0) {
        renumber[r] = static_cast<long>(order.size());
        order.push_back(r);
        todo.push(r);
      }
    }
  }
  Dfa d;
  d.alphabet = alphabet;
  d.initial = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    d.state_names.push_back("q" + std::to_string(i));
    std::vector<StateId> row;
    for (StateId r : delta[order[i]]) row.push_back(static_cast<StateId>(renumber[r]));
    d.delta.push_back(std::move(row));
    d.final.push_back(final[order[i]]);
  }
  return d;
}

}  // namespace

Nfa regex_to_nfa(const Regex& e, const Alphabet& alphabet) {
  Glushkov g;
  g.position_letter.push_back(0);
  g.follow.emplace_back();
  auto info = g.visit(e);
  Nfa n(alphabet, g.position_letter.size());
  n.initial = {0};
  n.final[0] = info.nullable;
  for (std::size_t p : info.first) n.add_transition(0, g.position_letter[p], static_cast<StateId>(p));
  for (std::size_t p = 1; p < g.position_letter.size(); ++p) {
    n.final[p] = info.last.count(p) > 0;
    for (std::size_t r : g.follow[p]) n.add_transition(static_cast<StateId>(p), g.position_letter[r], static_cast<StateId>(r));
  }
  return n;
}

Dfa determinize_minimize(const Nfa& n) {
  std::map<std::vector<StateId>, StateId> ids;
  std::vector<std::vector<StateId>> subsets;
  std::vector<std::vector<StateId>> delta;
  std::vector<bool> final;
  auto intern = [&](std::vector<StateId> s) {
    auto [it, fresh] = ids.emplace(s, static_cast<StateId>(subsets.size()));
    if (fresh) {
      bool f = false;
      for (StateId q : s) f = f || n.final[q];
      subsets.push_back(std::move(s));
      final.push_back(f);
    }
    return it->second;
  };
  std::vector<StateId> init(n.initial);
  std::sort(init.begin(), init.end());
  init.erase(std::unique(init.begin(), init.end()), init.end());
  intern(init);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::vector<StateId> row;
    for (std::size_t a = 0; a < n.alphabet.size(); ++a) {
      std::set<StateId> next;
      for (StateId q : subsets[i])
        for (StateId r : n.transitions[q][a]) next.insert(r);
      row.push_back(intern(std::vector<StateId>(next.begin(), next.end())));
    }
    delta.push_back(std::move(row));
  }
  Dfa d;
  d.alphabet = n.alphabet;
  d.delta = std::move(delta);
  d.final = std::move(final);
  d.initial = 0;
  d.state_names.resize(d.delta.size());
  return minimize(d);
}

Dfa minimize(const Dfa& d) {
  // restrict to reachable states via the canonical renumbering first
  Dfa r = canonical(d.alphabet, d.delta, d.initial, d.final);
  std::size_t n = r.num_states();
  std::vector<std::size_t> cls(n);
  for (std::size_t q = 0; q < n; ++q) cls[q] = r.final[q] ? 1 : 0;
  std::size_t num_classes = 0;
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> sig_ids;
    std::vector<std::size_t> next(n);
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<std::size_t> sig{cls[q]};
      for (StateId t : r.delta[q]) sig.push_back(cls[t]);
      next[q] = sig_ids.emplace(sig, sig_ids.size()).first->second;
    }
    cls.swap(next);
    if (sig_ids.size() == num_classes) break;
    num_classes = sig_ids.size();
  }
  std::vector<std::vector<StateId>> delta(num_classes);
  std::vector<bool> final(num_classes);
  for (std::size_t q = 0; q < n; ++q) {
    auto& row = delta[cls[q]];
    if (!row.empty()) continue;
    for (StateId t : r.delta[q]) row.push_back(static_cast<StateId>(cls[t]));
    final[cls[q]] = r.final[q];
  }
  return canonical(r.alphabet, delta, static_cast<StateId>(cls[r.initial]), final);
}

Nfa to_nfa(const Dfa& d) {
  Nfa n(d.alphabet, d.num_states());
  n.initial = {d.initial};
  for (StateId q = 0; q < d.num_states(); ++q) {
    n.final[q] = d.final[q];
    for (std::size_t a = 0; a < d.alphabet.size(); ++a) n.add_transition(q, d.alphabet[a], d.delta[q][a]);
  }
  return n;
}

namespace {

std::vector<bool> coreachable(const Dfa& d) {
  std::vector<bool> useful = d.final;
  bool changed = true;
  while (changed) {
    changed = false;
    for (StateId q = 0; q < d.num_states(); ++q) {
      if (useful[q]) continue;
      for (StateId t : d.delta[q])
        if (useful[t]) {
          useful[q] = changed = true;
          break;
        }
    }
  }
  return useful;
}

}  // namespace

Nfa trim(const Dfa& d) {
  const auto co = coreachable(d);
  auto useful = co;
  useful[d.initial] = true;
  std::vector<long> id(d.num_states(), -1);
  std::size_t k = 0;
  for (StateId q = 0; q < d.num_states(); ++q)
    if (useful[q]) id[q] = static_cast<long>(k++);
  Nfa n(d.alphabet, k);
  n.initial = {static_cast<StateId>(id[d.initial])};
  for (StateId q = 0; q < d.num_states(); ++q) {
    if (id[q] < 0) continue;
    n.final[id[q]] = d.final[q];
    for (std::size_t a = 0; a < d.alphabet.size(); ++a) {
      StateId t = d.delta[q][a];
      if (co[t])
        n.add_transition(static_cast<StateId>(id[q]), d.alphabet[a], static_cast<StateId>(id[t]));
    }
  }
  return n;
}

bool equivalent(const Dfa& x, const Dfa& y) {
  if (!(x.alphabet == y.alphabet)) return false;
  std::set<std::pair<StateId, StateId>> seen{{x.initial, y.initial}};
  std::vector<std::pair<StateId, StateId>> todo{{x.initial, y.initial}};
  while (!todo.empty()) {
    auto [p, q] = todo.back();
    todo.pop_back();
    if (x.final[p] != y.final[q]) return false;
    for (std::size_t a = 0; a < x.alphabet.size(); ++a) {
      std::pair<StateId, StateId> next{x.delta[p][a], y.delta[q][a]};
      if (seen.insert(next).second) todo.push_back(next);
    }
  }
  return true;
}

bool is_subset(const Dfa& x, const Dfa& y) {
  std::set<std::pair<StateId, StateId>> seen{{x.initial, y.initial}};
  std::vector<std::pair<StateId, StateId>> todo{{x.initial, y.initial}};
  while (!todo.empty()) {
    auto [p, q] = todo.back();
    todo.pop_back();
    if (x.final[p] && !y.final[q]) return false;
    for (std::size_t a = 0; a < x.alphabet.size(); ++a) {
      std::pair<StateId, StateId> next{x.delta[p][a], y.delta[q][a]};
      if (seen.insert(next).second) todo.push_back(next);
    }
  }
  return true;
}

Dfa dfa_union(const Dfa& x, const Dfa& y) {
  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::vector<std::pair<StateId, StateId>> pairs;
  auto intern = [&](std::pair<StateId, StateId> p) {
    auto [it, fresh] = ids.emplace(p, static_cast<StateId>(pairs.size()));
    if (fresh) pairs.push_back(p);
    return it->second;
  };
  intern({x.initial, y.initial});
  Dfa d;
  d.alphabet = x.alphabet;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    std::vector<StateId> row;
    for (std::size_t a = 0; a < x.alphabet.size(); ++a) row.push_back(intern({x.delta[p][a], y.delta[q][a]}));
    d.delta.push_back(std::move(row));
    d.final.push_back(x.final[p] || y.final[q]);
  }
  d.state_names.resize(d.delta.size());
  return minimize(d);
}

bool is_finite_language(const Dfa& d) {
  // a cycle among reachable, co-reachable states means infinitely many words
  Dfa m = minimize(d);
  auto useful = coreachable(m);
  std::vector<int> color(m.num_states(), 0);
  std::function<bool(StateId)> has_cycle = [&](StateId q) {
    color[q] = 1;
    for (StateId t : m.delta[q]) {
      if (!useful[t]) continue;
      if (color[t] == 1) return true;
      if (color[t] == 0 && has_cycle(t)) return true;
    }
    color[q] = 2;
    return false;
  };
  return !useful[m.initial] || !has_cycle(m.initial);
}

namespace {

using Mask = std::uint64_t;

class CycleRank {
 public:
  CycleRank(std::vector<Mask> adjacency, std::size_t max_states)
      : adj_(std::move(adjacency)), max_states_(max_states) {}

  std::size_t rank(Mask vertices) {
    if (auto it = memo_.find(vertices); it != memo_.end()) return it->second;
    std::size_t result = 0;
    for (Mask scc : components(vertices)) {
      std::size_t r;
      if (std::popcount(scc) == 1) {
        int v = std::countr_zero(scc);
        r = (adj_[v] & scc) ? 1 : 0;
      } else if (scc != vertices) {
        r = rank(scc);
      } else {
        if (static_cast<std::size_t>(std::popcount(scc)) > max_states_)
          throw BudgetExceeded("cycle rank: strongly connected component too large");
        r = std::numeric_limits<std::size_t>::max();
        for (Mask rest = scc; rest; rest &= rest - 1) {
          Mask v = rest & (~rest + 1);
          r = std::min(r, 1 + rank(scc & ~v));
        }
      }
      result = std::max(result, r);
    }
    memo_[vertices] = result;
    return result;
  }

 private:
  Mask reach(int v, Mask within, bool forward) const {
    Mask seen = Mask{1} << v;
    std::vector<int> todo{v};
    while (!todo.empty()) {
      int u = todo.back();
      todo.pop_back();
      for (int w = 0; w < static_cast<int>(adj_.size()); ++w) {
        if (!((within >> w) & 1) || ((seen >> w) & 1)) continue;
        bool edge = forward ? ((adj_[u] >> w) & 1) : ((adj_[w] >> u) & 1);
        if (edge) {
          seen |= Mask{1} << w;
          todo.push_back(w);
        }
      }
    }
    return seen;
  }

  std::vector<Mask> components(Mask vertices) const {
    std::vector<Mask> out;
    Mask left = vertices;
    while (left) {
      int v = std::countr_zero(left);
      Mask scc = reach(v, vertices, true) & reach(v, vertices, false);
      out.push_back(scc);
      left &= ~scc;
    }
    return out;
  }

  std::vector<Mask> adj_;
  std::size_t max_states_;
  std::map<Mask, std::size_t> memo_;
};

}  // namespace

std::size_t cycle_rank(const Nfa& n, std::size_t max_states) {
  if (n.num_states > 64) throw BudgetExceeded("cycle rank: more than 64 states");
  std::vector<Mask> adj(n.num_states, 0);
  for (std::size_t q = 0; q < n.num_states; ++q)
    for (const auto& targets : n.transitions[q])
      for (StateId r : targets) adj[q] |= Mask{1} << r;
  if (n.num_states == 0) return 0;
  Mask all = n.num_states == 64 ? ~Mask{0} : ((Mask{1} << n.num_states) - 1);
  return CycleRank(std::move(adj), max_states).rank(all);
}

Dfa parse_dfa(std::string_view text) {
  using namespace detail;
  auto lines = read_lines(text);
  if (lines.empty()) throw ParseError("empty DFA file", 1, ParseError::Unit::Line);
  if (lines[0].key != "dfa" || lines[0].has_colon || !lines[0].values.empty())
    fail("expected 'dfa' header", lines[0]);
  Dfa d;
  bool have_alphabet = false, have_states = false, have_initial = false;
  std::map<std::string, StateId> ids;
  std::vector<std::vector<long>> delta;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.key == "alphabet") {
      d.alphabet = parse_alphabet(line);
      have_alphabet = true;
    } else if (line.key == "states") {
      if (!have_alphabet) fail("'alphabet' must precede 'states'", line);
      d.state_names = line.values;
      ids = index_names(line.values, line);
      delta.assign(line.values.size(), std::vector<long>(d.alphabet.size(), -1));
      d.final.assign(line.values.size(), false);
      have_states = true;
    } else if (line.key == "initial") {
      if (!have_states) fail("'states' must precede 'initial'", line);
      if (line.values.size() != 1) fail("a DFA has exactly one initial state", line);
      d.initial = lookup(ids, line.values[0], line);
      have_initial = true;
    } else if (line.key == "final") {
      if (!have_states) fail("'states' must precede 'final'", line);
      for (const auto& v : line.values) d.final[lookup(ids, v, line)] = true;
    } else if (line.key == "trans") {
      if (!have_states) fail("'states' must precede transitions", line);
      if (line.values.size() != 3 || line.values[1].size() != 1) fail("expected 'trans: q a q2'", line);
      StateId from = lookup(ids, line.values[0], line);
      Symbol a = line.values[1][0];
      if (!d.alphabet.contains(a)) fail(std::string("letter '") + a + "' is not in the alphabet", line);
      StateId to = lookup(ids, line.values[2], line);
      long& slot = delta[from][d.alphabet.index(a)];
      if (slot >= 0 && slot != static_cast<long>(to)) fail("nondeterministic transition in DFA", line);
      slot = to;
    } else {
      fail("unknown key '" + line.key + "'", line);
    }
  }
  if (!have_states || !have_initial) throw ParseError("DFA needs 'states' and 'initial'", lines.back().number, ParseError::Unit::Line);
  long sink = -1;
  for (auto& row : delta)
    for (long& t : row)
      if (t < 0) {
        if (sink < 0) {
          sink = static_cast<long>(d.state_names.size());
          d.state_names.push_back("_sink");
          d.final.push_back(false);
        }
        t = sink;
      }
  for (auto& row : delta) d.delta.emplace_back(row.begin(), row.end());
  if (sink >= 0) d.delta.emplace_back(d.alphabet.size(), static_cast<StateId>(sink));
  return d;
}

std::string print_dfa(const Dfa& d) {
  std::string out = "dfa\nalphabet: " + d.alphabet.to_string() + "\n";
  std::vector<std::string> names = d.state_names;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i].empty()) names[i] = "q" + std::to_string(i);
  out += "states: " + detail::join(names) + "\n";
  out += "initial: " + names[d.initial] + "\n";
  std::vector<std::string> finals;
  for (std::size_t q = 0; q < names.size(); ++q)
    if (d.final[q]) finals.push_back(names[q]);
  out += "final:" + std::string(finals.empty() ? "" : " ") + detail::join(finals) + "\n";
  for (std::size_t q = 0; q < names.size(); ++q)
    for (std::size_t a = 0; a < d.alphabet.size(); ++a)
      out += "trans: " + names[q] + " " + d.alphabet[a] + " " + names[d.delta[q][a]] + "\n";
  return out;
}

}  // namespace starheight
