#include "starheight/height_automaton.hpp"

#include <map>
#include <memory>
#include <sstream>
#include <tuple>

#include "starheight/errors.hpp"

namespace starheight {

namespace {

std::string hex(ElementSet s) {
  std::ostringstream os;
  os << std::hex << s;
  return os.str();
}

// Keeps states that are reachable and can reach a final state.
CostAutomaton trim_automaton(const CostAutomaton& a) {
  const std::size_t n = a.num_states();
  std::vector<bool> reach(n, false), co(n, false);
  std::vector<StateId> todo;
  for (StateId q : a.initial)
    if (!reach[q]) reach[q] = true, todo.push_back(q);
  std::vector<std::vector<std::size_t>> out(n), in(n);
  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    out[a.transitions[i].source].push_back(i);
    in[a.transitions[i].target].push_back(i);
  }
  while (!todo.empty()) {
    StateId q = todo.back();
    todo.pop_back();
    for (auto i : out[q])
      if (StateId t = a.transitions[i].target; !reach[t]) reach[t] = true, todo.push_back(t);
  }
  for (StateId q : a.final)
    if (!co[q]) co[q] = true, todo.push_back(q);
  while (!todo.empty()) {
    StateId q = todo.back();
    todo.pop_back();
    for (auto i : in[q])
      if (StateId s = a.transitions[i].source; !co[s]) co[s] = true, todo.push_back(s);
  }
  CostAutomaton r;
  r.alphabet = a.alphabet;
  r.num_counters = a.num_counters;
  std::vector<StateId> renum(n, 0);
  for (StateId q = 0; q < n; ++q)
    if (reach[q] && co[q]) {
      renum[q] = static_cast<StateId>(r.state_names.size());
      r.state_names.push_back(a.state_names[q]);
    }
  auto keep = [&](StateId q) { return reach[q] && co[q]; };
  for (StateId q : a.initial)
    if (keep(q)) r.initial.push_back(renum[q]);
  for (StateId q : a.final)
    if (keep(q)) r.final.push_back(renum[q]);
  for (const auto& t : a.transitions)
    if (keep(t.source) && keep(t.target)) r.transitions.push_back({renum[t.source], t.letter, renum[t.target], t.actions});
  return r;
}

ActionSeq concat(ActionSeq head, const ActionSeq& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

class Builder {
 public:
  Builder(const MonoidPresentation& monoid, const HeightAutomatonBudget& budget) : monoid_(monoid), budget_(budget) {
    if (monoid.size() > budget.max_monoid)
      throw BudgetExceeded("monoid has " + std::to_string(monoid.size()) + " elements, subset enumeration allows " +
                           std::to_string(budget.max_monoid));
  }

  std::shared_ptr<const CostAutomaton> get(ElementSet subset, std::size_t height) {
    auto key = std::make_pair(subset, height);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto a = std::make_shared<const CostAutomaton>(height == 0 ? base(subset) : level(subset, height));
    memo_[key] = a;
    return a;
  }

 private:
  void check_size(std::size_t n) const {
    if (n > budget_.max_states)
      throw BudgetExceeded("height automaton exceeds " + std::to_string(budget_.max_states) + " states");
  }

  CostAutomaton base(ElementSet subset) {
    CostAutomaton a;
    a.alphabet = monoid_.alphabet();
    a.num_counters = 1;
    std::map<Element, StateId> ids;
    std::vector<Element> elems{monoid_.identity()};
    ids[monoid_.identity()] = 0;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (Symbol x : a.alphabet) {
        Element y = monoid_.multiply(elems[i], monoid_.letter(x));
        auto [it, fresh] = ids.emplace(y, static_cast<StateId>(elems.size()));
        if (fresh) elems.push_back(y);
        a.transitions.push_back({static_cast<StateId>(i), x, it->second, {CounterAction::inc(0)}});
      }
    }
    for (std::size_t i = 0; i < elems.size(); ++i) {
      a.state_names.push_back("e" + std::to_string(elems[i]));
      if (contains(subset, elems[i])) a.final.push_back(static_cast<StateId>(i));
    }
    a.initial.push_back(0);
    return trim_automaton(a);
  }

  enum Kind { Fresh = 0, W = 1, V = 2 };

  CostAutomaton level(ElementSet subset, std::size_t height) {
    const auto s_counter = static_cast<Counter>(2 * height - 1);
    const auto m_counter = static_cast<Counter>(2 * height);
    const Alphabet& alphabet = monoid_.alphabet();

    struct Inner {
      ElementSet k;
      ElementSet closure;
      std::shared_ptr<const CostAutomaton> automaton;
      std::vector<std::vector<std::vector<std::size_t>>> out;  // [state][letter]
      std::vector<bool> final;
    };
    std::vector<Inner> inners;
    for (ElementSet k = 1; k <= monoid_.all(); ++k) {
      if ((k & monoid_.all()) != k) continue;
      auto inner = get(k, height - 1);
      if (inner->initial.empty()) continue;
      Inner in{k, monoid_.generated_submonoid(k), inner, {}, std::vector<bool>(inner->num_states(), false)};
      in.out.assign(inner->num_states(), std::vector<std::vector<std::size_t>>(alphabet.size()));
      for (std::size_t i = 0; i < inner->transitions.size(); ++i) {
        const auto& t = inner->transitions[i];
        in.out[t.source][alphabet.index(t.letter)].push_back(i);
      }
      for (StateId q : inner->final) in.final[q] = true;
      inners.push_back(std::move(in));
    }
    std::map<ElementSet, std::size_t> inner_of;
    for (std::size_t i = 0; i < inners.size(); ++i) inner_of[inners[i].k] = i;

    CostAutomaton a;
    a.alphabet = alphabet;
    a.num_counters = 2 * height + 1;
    using Key = std::tuple<int, ElementSet, ElementSet, StateId>;
    std::map<Key, StateId> ids;
    std::vector<Key> keys;
    auto intern = [&](const Key& key) {
      auto [it, fresh] = ids.emplace(key, static_cast<StateId>(keys.size()));
      if (fresh) {
        keys.push_back(key);
        check_size(keys.size());
      }
      return it->second;
    };
    auto times = [&](ElementSet x, Element y) { return monoid_.times(x, y); };
    auto subset_of = [&](ElementSet x) { return (x & ~subset) == 0; };

    intern({Fresh, singleton(monoid_.identity()), 0, 0});
    a.initial.push_back(0);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const auto [kind, x, k, q] = keys[i];
      const auto src = static_cast<StateId>(i);
      auto add = [&](Symbol letter, const Key& key, ActionSeq ops) {
        StateId dst = intern(key);
        a.transitions.push_back({src, letter, dst, std::move(ops)});
      };
      bool boundary = kind != V || inners[inner_of.at(k)].final[q];
      for (Symbol letter : alphabet) {
        const std::size_t li = alphabet.index(letter);
        // start block: w part, or straight into its iterated part
        auto open_block = [&](const ActionSeq& prefix) {
          add(letter, {W, times(x, monoid_.letter(letter)), 0, 0}, concat(prefix, {CounterAction::inc(s_counter)}));
          for (const auto& in : inners) {
            ElementSet nx = monoid_.product(x, in.closure);
            for (StateId q0 : in.automaton->initial)
              for (auto ti : in.out[q0][li]) {
                const auto& t = in.automaton->transitions[ti];
                add(letter, {V, nx, in.k, t.target}, concat(prefix, t.actions));
              }
          }
        };
        if (boundary) open_block({CounterAction::inc(m_counter)});
        if (kind == W) {
          add(letter, {W, times(x, monoid_.letter(letter)), 0, 0}, {CounterAction::inc(s_counter)});
          for (const auto& in : inners) {
            ElementSet nx = monoid_.product(x, in.closure);
            for (StateId q0 : in.automaton->initial)
              for (auto ti : in.out[q0][li]) {
                const auto& t = in.automaton->transitions[ti];
                add(letter, {V, nx, in.k, t.target}, t.actions);
              }
          }
        }
        if (kind == V) {
          const auto& in = inners[inner_of.at(k)];
          for (auto ti : in.out[q][li]) {
            const auto& t = in.automaton->transitions[ti];
            add(letter, {V, x, k, t.target}, t.actions);
          }
          if (in.final[q])
            for (StateId q0 : in.automaton->initial)
              for (auto ti : in.out[q0][li]) {
                const auto& t = in.automaton->transitions[ti];
                add(letter, {V, x, k, t.target}, concat({CounterAction::reset(s_counter)}, t.actions));
              }
        }
      }
    }
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const auto [kind, x, k, q] = keys[i];
      std::string name;
      bool final = false;
      switch (kind) {
        case Fresh:
          name = "F";
          final = contains(subset, monoid_.identity());
          break;
        case W:
          name = "W" + hex(x);
          final = subset_of(x);
          break;
        default: {
          const auto& in = inners[inner_of.at(k)];
          name = "V" + hex(x) + "." + hex(k) + "[" + in.automaton->state_names[q] + "]";
          final = in.final[q] && subset_of(x);
        }
      }
      a.state_names.push_back(name);
      if (final) a.final.push_back(static_cast<StateId>(i));
    }
    return trim_automaton(a);
  }

  const MonoidPresentation& monoid_;
  HeightAutomatonBudget budget_;
  std::map<std::pair<ElementSet, std::size_t>, std::shared_ptr<const CostAutomaton>> memo_;
};

}  // namespace

CostAutomaton build_height_automaton(const MonoidPresentation& monoid, ElementSet subset, std::size_t height,
                                     const HeightAutomatonBudget& budget) {
  Builder builder(monoid, budget);
  return *builder.get(subset, height);
}

CostAutomaton build_height_automaton(const Language& language, std::size_t height,
                                     const HeightAutomatonBudget& budget) {
  return build_height_automaton(language.monoid, language.monoid.accepting_set(), height, budget);
}

bool is_star_height_at_most(const Language& language, std::size_t height, const HeightAutomatonBudget& budget,
                            const GameBudget& game_budget) {
  return solve_limitedness(build_height_automaton(language, height, budget), language.dfa, game_budget).verdict ==
         Verdict::Limited;
}

StarHeightResult star_height(const Language& language, const HeightAutomatonBudget& budget,
                             const GameBudget& game_budget) {
  StarHeightResult result;
  result.cycle_rank_cap = cycle_rank(trim(language.dfa));
  Builder builder(language.monoid, budget);
  for (std::size_t h = 0; h <= result.cycle_rank_cap; ++h) {
    CostAutomaton a = *builder.get(language.monoid.accepting_set(), h);
    LimitednessAnswer answer = solve_limitedness(a, language.dfa, game_budget);
    StarHeightLevel level;
    level.height = h;
    level.limited = answer.verdict == Verdict::Limited;
    level.automaton_states = a.num_states();
    level.automaton_transitions = a.transitions.size();
    level.counters = a.num_counters;
    level.arena_vertices = answer.stats.arena_vertices;
    if (level.limited) level.bound = extracted_bound(answer, a);
    result.levels.push_back(level);
    if (level.limited) {
      result.star_height = h;
      result.automaton = std::move(a);
      result.answer = std::move(answer);
      return result;
    }
  }
  throw InternalError("no height up to the cycle rank " + std::to_string(result.cycle_rank_cap) +
                      " gives a limited automaton");
}

}  // namespace starheight
