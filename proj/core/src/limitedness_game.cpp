#include "starheight/limitedness_game.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "starheight/errors.hpp"

namespace starheight {

using Delta = std::vector<std::size_t>;

std::string to_string(Verdict v) { return v == Verdict::Limited ? "limited" : "unlimited"; }

std::vector<std::size_t> GameSpec::transitions_reading(Symbol a) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < automaton.transitions.size(); ++i)
    if (automaton.transitions[i].letter == a) out.push_back(i);
  return out;
}

std::size_t GameSpec::num_b_letters(Symbol a) const {
  auto k = transitions_reading(a).size();
  if (k >= 64) throw BudgetExceeded("too many transitions reading '" + std::string(1, a) + "'");
  return std::size_t{1} << k;
}

GameSpec build_limitedness_game(const CostAutomaton& a, const Dfa& language) {
  require_valid(a);
  if (!(a.alphabet == language.alphabet))
    throw AlphabetMismatch("cost automaton alphabet {" + a.alphabet.to_string() + "} differs from language alphabet {" +
                           language.alphabet.to_string() + "}");
  return {a, language};
}

BuchiAutomaton<Delta> bad_run_nba(const CostAutomaton& a) {
  const auto n = static_cast<StateId>(a.num_states());
  const auto counters = static_cast<Counter>(a.num_counters);
  auto transitions = std::make_shared<std::vector<Transition>>(a.transitions);
  BuchiAutomaton<Delta> b;
  b.initial = a.initial;
  std::sort(b.initial.begin(), b.initial.end());
  b.initial.erase(std::unique(b.initial.begin(), b.initial.end()), b.initial.end());
  auto commit = [n](Counter c, StateId q, bool seen) { return n + 2 * (c * n + q) + (seen ? 1 : 0); };
  b.successors = [=](StateId state, const Delta& delta) {
    std::vector<StateId> out;
    if (state < n) {
      for (auto id : delta) {
        const auto& t = (*transitions)[id];
        if (t.source != state) continue;
        out.push_back(t.target);
        for (Counter c = 0; c < counters; ++c) out.push_back(commit(c, t.target, false));
      }
    } else {
      StateId idx = (state - n) / 2;
      Counter c = idx / n;
      StateId q = idx % n;
      for (auto id : delta) {
        const auto& t = (*transitions)[id];
        if (t.source != q || resets(t.actions, c)) continue;
        out.push_back(commit(c, t.target, increments(t.actions, c)));
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  b.accepting = [n](StateId state) { return state >= n && (state - n) % 2 == 1; };
  return b;
}

namespace {

std::vector<StateId> post(const CostAutomaton& a, const std::vector<StateId>& from, const Delta& delta) {
  std::vector<StateId> out;
  for (auto id : delta) {
    const auto& t = a.transitions[id];
    if (std::binary_search(from.begin(), from.end(), t.source)) out.push_back(t.target);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool meets_final(const CostAutomaton& a, const std::vector<StateId>& states) {
  for (StateId q : states)
    if (a.is_final(q)) return true;
  return false;
}

}  // namespace

BuchiAutomaton<PlayLetter> complement_condition_nba(const GameSpec& g) {
  struct Shared {
    CostAutomaton a;
    Dfa lang;
    BuchiAutomaton<Delta> bad;
    std::map<std::tuple<StateId, std::vector<StateId>, long>, StateId> ids;
    std::vector<std::tuple<StateId, std::vector<StateId>, long>> keys;
  };
  constexpr long idle = -1;
  auto sh = std::make_shared<Shared>();
  sh->a = g.automaton;
  sh->lang = g.language;
  sh->bad = bad_run_nba(g.automaton);
  const StateId sink = 0;  // violation sink
  sh->keys.emplace_back(0, std::vector<StateId>{}, -2);
  auto intern = [sh](StateId l, std::vector<StateId> r, long guess) {
    auto key = std::make_tuple(l, std::move(r), guess);
    auto [it, fresh] = sh->ids.emplace(key, static_cast<StateId>(sh->keys.size()));
    if (fresh) sh->keys.push_back(key);
    return it->second;
  };
  std::vector<StateId> init = g.automaton.initial;
  std::sort(init.begin(), init.end());
  init.erase(std::unique(init.begin(), init.end()), init.end());
  BuchiAutomaton<PlayLetter> b;
  b.initial.push_back(intern(g.language.initial, init, idle));
  for (StateId q : sh->bad.initial) b.initial.push_back(intern(g.language.initial, init, q));
  b.successors = [sh, intern, sink](StateId state, const PlayLetter& x) -> std::vector<StateId> {
    if (state == sink) return {sink};
    auto [l, r, guess] = sh->keys[state];
    for (auto id : x.delta)
      if (id >= sh->a.transitions.size() || sh->a.transitions[id].letter != x.letter) return {sink};
    if (!sh->lang.alphabet.contains(x.letter)) return {sink};
    StateId l2 = sh->lang.step(l, x.letter);
    auto r2 = post(sh->a, r, x.delta);
    if (sh->lang.final[l2] && !meets_final(sh->a, r2)) return {sink};
    std::vector<StateId> out;
    if (guess == idle) {
      out.push_back(intern(l2, r2, idle));
    } else {
      for (StateId s : sh->bad.successors(static_cast<StateId>(guess), x.delta)) out.push_back(intern(l2, r2, s));
    }
    return out;
  };
  b.accepting = [sh, sink](StateId state) {
    if (state == sink) return true;
    long guess = std::get<2>(sh->keys[state]);
    return guess >= 0 && sh->bad.accepting(static_cast<StateId>(guess));
  };
  return b;
}

class Arena {
 public:
  enum class Kind { A, B, Mid, Sink };
  struct AVertex {
    StateId l;
    std::vector<StateId> r;
    StateId d;
    std::size_t vertex;
    std::vector<std::size_t> b;  // per letter index
  };
  struct BVertex {
    std::size_t av;
    Symbol letter;
    Delta t;  // pruned ids B may usefully play
    std::size_t vertex;
  };
  struct Mid {
    Delta delta;  // pruned ids
    std::size_t av;
    unsigned priority;
    std::size_t vertex;
  };

  Arena(const CostAutomaton& original, const Dfa& lang, const GameBudget& budget)
      : pruned(prune(original)), lang(lang), budget(budget) {
    const CostAutomaton& a = pruned.automaton;
    dpa = determinize_to_parity(bad_run_nba(a), budget.max_parity_states);
    to_pruned.assign(original.transitions.size(), -1);
    for (std::size_t i = 0; i < pruned.original_ids.size(); ++i) to_pruned[pruned.original_ids[i]] = static_cast<long>(i);
    compute_coaccessible();
    sink = game.add_vertex(0, 1);
    game.add_edge(sink, sink);
    kinds.push_back({Kind::Sink, 0});
    std::vector<StateId> r0;
    for (StateId q : a.initial)
      if (coacc[q][lang.initial]) r0.push_back(q);
    std::sort(r0.begin(), r0.end());
    r0.erase(std::unique(r0.begin(), r0.end()), r0.end());
    start = intern_a(lang.initial, r0, dpa->initial());
    for (std::size_t i = 0; i < avs.size(); ++i) expand(i);
  }

  std::size_t intern_a(StateId l, const std::vector<StateId>& r, StateId d) {
    auto key = std::make_tuple(l, r, d);
    auto it = a_ids.find(key);
    if (it != a_ids.end()) return it->second;
    std::size_t idx = avs.size();
    avs.push_back({l, r, d, add_vertex(1, neutral(), Kind::A, idx), {}});
    a_ids.emplace(key, idx);
    return idx;
  }

  std::size_t add_vertex(int owner, unsigned priority, Kind kind, std::size_t ref) {
    if (game.size() >= budget.max_arena_vertices)
      throw BudgetExceeded("arena exceeds " + std::to_string(budget.max_arena_vertices) + " vertices");
    kinds.emplace_back(kind, ref);
    return game.add_vertex(owner, priority);
  }

  static unsigned neutral() { return SafraDeterminizer<Delta>::neutral_priority() + 1; }

  Delta useful(std::size_t av, Symbol letter) const {
    const auto& v = avs[av];
    StateId l2 = lang.step(v.l, letter);
    Delta t;
    const auto& a = pruned.automaton;
    for (std::size_t i = 0; i < a.transitions.size(); ++i) {
      const auto& tr = a.transitions[i];
      if (tr.letter == letter && std::binary_search(v.r.begin(), v.r.end(), tr.source) && coacc[tr.target][l2])
        t.push_back(i);
    }
    return t;
  }

  // Successor of B's answer, or nullopt when it breaks the accepting-run condition.
  std::optional<std::tuple<std::size_t, unsigned, Delta>> answer(std::size_t av, Symbol letter, const Delta& delta) {
    const auto& v = avs[av];
    StateId l2 = lang.step(v.l, letter);
    auto r2 = post(pruned.automaton, v.r, delta);
    if (lang.final[l2] && !meets_final(pruned.automaton, r2)) return std::nullopt;
    auto [d2, p] = dpa->step(v.d, delta);
    auto key = std::make_tuple(l2, r2, d2);
    auto it = a_ids.find(key);
    std::size_t target = it != a_ids.end() ? it->second : intern_a(l2, r2, d2);
    return std::make_tuple(target, p + 1, delta);
  }

  void expand(std::size_t i) {
    const Alphabet& alphabet = pruned.automaton.alphabet;
    for (Symbol letter : alphabet) {
      Delta t = useful(i, letter);
      if (t.size() > budget.max_transitions_per_letter)
        throw BudgetExceeded("player B would choose among 2^" + std::to_string(t.size()) + " transition sets");
      std::size_t bi = bvs.size();
      std::size_t bv = add_vertex(0, neutral(), Kind::B, bi);
      bvs.push_back({i, letter, t, bv});
      avs[i].b.push_back(bi);
      game.add_edge(avs[i].vertex, bv);
      std::map<std::pair<std::size_t, unsigned>, std::size_t> mids_here;
      for (std::size_t mask = 0; mask < (std::size_t{1} << t.size()); ++mask) {
        Delta delta;
        for (std::size_t j = 0; j < t.size(); ++j)
          if ((mask >> j) & 1U) delta.push_back(t[j]);
        auto next = answer(i, letter, delta);
        if (!next) continue;
        auto [target, priority, chosen] = *next;
        if (mids_here.count({target, priority})) continue;
        std::size_t mi = mids.size();
        std::size_t mv = add_vertex(0, priority, Kind::Mid, mi);
        mids.push_back({chosen, target, priority, mv});
        mids_here[{target, priority}] = mi;
        game.add_edge(bv, mv);
        game.add_edge(mv, avs[target].vertex);
      }
      if (mids_here.empty()) game.add_edge(bv, sink);
    }
  }

  void compute_coaccessible() {
    const auto& a = pruned.automaton;
    const std::size_t nl = lang.num_states();
    coacc.assign(a.num_states(), std::vector<bool>(nl, false));
    std::vector<std::pair<StateId, StateId>> todo;
    for (StateId q : a.final)
      for (StateId l = 0; l < nl; ++l)
        if (lang.final[l] && !coacc[q][l]) coacc[q][l] = true, todo.emplace_back(q, l);
    std::vector<std::vector<std::size_t>> into(a.num_states());
    for (std::size_t i = 0; i < a.transitions.size(); ++i) into[a.transitions[i].target].push_back(i);
    while (!todo.empty()) {
      auto [q, l] = todo.back();
      todo.pop_back();
      for (auto id : into[q]) {
        const auto& t = a.transitions[id];
        for (StateId lp = 0; lp < nl; ++lp)
          if (lang.step(lp, t.letter) == l && !coacc[t.source][lp]) {
            coacc[t.source][lp] = true;
            todo.emplace_back(t.source, lp);
          }
      }
    }
  }

  PrunedAutomaton pruned;
  Dfa lang;
  GameBudget budget;
  std::unique_ptr<SafraDeterminizer<Delta>> dpa;
  std::vector<long> to_pruned;
  std::vector<std::vector<bool>> coacc;
  ParityGame game;
  std::vector<std::pair<Kind, std::size_t>> kinds;  // per game vertex
  std::vector<AVertex> avs;
  std::map<std::tuple<StateId, std::vector<StateId>, StateId>, std::size_t> a_ids;
  std::vector<BVertex> bvs;
  std::vector<Mid> mids;
  std::size_t sink = 0;
  std::size_t start = 0;
  ParitySolution solution;
};

std::size_t AStrategy::initial() const { return arena_->start; }

std::optional<Symbol> AStrategy::letter(std::size_t memory) const {
  const auto& v = arena_->avs.at(memory);
  const auto& choice = arena_->solution.strategy[v.vertex];
  if (!choice) return std::nullopt;
  auto [kind, ref] = arena_->kinds[*choice];
  if (kind != Arena::Kind::B) return std::nullopt;
  return arena_->bvs[ref].letter;
}

std::optional<std::size_t> AStrategy::respond(std::size_t memory, const std::vector<std::size_t>& delta) const {
  auto a = letter(memory);
  if (!a) return std::nullopt;
  const auto& v = arena_->avs.at(memory);
  const auto& b = arena_->bvs[v.b[arena_->pruned.automaton.alphabet.index(*a)]];
  Delta mapped;
  for (auto id : delta) {
    if (id >= arena_->to_pruned.size()) return std::nullopt;
    long p = arena_->to_pruned[id];
    if (p >= 0 && std::binary_search(b.t.begin(), b.t.end(), static_cast<std::size_t>(p)))
      mapped.push_back(static_cast<std::size_t>(p));
  }
  std::sort(mapped.begin(), mapped.end());
  // all successors of b were built when the arena was expanded
  auto& arena = const_cast<Arena&>(*arena_);
  auto next = arena.answer(memory, *a, mapped);
  if (!next) return std::nullopt;
  return std::get<0>(*next);
}

std::string AStrategy::to_dot() const {
  const Arena& ar = *arena_;
  std::ostringstream os;
  os << "digraph arena {\n";
  for (std::size_t v = 0; v < ar.game.size(); ++v) {
    auto [kind, ref] = ar.kinds[v];
    std::string shape = kind == Arena::Kind::A ? "box" : kind == Arena::Kind::B ? "ellipse" : "point";
    os << "  v" << v << " [shape=" << shape << ", label=\"";
    if (kind == Arena::Kind::B) os << ar.bvs[ref].letter;
    else if (kind == Arena::Kind::A) os << "A" << ref;
    os << "\"";
    if (ar.solution.winner.size() > v) os << ", color=" << (ar.solution.winner[v] == 0 ? "blue" : "red");
    os << "];\n";
  }
  for (std::size_t v = 0; v < ar.game.size(); ++v)
    for (auto w : ar.game.successors(v)) os << "  v" << v << " -> v" << w << ";\n";
  os << "}\n";
  return os.str();
}

namespace {

FiniteMemoryStrategy extract_b_strategy(const Arena& ar) {
  const Alphabet& alphabet = ar.pruned.automaton.alphabet;
  FiniteMemoryStrategy s;
  s.alphabet = alphabet;
  // memory: 0 = before the first round, then reachable mid vertices
  std::map<std::size_t, StateId> memory_of_mid;
  std::vector<long> mid_at{-1};
  s.state_names.push_back("init");
  s.output.emplace_back();
  s.delta.emplace_back(alphabet.size(), 0);
  for (std::size_t m = 0; m < mid_at.size(); ++m) {
    std::size_t av = mid_at[m] < 0 ? ar.start : ar.mids[static_cast<std::size_t>(mid_at[m])].av;
    for (std::size_t li = 0; li < alphabet.size(); ++li) {
      const auto& b = ar.bvs[ar.avs[av].b[li]];
      auto choice = ar.solution.strategy[b.vertex];
      if (!choice || ar.kinds[*choice].first != Arena::Kind::Mid)
        throw InternalError("B's winning strategy leaves its winning region");
      std::size_t mid = ar.kinds[*choice].second;
      auto [it, fresh] = memory_of_mid.emplace(mid, static_cast<StateId>(mid_at.size()));
      if (fresh) {
        mid_at.push_back(static_cast<long>(mid));
        s.state_names.push_back("x" + std::to_string(mid));
        Delta out;
        for (auto id : ar.mids[mid].delta) out.push_back(ar.pruned.original_ids[id]);
        std::sort(out.begin(), out.end());
        s.output.push_back(out);
        s.delta.emplace_back(alphabet.size(), 0);
      }
      s.delta[m][li] = it->second;
    }
  }
  return minimize(s);
}

}  // namespace

LimitednessAnswer solve_game(const GameSpec& g, const GameBudget& budget) {
  LimitednessAnswer answer;
  answer.automaton_states = g.automaton.num_states();
  bool empty_accepting = false;
  for (StateId q : g.automaton.initial) empty_accepting = empty_accepting || g.automaton.is_final(q);
  if (g.language.accepts("") && !empty_accepting) {
    answer.verdict = Verdict::Unlimited;
    answer.empty_word_unlimited = true;
    return answer;
  }
  auto arena = std::make_shared<Arena>(g.automaton, g.language, budget);
  arena->solution = solve_parity_game(arena->game);
  answer.stats.pruned_states = arena->pruned.automaton.num_states();
  answer.stats.pruned_transitions = arena->pruned.automaton.transitions.size();
  answer.stats.parity_states = arena->dpa->num_states();
  answer.stats.arena_vertices = arena->game.size();
  answer.stats.arena_edges = arena->game.num_edges();
  if (arena->solution.winner[arena->avs[arena->start].vertex] == 0) {
    answer.verdict = Verdict::Limited;
    answer.strategy_b = extract_b_strategy(*arena);
  } else {
    answer.verdict = Verdict::Unlimited;
    answer.strategy_a = std::make_shared<const AStrategy>(arena);
  }
  return answer;
}

LimitednessAnswer solve_limitedness(const CostAutomaton& a, const Dfa& language, const GameBudget& budget) {
  return solve_game(build_limitedness_game(a, language), budget);
}

std::size_t extracted_bound(const LimitednessAnswer& answer, const CostAutomaton& a) {
  if (answer.verdict != Verdict::Limited || !answer.strategy_b)
    throw std::invalid_argument("a bound exists only for limited answers");
  return a.num_states() * answer.strategy_b->num_states();
}

SimulationReport simulate_strategy_b(const FiniteMemoryStrategy& s, const CostAutomaton& a, const Dfa& language,
                                     std::string_view word, std::uint64_t bound) {
  using Config = std::pair<StateId, CounterValuation>;
  std::set<Config> configs;
  for (StateId q : a.initial) configs.emplace(q, CounterValuation(a.num_counters, 0));
  StateId m = s.initial;
  StateId l = language.initial;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const Symbol x = word[i];
    const std::size_t round = i + 1;
    if (!s.alphabet.contains(x) || !language.alphabet.contains(x))
      throw AlphabetMismatch(std::string("letter '") + x + "' is not in the alphabet");
    m = s.step(m, x);
    const auto& delta = s.output[m];
    std::map<StateId, std::vector<std::size_t>> by_source;
    for (auto id : delta) {
      if (id >= a.transitions.size())
        return {false, 1, round, "transition id " + std::to_string(id) + " does not exist"};
      if (a.transitions[id].letter != x)
        return {false, 1, round, "transition " + std::to_string(id) + " does not read '" + std::string(1, x) + "'"};
      by_source[a.transitions[id].source].push_back(id);
    }
    std::set<Config> next;
    for (const auto& [q, val] : configs) {
      auto it = by_source.find(q);
      if (it == by_source.end()) continue;
      for (auto id : it->second) {
        CounterValuation v = val;
        if (apply(a.transitions[id].actions, v) > bound)
          return {false, 2, round, "a run reaches value " + std::to_string(bound + 1)};
        next.emplace(a.transitions[id].target, std::move(v));
      }
    }
    configs.swap(next);
    l = language.step(l, x);
    if (language.final[l]) {
      bool accepting = false;
      for (const auto& c : configs) accepting = accepting || a.is_final(c.first);
      if (!accepting) return {false, 3, round, "prefix in L without an accepting run"};
    }
  }
  return {};
}

namespace {

bool grows(const CostAutomaton& a, const Dfa& language, const Word& u, const Word& v, std::size_t probe,
           std::vector<Cost>& values) {
  values.clear();
  Word w = u;
  for (std::size_t n = 1; n <= probe; ++n) {
    w += v;
    if (!language.accepts(w)) return false;
    Cost c = evaluate(a, w);
    if (!values.empty() && !(values.back() < c)) return false;
    values.push_back(c);
  }
  return true;
}

}  // namespace

Lasso pump_witness(const LimitednessAnswer& answer, const CostAutomaton& a, const Dfa& language, std::size_t probe) {
  if (answer.verdict != Verdict::Unlimited) throw std::invalid_argument("pump witnesses exist only for unlimited answers");
  Lasso lasso;
  if (answer.strategy_a) {
    const AStrategy& sa = *answer.strategy_a;
    std::map<std::size_t, std::size_t> seen;
    std::size_t m = sa.initial();
    Word word;
    while (!seen.count(m)) {
      seen[m] = word.size();
      auto x = sa.letter(m);
      if (!x) break;
      word += *x;
      std::vector<std::size_t> all;
      for (std::size_t i = 0; i < a.transitions.size(); ++i)
        if (a.transitions[i].letter == *x) all.push_back(i);
      auto next = sa.respond(m, all);
      if (!next) break;
      m = *next;
    }
    if (seen.count(m) && seen[m] < word.size()) {
      lasso.prefix = word.substr(0, seen[m]);
      lasso.loop = word.substr(seen[m]);
      if (grows(a, language, lasso.prefix, lasso.loop, probe, lasso.values)) return lasso;
    }
  }
  for (std::size_t total = 1; total <= 8; ++total)
    for (std::size_t vl = 1; vl <= std::min<std::size_t>(total, 4); ++vl) {
      if (total - vl > 4) continue;
      for (const auto& u : words_of_length(a.alphabet, total - vl))
        for (const auto& v : words_of_length(a.alphabet, vl)) {
          lasso.prefix = u;
          lasso.loop = v;
          if (grows(a, language, u, v, probe, lasso.values)) return lasso;
        }
    }
  throw BudgetExceeded("no growing lasso with |u| <= 4 and |v| <= 4");
}

}  // namespace starheight
