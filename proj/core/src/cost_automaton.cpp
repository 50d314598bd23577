#include "starheight/cost_automaton.hpp"

#include <map>
#include <set>
#include <stdexcept>

#include "starheight/errors.hpp"
#include "text_format.hpp"

namespace starheight {

std::string CounterAction::to_string() const {
  switch (kind) {
    case Kind::None:
      return "none";
    case Kind::Increment:
      return "inc(" + std::to_string(counter) + ")";
    case Kind::Reset:
      return "reset(" + std::to_string(counter) + ")";
  }
  return "none";
}

std::string to_string(const ActionSeq& actions) {
  if (actions.empty()) return "none";
  std::string out;
  for (const auto& act : actions) {
    if (!out.empty()) out += ',';
    out += act.to_string();
  }
  return out;
}

bool resets(const ActionSeq& actions, Counter c) {
  for (const auto& act : actions) {
    if (act.kind == CounterAction::Kind::Reset && act.counter >= c) return true;
    if (act.kind == CounterAction::Kind::Increment && act.counter > c) return true;
  }
  return false;
}

bool increments(const ActionSeq& actions, Counter c) {
  for (const auto& act : actions)
    if (act.kind == CounterAction::Kind::Increment && act.counter == c) return true;
  return false;
}

bool CostAutomaton::is_final(StateId q) const { return std::find(final.begin(), final.end(), q) != final.end(); }

bool CostAutomaton::is_initial(StateId q) const {
  return std::find(initial.begin(), initial.end(), q) != initial.end();
}

OutgoingIndex::OutgoingIndex(const CostAutomaton& a)
    : alphabet_(a.alphabet),
      table_(a.num_states(), std::vector<std::vector<std::size_t>>(a.alphabet.size())) {
  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    const auto& t = a.transitions[i];
    table_[t.source][alphabet_.index(t.letter)].push_back(i);
  }
}

std::vector<std::string> validate(const CostAutomaton& a) {
  std::vector<std::string> errors;
  const std::size_t n = a.num_states();
  if (a.num_counters == 0) errors.push_back("at least one counter is required");
  for (StateId q : a.initial)
    if (q >= n) errors.push_back("initial state " + std::to_string(q) + " is not declared");
  for (StateId q : a.final)
    if (q >= n) errors.push_back("final state " + std::to_string(q) + " is not declared");
  std::set<std::string> names;
  for (const auto& s : a.state_names)
    if (!names.insert(s).second) errors.push_back("duplicate state name '" + s + "'");
  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    const auto& t = a.transitions[i];
    std::string where = "transition " + std::to_string(i) + ": ";
    if (t.source >= n) errors.push_back(where + "source state is not declared");
    if (t.target >= n) errors.push_back(where + "target state is not declared");
    if (!a.alphabet.contains(t.letter)) errors.push_back(where + "letter '" + std::string(1, t.letter) + "' is not in the alphabet");
    for (const auto& act : t.actions) {
      if (act.kind == CounterAction::Kind::None)
        errors.push_back(where + "'none' cannot appear inside an action sequence");
      else if (act.counter >= a.num_counters)
        errors.push_back(where + "counter " + std::to_string(act.counter) + " out of range (automaton has " +
                         std::to_string(a.num_counters) + ")");
    }
  }
  return errors;
}

void require_valid(const CostAutomaton& a) {
  auto errors = validate(a);
  if (!errors.empty()) throw std::invalid_argument(errors.front());
}

std::uint64_t apply(const ActionSeq& actions, CounterValuation& valuation) {
  std::uint64_t peak = 0;
  for (const auto& act : actions) {
    switch (act.kind) {
      case CounterAction::Kind::None:
        break;
      case CounterAction::Kind::Increment:
        for (Counter c = 0; c < act.counter; ++c) valuation[c] = 0;
        peak = std::max(peak, ++valuation[act.counter]);
        break;
      case CounterAction::Kind::Reset:
        for (Counter c = 0; c <= act.counter; ++c) valuation[c] = 0;
        break;
    }
  }
  return peak;
}

bool is_run(const CostAutomaton& a, const Run& run) {
  for (std::size_t i = 0; i < run.size(); ++i) {
    if (run[i] >= a.transitions.size()) return false;
    const auto& t = a.transitions[run[i]];
    if (i == 0 && !a.is_initial(t.source)) return false;
    if (i > 0 && a.transitions[run[i - 1]].target != t.source) return false;
  }
  return true;
}

Word run_word(const CostAutomaton& a, const Run& run) {
  Word w;
  for (std::size_t id : run) w += a.transitions.at(id).letter;
  return w;
}

std::uint64_t run_value(const CostAutomaton& a, const Run& run) {
  if (!is_run(a, run)) throw std::invalid_argument("not a run of the automaton");
  CounterValuation v(a.num_counters, 0);
  std::uint64_t value = 0;
  for (std::size_t id : run) value = std::max(value, apply(a.transitions[id].actions, v));
  return value;
}

namespace {

std::uint64_t max_increments_per_transition(const CostAutomaton& a) {
  std::uint64_t k = 0;
  for (const auto& t : a.transitions) {
    std::uint64_t incs = 0;
    for (const auto& act : t.actions)
      if (act.kind == CounterAction::Kind::Increment) ++incs;
    k = std::max(k, incs);
  }
  return k;
}

}  // namespace

bool has_run_within(const CostAutomaton& a, std::string_view word, std::uint64_t bound) {
  OutgoingIndex out(a);
  using Config = std::pair<StateId, CounterValuation>;
  std::set<Config> layer;
  for (StateId q : a.initial) layer.insert({q, CounterValuation(a.num_counters, 0)});
  for (Symbol letter : word) {
    if (!a.alphabet.contains(letter)) return false;
    std::set<Config> next;
    for (const auto& [q, v] : layer) {
      for (std::size_t id : out.from(q, letter)) {
        const auto& t = a.transitions[id];
        CounterValuation w = v;
        if (apply(t.actions, w) > bound) continue;
        next.insert({t.target, std::move(w)});
      }
    }
    layer.swap(next);
    if (layer.empty()) return false;
  }
  for (const auto& [q, v] : layer)
    if (a.is_final(q)) return true;
  return false;
}

Cost evaluate(const CostAutomaton& a, std::string_view word) {
  std::uint64_t hi = word.size() * max_increments_per_transition(a);
  if (!has_run_within(a, word, hi)) return Cost::infinity();
  std::uint64_t lo = 0;
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (has_run_within(a, word, mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return Cost(lo);
}

std::vector<RunWithValue> enumerate_runs(const CostAutomaton& a, std::string_view word, std::size_t max_runs) {
  OutgoingIndex out(a);
  struct Partial {
    Run run;
    StateId state;
    CounterValuation valuation;
    std::uint64_t value;
  };
  std::vector<Partial> layer;
  std::vector<StateId> starts(a.initial);
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  for (StateId q : starts) layer.push_back({{}, q, CounterValuation(a.num_counters, 0), 0});
  for (Symbol letter : word) {
    std::vector<Partial> next;
    if (!a.alphabet.contains(letter)) return {};
    for (const auto& p : layer) {
      for (std::size_t id : out.from(p.state, letter)) {
        Partial q = p;
        q.run.push_back(id);
        q.state = a.transitions[id].target;
        q.value = std::max(q.value, apply(a.transitions[id].actions, q.valuation));
        next.push_back(std::move(q));
        if (next.size() > max_runs) throw BudgetExceeded("run enumeration exceeds budget");
      }
    }
    layer.swap(next);
  }
  std::vector<RunWithValue> result;
  for (auto& p : layer) result.push_back({std::move(p.run), p.state, p.value});
  return result;
}

std::vector<RunWithValue> enumerate_accepting_runs(const CostAutomaton& a, std::string_view word,
                                                   std::size_t max_runs) {
  std::vector<RunWithValue> out;
  for (auto& r : enumerate_runs(a, word, max_runs))
    if (a.is_final(r.end)) out.push_back(std::move(r));
  return out;
}

std::vector<std::optional<Cost>> value_profile(const CostAutomaton& a, const Dfa& language, std::size_t max_length) {
  std::vector<std::optional<Cost>> profile;
  for (std::size_t n = 0; n <= max_length; ++n) {
    std::optional<Cost> sup;
    for (const auto& w : words_of_length(language.alphabet, n)) {
      if (!language.accepts(w)) continue;
      Cost c = evaluate(a, w);
      if (!sup || c > *sup) sup = c;
    }
    profile.push_back(sup);
  }
  return profile;
}

namespace {

// Per-counter effect of an action sequence: c -> (reset ? 0 : c) + add.
struct Effect {
  std::vector<bool> reset;
  std::vector<std::uint64_t> add;
  bool normalized = true;  // no counter is reset after being incremented
};

Effect effect_of(const ActionSeq& actions, std::size_t counters) {
  Effect e{std::vector<bool>(counters, false), std::vector<std::uint64_t>(counters, 0), true};
  std::vector<bool> incremented(counters, false);
  auto clear_below = [&](Counter top, bool inclusive) {
    for (Counter c = 0; c < top + (inclusive ? 1 : 0); ++c) {
      if (incremented[c]) e.normalized = false;
      e.reset[c] = true;
      e.add[c] = 0;
    }
  };
  for (const auto& act : actions) {
    if (act.kind == CounterAction::Kind::Increment) {
      clear_below(act.counter, false);
      ++e.add[act.counter];
      incremented[act.counter] = true;
    } else if (act.kind == CounterAction::Kind::Reset) {
      clear_below(act.counter, true);
    }
  }
  return e;
}

bool dominates(const Effect& better, const Effect& worse) {
  if (!better.normalized || !worse.normalized) return false;
  for (std::size_t c = 0; c < better.add.size(); ++c) {
    if (better.add[c] > worse.add[c]) return false;
    if (worse.reset[c] && !better.reset[c]) return false;
  }
  return true;
}

}  // namespace

PrunedAutomaton prune(const CostAutomaton& a) {
  const std::size_t n = a.num_states();
  std::vector<bool> reach(n, false), coreach(n, false);
  for (StateId q : a.initial) reach[q] = true;
  for (StateId q : a.final) coreach[q] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : a.transitions) {
      if (reach[t.source] && !reach[t.target]) reach[t.target] = changed = true;
      if (coreach[t.target] && !coreach[t.source]) coreach[t.source] = changed = true;
    }
  }
  PrunedAutomaton out;
  out.automaton.alphabet = a.alphabet;
  out.automaton.num_counters = a.num_counters;
  std::vector<long> id(n, -1);
  for (StateId q = 0; q < n; ++q) {
    if (reach[q] && coreach[q]) {
      id[q] = static_cast<long>(out.original_states.size());
      out.original_states.push_back(q);
      out.automaton.state_names.push_back(a.state_names[q]);
    }
  }
  for (StateId q : a.initial)
    if (id[q] >= 0) out.automaton.initial.push_back(static_cast<StateId>(id[q]));
  for (StateId q : a.final)
    if (id[q] >= 0) out.automaton.final.push_back(static_cast<StateId>(id[q]));

  std::map<std::tuple<StateId, Symbol, StateId>, std::vector<std::size_t>> parallel;
  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    const auto& t = a.transitions[i];
    if (id[t.source] >= 0 && id[t.target] >= 0) parallel[{t.source, t.letter, t.target}].push_back(i);
  }
  std::vector<std::size_t> kept;
  for (const auto& [key, group] : parallel) {
    std::vector<Effect> effects;
    for (std::size_t i : group) effects.push_back(effect_of(a.transitions[i].actions, a.num_counters));
    for (std::size_t x = 0; x < group.size(); ++x) {
      bool dominated = false;
      for (std::size_t y = 0; y < group.size() && !dominated; ++y) {
        if (x == y || !dominates(effects[y], effects[x])) continue;
        // among mutually dominating transitions keep the first
        dominated = !dominates(effects[x], effects[y]) || y < x;
      }
      if (!dominated) kept.push_back(group[x]);
    }
  }
  std::sort(kept.begin(), kept.end());
  for (std::size_t i : kept) {
    Transition t = a.transitions[i];
    t.source = static_cast<StateId>(id[t.source]);
    t.target = static_cast<StateId>(id[t.target]);
    out.automaton.transitions.push_back(std::move(t));
    out.original_ids.push_back(i);
  }
  return out;
}

namespace {

ActionSeq parse_actions(const std::string& text, const detail::Line& line) {
  if (text == "none") return {};
  ActionSeq out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    std::string part = text.substr(start, comma - start);
    CounterAction::Kind kind;
    std::string rest;
    if (part.rfind("inc(", 0) == 0) {
      kind = CounterAction::Kind::Increment;
      rest = part.substr(4);
    } else if (part.rfind("reset(", 0) == 0) {
      kind = CounterAction::Kind::Reset;
      rest = part.substr(6);
    } else {
      detail::fail("unknown counter action '" + part + "'", line);
    }
    if (rest.size() < 2 || rest.back() != ')') detail::fail("malformed counter action '" + part + "'", line);
    rest.pop_back();
    if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
      detail::fail("malformed counter index in '" + part + "'", line);
    out.push_back({kind, static_cast<Counter>(std::stoul(rest))});
    if (comma == text.size()) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

CostAutomaton parse_cost_automaton(std::string_view text) {
  using namespace detail;
  auto lines = read_lines(text);
  if (lines.empty()) throw ParseError("empty cost automaton file", 1, ParseError::Unit::Line);
  if (lines[0].key != "costautomaton" || lines[0].has_colon || !lines[0].values.empty())
    fail("expected 'costautomaton' header", lines[0]);
  CostAutomaton a;
  bool have_alphabet = false, have_counters = false, have_states = false;
  std::map<std::string, StateId> ids;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.key == "alphabet") {
      a.alphabet = parse_alphabet(line);
      have_alphabet = true;
    } else if (line.key == "counters") {
      if (line.values.size() != 1 || line.values[0].find_first_not_of("0123456789") != std::string::npos)
        fail("expected 'counters: <k>'", line);
      a.num_counters = std::stoul(line.values[0]);
      if (a.num_counters == 0) fail("at least one counter is required", line);
      have_counters = true;
    } else if (line.key == "states") {
      a.state_names = line.values;
      ids = index_names(line.values, line);
      have_states = true;
    } else if (line.key == "initial" || line.key == "final") {
      if (!have_states) fail("'states' must precede '" + line.key + "'", line);
      auto& target = line.key == "initial" ? a.initial : a.final;
      for (const auto& v : line.values) target.push_back(lookup(ids, v, line));
    } else if (line.key == "trans") {
      if (!have_states || !have_alphabet || !have_counters)
        fail("'alphabet', 'counters' and 'states' must precede transitions", line);
      if (line.values.size() != 4 || line.values[1].size() != 1) fail("expected 'trans: q a q2 action'", line);
      Transition t;
      t.source = lookup(ids, line.values[0], line);
      t.letter = line.values[1][0];
      if (!a.alphabet.contains(t.letter)) fail(std::string("letter '") + t.letter + "' is not in the alphabet", line);
      t.target = lookup(ids, line.values[2], line);
      t.actions = parse_actions(line.values[3], line);
      for (const auto& act : t.actions)
        if (act.counter >= a.num_counters)
          fail("counter " + std::to_string(act.counter) + " out of range (automaton has " +
                   std::to_string(a.num_counters) + ")",
               line);
      a.transitions.push_back(std::move(t));
    } else {
      fail("unknown key '" + line.key + "'", line);
    }
  }
  if (!have_alphabet || !have_counters || !have_states)
    throw ParseError("cost automaton needs 'alphabet', 'counters' and 'states'", lines.back().number,
                     ParseError::Unit::Line);
  return a;
}

std::string print_cost_automaton(const CostAutomaton& a) {
  auto names = [&](const std::vector<StateId>& qs) {
    std::string out;
    for (StateId q : qs) out += " " + a.state_names[q];
    return out;
  };
  std::string out = "costautomaton\nalphabet: " + a.alphabet.to_string() + "\n";
  out += "counters: " + std::to_string(a.num_counters) + "\n";
  out += "states: " + detail::join(a.state_names) + "\n";
  out += "initial:" + names(a.initial) + "\n";
  out += "final:" + names(a.final) + "\n";
  for (const auto& t : a.transitions)
    out += "trans: " + a.state_names[t.source] + " " + t.letter + " " + a.state_names[t.target] + " " +
           to_string(t.actions) + "\n";
  return out;
}

}  // namespace starheight
