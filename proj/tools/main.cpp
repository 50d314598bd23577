// starheight command-line tool.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "starheight/dot.hpp"
#include "starheight/errors.hpp"
#include "starheight/height_automaton.hpp"
#include "starheight/language.hpp"
#include "starheight/limitedness_game.hpp"
#include "starheight/scoring.hpp"

using namespace starheight;

namespace {

constexpr int kParseError = 2;
constexpr int kBudgetExceeded = 3;
constexpr int kAlphabetMismatch = 4;

struct Budgets {
  std::size_t max_len = 8;
  std::size_t states = 400'000;
  std::size_t monoid = 12;
  std::string cert_out;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

void line(const std::string& key, const std::string& value) { std::cout << key << ": " << value << "\n"; }
template <class T>
void line(const std::string& key, const T& value) {
  std::cout << key << ": " << value << "\n";
}

Language read_language(const std::string& path, const Budgets& b) { return load_language(read_file(path), b.monoid); }

GameBudget game_budget(const Budgets& b) {
  GameBudget g;
  g.max_arena_vertices = b.states;
  g.max_parity_states = b.states;
  return g;
}

std::string first_key(const std::string& text) {
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) {
    if (auto hash = l.find('#'); hash != std::string::npos) l.resize(hash);
    std::istringstream words(l);
    std::string w;
    if (words >> w) return w;
  }
  return "";
}

Word parse_word(const std::string& w) { return w == "eps" ? Word{} : w; }

std::string show(const Word& w) { return w.empty() ? "eps" : w; }

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

int cmd_star_height(const std::string& path, const Budgets& b) {
  auto start = std::chrono::steady_clock::now();
  Language lang = read_language(path, b);
  HeightAutomatonBudget hb;
  hb.max_monoid = b.monoid;
  hb.max_states = b.states;
  line("command", "star-height");
  line("alphabet", lang.alphabet().to_string());
  line("dfa_states", lang.dfa.num_states());
  line("monoid_size", lang.monoid.size());
  StarHeightResult r = star_height(lang, hb, game_budget(b));
  line("cycle_rank_cap", r.cycle_rank_cap);
  for (const auto& level : r.levels) {
    std::string key = "height_" + std::to_string(level.height);
    line(key + "_verdict", level.limited ? "limited" : "unlimited");
    line(key + "_automaton", std::to_string(level.automaton_states) + " states, " +
                                 std::to_string(level.automaton_transitions) + " transitions, " +
                                 std::to_string(level.counters) + " counters");
    line(key + "_arena_vertices", level.arena_vertices);
    if (level.bound) line(key + "_bound", *level.bound);
  }
  line("star_height", r.star_height);
  if (!b.cert_out.empty() && r.answer.strategy_b) {
    write_file(b.cert_out, print_strategy(*r.answer.strategy_b));
    write_file(b.cert_out + ".ca", print_cost_automaton(r.automaton));
    line("strategy_file", b.cert_out);
    line("automaton_file", b.cert_out + ".ca");
  }
  line("time_ms", elapsed_ms(start));
  return 0;
}

int cmd_limitedness(const std::string& ca_path, const std::string& lang_path, const Budgets& b) {
  auto start = std::chrono::steady_clock::now();
  CostAutomaton a = parse_cost_automaton(read_file(ca_path));
  Language lang = read_language(lang_path, b);
  LimitednessAnswer ans = solve_limitedness(a, lang.dfa, game_budget(b));
  line("command", "limitedness");
  line("states", a.num_states());
  line("counters", a.num_counters);
  line("transitions", a.transitions.size());
  line("dfa_states", lang.dfa.num_states());
  line("arena_vertices", ans.stats.arena_vertices);
  line("parity_states", ans.stats.parity_states);
  line("verdict", to_string(ans.verdict));
  if (ans.verdict == Verdict::Limited) {
    line("strategy_states", ans.strategy_b->num_states());
    line("bound", extracted_bound(ans, a));
    if (!b.cert_out.empty()) {
      write_file(b.cert_out, print_strategy(*ans.strategy_b));
      line("strategy_file", b.cert_out);
    }
  } else if (ans.empty_word_unlimited) {
    line("witness", "eps has no accepting run");
  } else {
    try {
      Lasso l = pump_witness(ans, a, lang.dfa);
      line("lasso_prefix", show(l.prefix));
      line("lasso_loop", l.loop);
      std::string values;
      for (const auto& v : l.values) values += (values.empty() ? "" : " ") + v.to_string();
      line("lasso_values", values);
      if (!b.cert_out.empty()) {
        write_file(b.cert_out, "lasso\nprefix: " + show(l.prefix) + "\nloop: " + l.loop + "\nvalues: " + values + "\n");
        line("lasso_file", b.cert_out);
      }
    } catch (const BudgetExceeded& e) {
      line("witness", std::string("none found (") + e.what() + ")");
    }
  }
  line("time_ms", elapsed_ms(start));
  return 0;
}

int cmd_evaluate(const std::string& ca_path, const std::string& word) {
  CostAutomaton a = parse_cost_automaton(read_file(ca_path));
  Word w = parse_word(word);
  for (Symbol x : w)
    if (!a.alphabet.contains(x)) throw AlphabetMismatch(std::string("letter '") + x + "' is not in the alphabet");
  line("word", show(w));
  line("value", evaluate(a, w).to_string());
  return 0;
}

int cmd_value_profile(const std::string& ca_path, const std::string& lang_path, const Budgets& b) {
  CostAutomaton a = parse_cost_automaton(read_file(ca_path));
  Language lang = read_language(lang_path, b);
  if (!(a.alphabet == lang.alphabet())) throw AlphabetMismatch("cost automaton and language alphabets differ");
  auto profile = value_profile(a, lang.dfa, b.max_len);
  for (std::size_t n = 0; n < profile.size(); ++n)
    line("length_" + std::to_string(n), profile[n] ? profile[n]->to_string() : "none");
  return 0;
}

int cmd_simulate(const std::string& strategy_path, const std::string& ca_path, const std::string& lang_path,
                 std::uint64_t bound, const Budgets& b) {
  FiniteMemoryStrategy s = parse_strategy(read_file(strategy_path));
  CostAutomaton a = parse_cost_automaton(read_file(ca_path));
  Language lang = read_language(lang_path, b);
  if (!(a.alphabet == lang.alphabet()) || !(s.alphabet == a.alphabet))
    throw AlphabetMismatch("strategy, cost automaton and language alphabets differ");
  std::size_t checked = 0;
  for (const auto& w : words_up_to(a.alphabet, b.max_len)) {
    if (!lang.contains(w)) continue;
    ++checked;
    SimulationReport r = simulate_strategy_b(s, a, lang.dfa, w, bound);
    if (!r.ok) {
      line("words_checked", checked);
      line("result", "violation");
      line("item", r.item);
      line("word", show(w));
      line("round", r.position);
      line("message", r.message);
      return 0;
    }
  }
  line("words_checked", checked);
  line("result", "ok");
  return 0;
}

int cmd_export_dot(const std::string& path, const Budgets& b) {
  std::string text = read_file(path);
  std::string key = first_key(text);
  if (key.empty()) throw ParseError("empty file", 1, ParseError::Unit::Line);
  if (key == "costautomaton") std::cout << to_dot(parse_cost_automaton(text));
  else if (key == "strategy") std::cout << to_dot(parse_strategy(text));
  else if (key == "dfa") std::cout << to_dot(parse_dfa(text));
  else std::cout << to_dot(load_language(text, b.monoid).dfa);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Star height of regular languages via cost-automaton limitedness games"};
  app.require_subcommand(1);
  Budgets b;
  auto add_budgets = [&b](CLI::App* sub) {
    sub->add_option("--max-len", b.max_len, "Longest word probed");
    sub->add_option("--budget-states", b.states, "Largest arena, parity automaton and height automaton");
    sub->add_option("--budget-monoid", b.monoid, "Largest transition monoid");
    sub->add_option("--cert-out", b.cert_out, "Write the certificate here");
  };
  std::string file1, file2, file3, word;
  std::uint64_t bound = 0;

  auto* sh = app.add_subcommand("star-height", "Star height of a regex or DFA file");
  sh->add_option("language", file1, "Regex or DFA file")->required();
  add_budgets(sh);
  auto* lim = app.add_subcommand("limitedness", "Decide limitedness of a cost automaton over a language");
  lim->add_option("automaton", file1, "Cost automaton file")->required();
  lim->add_option("language", file2, "Regex or DFA file")->required();
  add_budgets(lim);
  auto* ev = app.add_subcommand("evaluate", "Value of a word (eps for the empty word)");
  ev->add_option("automaton", file1, "Cost automaton file")->required();
  ev->add_option("word", word, "Input word")->required();
  auto* vp = app.add_subcommand("value-profile", "Largest value per word length within a language");
  vp->add_option("automaton", file1, "Cost automaton file")->required();
  vp->add_option("language", file2, "Regex or DFA file")->required();
  add_budgets(vp);
  auto* sim = app.add_subcommand("simulate-strategy", "Check a strategy of player B on all words up to --max-len");
  sim->add_option("strategy", file1, "Strategy file")->required();
  sim->add_option("automaton", file2, "Cost automaton file")->required();
  sim->add_option("language", file3, "Regex or DFA file")->required();
  sim->add_option("--bound", bound, "Bound on run values")->required();
  add_budgets(sim);
  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering of any input file");
  dot->add_option("file", file1, "Cost automaton, DFA, regex or strategy file")->required();
  add_budgets(dot);

  CLI11_PARSE(app, argc, argv);
  try {
    if (sh->parsed()) return cmd_star_height(file1, b);
    if (lim->parsed()) return cmd_limitedness(file1, file2, b);
    if (ev->parsed()) return cmd_evaluate(file1, word);
    if (vp->parsed()) return cmd_value_profile(file1, file2, b);
    if (sim->parsed()) return cmd_simulate(file1, file2, file3, bound, b);
    if (dot->parsed()) return cmd_export_dot(file1, b);
  } catch (const ParseError& e) {
    std::cerr << "parse error (" << e.where() << "): " << e.what() << "\n";
    return kParseError;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const AlphabetMismatch& e) {
    std::cerr << "alphabet mismatch: " << e.what() << "\n";
    return kAlphabetMismatch;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
