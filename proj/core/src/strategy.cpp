#include "starheight/strategy.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "starheight/errors.hpp"
#include "text_format.hpp"

namespace starheight {

StateId FiniteMemoryStrategy::run(std::string_view word) const {
  StateId m = initial;
  for (Symbol a : word) m = step(m, a);
  return m;
}

std::vector<std::vector<std::size_t>> FiniteMemoryStrategy::play(std::string_view word) const {
  std::vector<std::vector<std::size_t>> out;
  StateId m = initial;
  for (Symbol a : word) {
    m = step(m, a);
    out.push_back(output[m]);
  }
  return out;
}

FiniteMemoryStrategy minimize(const FiniteMemoryStrategy& s) {
  const std::size_t k = s.alphabet.size();
  // reachable states in BFS order
  std::vector<long> order_of(s.num_states(), -1);
  std::vector<StateId> order{s.initial};
  order_of[s.initial] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t a = 0; a < k; ++a) {
      StateId r = s.delta[order[i]][a];
      if (order_of[r] < 0) {
        order_of[r] = static_cast<long>(order.size());
        order.push_back(r);
      }
    }
  // Moore refinement; the initial state is kept apart since its output is unused
  std::map<std::pair<bool, std::vector<std::size_t>>, std::size_t> first;
  std::vector<std::size_t> block(s.num_states(), 0);
  for (StateId q : order)
    block[q] = first.emplace(std::make_pair(q == s.initial, s.output[q]), first.size()).first->second;
  std::size_t count = first.size();
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> sig_ids;
    std::vector<std::size_t> next(s.num_states(), 0);
    for (StateId q : order) {
      std::vector<std::size_t> sig{block[q]};
      for (std::size_t a = 0; a < k; ++a) sig.push_back(block[s.delta[q][a]]);
      next[q] = sig_ids.emplace(sig, sig_ids.size()).first->second;
    }
    block.swap(next);
    if (sig_ids.size() == count) break;
    count = sig_ids.size();
  }
  // renumber blocks in BFS order from the initial block
  std::map<std::size_t, StateId> ids;
  std::vector<StateId> reps;
  for (StateId q : order)
    if (ids.emplace(block[q], static_cast<StateId>(reps.size())).second) reps.push_back(q);
  FiniteMemoryStrategy r;
  r.alphabet = s.alphabet;
  r.initial = 0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    r.state_names.push_back("m" + std::to_string(i));
    r.output.push_back(s.output[reps[i]]);
    std::vector<StateId> row;
    for (std::size_t a = 0; a < k; ++a) row.push_back(ids.at(block[s.delta[reps[i]][a]]));
    r.delta.push_back(row);
  }
  // BFS order of the quotient
  std::vector<long> pos(reps.size(), -1);
  std::vector<StateId> bfs{0};
  pos[0] = 0;
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (StateId t : r.delta[bfs[i]])
      if (pos[t] < 0) pos[t] = static_cast<long>(bfs.size()), bfs.push_back(t);
  FiniteMemoryStrategy out;
  out.alphabet = r.alphabet;
  out.state_names = r.state_names;
  for (StateId q : bfs) {
    std::vector<StateId> row;
    for (StateId t : r.delta[q]) row.push_back(static_cast<StateId>(pos[t]));
    out.delta.push_back(row);
    out.output.push_back(r.output[q]);
  }
  return out;
}

namespace {

std::vector<std::size_t> parse_id_set(const std::string& text, const detail::Line& line) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') detail::fail("expected '{id,...}'", line);
  std::vector<std::size_t> ids;
  std::string body = text.substr(1, text.size() - 2);
  std::size_t start = 0;
  while (start < body.size()) {
    std::size_t comma = body.find(',', start);
    if (comma == std::string::npos) comma = body.size();
    std::string tok = body.substr(start, comma - start);
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      detail::fail("bad transition id '" + tok + "'", line);
    ids.push_back(std::stoul(tok));
    start = comma + 1;
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace

FiniteMemoryStrategy parse_strategy(std::string_view text) {
  using namespace detail;
  auto lines = read_lines(text);
  if (lines.empty()) throw ParseError("empty strategy file", 1, ParseError::Unit::Line);
  if (lines[0].key != "strategy" || lines[0].has_colon || !lines[0].values.empty())
    fail("expected 'strategy' header", lines[0]);
  FiniteMemoryStrategy s;
  bool have_alphabet = false, have_states = false, have_initial = false;
  std::map<std::string, StateId> ids;
  std::vector<std::vector<long>> delta;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.key == "alphabet") {
      s.alphabet = parse_alphabet(line);
      have_alphabet = true;
    } else if (line.key == "states") {
      if (!have_alphabet) fail("'alphabet' must precede 'states'", line);
      s.state_names = line.values;
      ids = index_names(line.values, line);
      delta.assign(line.values.size(), std::vector<long>(s.alphabet.size(), -1));
      s.output.assign(line.values.size(), {});
      have_states = true;
    } else if (line.key == "initial") {
      if (!have_states) fail("'states' must precede 'initial'", line);
      if (line.values.size() != 1) fail("a strategy has exactly one initial state", line);
      s.initial = lookup(ids, line.values[0], line);
      have_initial = true;
    } else if (line.key == "trans") {
      if (!have_states) fail("'states' must precede transitions", line);
      if (line.values.size() != 3 || line.values[1].size() != 1) fail("expected 'trans: m a m2'", line);
      StateId from = lookup(ids, line.values[0], line);
      Symbol a = line.values[1][0];
      if (!s.alphabet.contains(a)) fail(std::string("letter '") + a + "' is not in the alphabet", line);
      long& slot = delta[from][s.alphabet.index(a)];
      if (slot >= 0) fail("duplicate transition", line);
      slot = lookup(ids, line.values[2], line);
    } else if (line.key == "out") {
      if (!have_states) fail("'states' must precede outputs", line);
      if (line.values.size() < 2 || line.values[1] != "->") fail("expected 'out: m -> {ids}'", line);
      std::string set;
      for (std::size_t j = 2; j < line.values.size(); ++j) set += line.values[j];
      s.output[lookup(ids, line.values[0], line)] = parse_id_set(set, line);
    } else {
      fail("unknown key '" + line.key + "'", line);
    }
  }
  if (!have_states || !have_initial)
    throw ParseError("strategy needs 'states' and 'initial'", lines.back().number, ParseError::Unit::Line);
  for (std::size_t q = 0; q < delta.size(); ++q) {
    std::vector<StateId> row;
    for (std::size_t a = 0; a < s.alphabet.size(); ++a) {
      if (delta[q][a] < 0)
        throw ParseError("missing transition from '" + s.state_names[q] + "' on '" + s.alphabet[a] + "'",
                         lines.back().number, ParseError::Unit::Line);
      row.push_back(static_cast<StateId>(delta[q][a]));
    }
    s.delta.push_back(row);
  }
  return s;
}

std::string print_strategy(const FiniteMemoryStrategy& s) {
  std::string out = "strategy\nalphabet: " + s.alphabet.to_string() + "\nstates: " + detail::join(s.state_names) +
                    "\ninitial: " + s.state_names[s.initial] + "\n";
  for (std::size_t q = 0; q < s.num_states(); ++q)
    for (std::size_t a = 0; a < s.alphabet.size(); ++a)
      out += "trans: " + s.state_names[q] + " " + s.alphabet[a] + " " + s.state_names[s.delta[q][a]] + "\n";
  for (std::size_t q = 0; q < s.num_states(); ++q) {
    if (s.output[q].empty()) continue;
    out += "out: " + s.state_names[q] + " -> {";
    for (std::size_t i = 0; i < s.output[q].size(); ++i) {
      if (i) out += ',';
      out += std::to_string(s.output[q][i]);
    }
    out += "}\n";
  }
  return out;
}

}  // namespace starheight
