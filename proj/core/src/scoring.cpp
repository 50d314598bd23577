#include "starheight/scoring.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "starheight/errors.hpp"

namespace starheight {

Score Score::zero(std::uint64_t m, std::size_t n) { return Score(m, n, false); }

Score Score::infinity(std::uint64_t m, std::size_t n) { return Score(m, n, true); }

Score Score::from_digits(std::uint64_t m, const std::vector<std::uint64_t>& digits) {
  if (digits.empty()) throw std::invalid_argument("a score has at least one digit");
  Score s(m, digits.size() - 1, false);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] > m) throw std::invalid_argument("digit exceeds the base bound");
    s.digits_[i] = digits[i];
  }
  return s;
}

std::uint64_t Score::value() const {
  if (infinite_) throw std::logic_error("infinite score has no numeric value");
  std::uint64_t v = 0;
  for (std::size_t i = digits_.size(); i-- > 0;) v = v * (m_ + 1) + digits_[i];
  return v;
}

std::string Score::to_string() const {
  if (infinite_) return "inf";
  std::string out = "(";
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(digits_[i]);
  }
  return out + ")";
}

std::strong_ordering Score::operator<=>(const Score& other) const {
  if (infinite_ || other.infinite_) return infinite_ <=> other.infinite_;
  // most significant digit first
  for (std::size_t i = std::max(digits_.size(), other.digits_.size()); i-- > 0;) {
    std::uint64_t x = i < digits_.size() ? digits_[i] : 0;
    std::uint64_t y = i < other.digits_.size() ? other.digits_[i] : 0;
    if (x != y) return x <=> y;
  }
  return std::strong_ordering::equal;
}

bool Score::operator==(const Score& other) const { return (*this <=> other) == 0; }

Score score_extend(const Score& s, const CounterAction& action) {
  if (s.infinite_ || action.kind == CounterAction::Kind::None) return s;
  const std::size_t k = action.counter;
  if (k > s.top()) throw std::invalid_argument("counter " + std::to_string(k) + " is outside the score");
  Score r = s;
  if (action.kind == CounterAction::Kind::Reset) {
    for (std::size_t i = 0; i <= k; ++i) r.digits_[i] = 0;
    return r;
  }
  for (std::size_t i = 0; i < k; ++i) r.digits_[i] = 0;
  std::size_t i = k;
  ++r.digits_[i];
  while (r.digits_[i] > r.m_) {
    r.digits_[i] = 0;
    if (++i > r.top()) return Score::infinity(r.m_, r.top());
    ++r.digits_[i];
  }
  return r;
}

Score score_extend(const Score& s, const ActionSeq& actions) {
  Score r = s;
  for (const auto& act : actions) r = score_extend(r, act);
  return r;
}

Score score_run(const CostAutomaton& a, const Run& run, std::uint64_t m) {
  Score s = Score::zero(m, a.num_counters - 1);
  for (auto id : run) s = score_extend(s, a.transitions.at(id).actions);
  return s;
}

std::uint64_t m_prime(std::uint64_t m, std::size_t n) {
  std::uint64_t p = 1;
  for (std::size_t i = 0; i <= n; ++i) {
    if (p > UINT64_MAX / (m + 1)) throw std::overflow_error("m' does not fit in 64 bits");
    p *= m + 1;
  }
  return p - 1;
}

Score score_run_numeric(const CostAutomaton& a, const Run& run, std::uint64_t m) {
  const std::size_t n = a.num_counters - 1;
  const std::uint64_t limit = m_prime(m, n);
  std::vector<std::uint64_t> power{1};
  for (std::size_t i = 0; i <= n; ++i) power.push_back(power.back() * (m + 1));
  std::uint64_t s = 0;
  for (auto id : run) {
    for (const auto& act : a.transitions.at(id).actions) {
      if (act.kind == CounterAction::Kind::Reset) {
        s = s / power[act.counter + 1] * power[act.counter + 1];
      } else if (act.kind == CounterAction::Kind::Increment) {
        s = s / power[act.counter] * power[act.counter] + power[act.counter];
        if (s > limit) return Score::infinity(m, n);
      }
    }
  }
  std::vector<std::uint64_t> digits;
  for (std::size_t i = 0; i <= n; ++i) digits.push_back(s / power[i] % (m + 1));
  return Score::from_digits(m, digits);
}

Score single_counter_extend(const Score& s, const CounterAction& action) {
  if (s.top() != 0) throw std::invalid_argument("single-counter scores have one digit");
  if (s.is_infinite() || action.kind == CounterAction::Kind::None) return s;
  if (action.kind == CounterAction::Kind::Reset) return Score::zero(s.base_bound(), 0);
  std::uint64_t next = s.value() + 1;
  if (next > s.base_bound()) return Score::infinity(s.base_bound(), 0);
  return Score::from_digits(s.base_bound(), {next});
}

FiniteMemoryStrategy optimal_run_strategy(const CostAutomaton& a, std::uint64_t m, std::size_t max_memory) {
  require_valid(a);
  const std::size_t n = a.num_counters - 1;
  using Memory = std::map<StateId, Score>;
  auto key_of = [](const Memory& mem) {
    std::vector<std::uint64_t> key;
    for (const auto& [q, s] : mem) {
      key.push_back(q);
      key.insert(key.end(), s.digits().begin(), s.digits().end());
    }
    return key;
  };
  OutgoingIndex out(a);
  std::vector<Memory> memories;
  std::map<std::vector<std::uint64_t>, StateId> ids;
  FiniteMemoryStrategy s;
  s.alphabet = a.alphabet;
  // the output depends on the previous memory, so it is part of the state
  auto intern = [&](const Memory& mem, std::vector<std::size_t> output) {
    auto key = key_of(mem);
    key.push_back(UINT64_MAX);
    key.insert(key.end(), output.begin(), output.end());
    auto [it, fresh] = ids.emplace(key, static_cast<StateId>(memories.size()));
    if (fresh) {
      if (memories.size() >= max_memory)
        throw BudgetExceeded("optimal-run strategy exceeds " + std::to_string(max_memory) + " memory states");
      memories.push_back(mem);
      s.state_names.push_back("m" + std::to_string(it->second));
      s.output.push_back(std::move(output));
      s.delta.emplace_back(a.alphabet.size(), 0);
    }
    return it->second;
  };
  Memory start;
  for (StateId q : a.initial) start.emplace(q, Score::zero(m, n));
  s.initial = intern(start, {});
  for (std::size_t i = 0; i < memories.size(); ++i) {
    for (std::size_t li = 0; li < a.alphabet.size(); ++li) {
      const Symbol x = a.alphabet[li];
      const Memory cur = memories[i];
      Memory next;
      std::vector<std::pair<std::size_t, Score>> candidates;
      for (const auto& [p, sp] : cur)
        for (auto id : out.from(p, x)) {
          Score sc = score_extend(sp, a.transitions[id].actions);
          if (sc.is_infinite()) continue;
          candidates.emplace_back(id, sc);
          StateId q = a.transitions[id].target;
          auto it = next.find(q);
          if (it == next.end()) next.emplace(q, sc);
          else if (sc < it->second) it->second = sc;
        }
      std::vector<std::size_t> chosen;
      for (const auto& [id, sc] : candidates)
        if (next.at(a.transitions[id].target) == sc) chosen.push_back(id);
      std::sort(chosen.begin(), chosen.end());
      s.delta[i][li] = intern(next, chosen);
    }
  }
  return s;
}

}  // namespace starheight
