#include "starheight/string_expression.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <tuple>

#include "starheight/errors.hpp"

namespace starheight {

bool StringExpression::well_formed() const {
  if (height == 0) {
    if (!blocks.empty()) return false;
    for (const auto& w : words)
      if (w.size() > degree) return false;
    return true;
  }
  if (!words.empty()) return false;
  for (const auto& block : blocks) {
    if (block.size() > degree) return false;
    for (const auto& f : block) {
      if (f.prefix.size() > degree || !f.iterated) return false;
      if (f.iterated->height >= height || f.iterated->degree > degree || !f.iterated->well_formed()) return false;
    }
  }
  return true;
}

namespace {

bool block_matches(const StringExpression::Block& block, std::size_t j, std::string_view w, std::size_t pos) {
  if (j == block.size()) return pos == w.size();
  const auto& f = block[j];
  if (w.substr(pos, f.prefix.size()) != f.prefix) return false;
  std::size_t start = pos + f.prefix.size();
  std::set<std::size_t> reach{start};
  std::vector<std::size_t> todo{start};
  while (!todo.empty()) {
    std::size_t p = todo.back();
    todo.pop_back();
    for (std::size_t q = p + 1; q <= w.size(); ++q)
      if (!reach.count(q) && string_expression_contains(*f.iterated, w.substr(p, q - p))) {
        reach.insert(q);
        todo.push_back(q);
      }
  }
  for (std::size_t r : reach)
    if (block_matches(block, j + 1, w, r)) return true;
  return false;
}

Regex word_regex(std::string_view w) {
  if (w.empty()) return Regex::epsilon();
  Regex r = Regex::letter(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) r = Regex::concat(r, Regex::letter(w[i]));
  return r;
}

Regex union_all(std::vector<Regex> parts) {
  if (parts.empty()) return Regex::empty();
  Regex r = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) r = Regex::union_of(r, parts[i]);
  return r;
}

}  // namespace

bool string_expression_contains(const StringExpression& e, std::string_view word) {
  if (e.height == 0) return std::find(e.words.begin(), e.words.end(), word) != e.words.end();
  for (const auto& block : e.blocks)
    if (block_matches(block, 0, word, 0)) return true;
  return false;
}

Regex to_regex(const StringExpression& e) {
  std::vector<Regex> parts;
  if (e.height == 0) {
    for (const auto& w : e.words) parts.push_back(word_regex(w));
    return union_all(parts);
  }
  for (const auto& block : e.blocks) {
    std::optional<Regex> r;
    for (const auto& f : block) {
      for (Regex piece : {word_regex(f.prefix), Regex::star(to_regex(*f.iterated))}) {
        if (piece.kind() == Regex::Kind::Epsilon) continue;
        r = r ? Regex::concat(*r, piece) : piece;
      }
    }
    parts.push_back(r ? *r : Regex::epsilon());
  }
  return union_all(parts);
}

std::string to_string(const StringExpression& e) { return to_string(to_regex(e)); }

namespace {

class SubsetOracle {
 public:
  SubsetOracle(const MonoidPresentation& monoid, std::size_t degree) : monoid_(monoid), degree_(degree) {
    for (ElementSet k = 0; k < (ElementSet{1} << monoid.size()); ++k) closures_.push_back(closure(k));
  }

  bool member(ElementSet target, std::size_t height, const std::string& u) {
    auto key = std::make_tuple(target, height, u);
    if (auto it = member_memo_.find(key); it != member_memo_.end()) return it->second;
    bool r;
    if (height == 0) {
      r = u.size() <= degree_ && ((target >> image(u)) & 1U);
    } else {
      std::set<std::tuple<std::size_t, std::size_t, ElementSet>> failed;
      r = search(target, height, u, 0, 0, ElementSet{1} << monoid_.identity(), failed);
    }
    member_memo_[key] = r;
    return r;
  }

 private:
  Element image(std::string_view w) const {
    Element x = monoid_.identity();
    for (Symbol a : w) x = monoid_.multiply(x, monoid_.letter(a));
    return x;
  }

  ElementSet closure(ElementSet gens) const {
    ElementSet s = ElementSet{1} << monoid_.identity();
    for (bool grew = true; grew;) {
      grew = false;
      for (Element x = 0; x < monoid_.size(); ++x) {
        if (!((s >> x) & 1U)) continue;
        for (Element y = 0; y < monoid_.size(); ++y) {
          if (!((gens >> y) & 1U)) continue;
          Element z = monoid_.multiply(x, y);
          if (!((s >> z) & 1U)) {
            s |= ElementSet{1} << z;
            grew = true;
          }
        }
      }
    }
    return s;
  }

  ElementSet product(ElementSet xs, ElementSet ys) const {
    ElementSet out = 0;
    for (Element x = 0; x < monoid_.size(); ++x)
      for (Element y = 0; y < monoid_.size(); ++y)
        if (((xs >> x) & 1U) && ((ys >> y) & 1U)) out |= ElementSet{1} << monoid_.multiply(x, y);
    return out;
  }

  // v in ([K]^m_h)*
  bool iterates(ElementSet k, std::size_t height, const std::string& v) {
    if (v.empty()) return true;
    auto key = std::make_tuple(k, height, v);
    if (auto it = star_memo_.find(key); it != star_memo_.end()) return it->second;
    bool r = false;
    for (std::size_t cut = 1; cut <= v.size() && !r; ++cut)
      r = member(k, height, v.substr(0, cut)) && iterates(k, height, v.substr(cut));
    star_memo_[key] = r;
    return r;
  }

  // blocks j+1.. of a factorisation of u[pos..], with X = w1 N1* ... wj Nj*
  bool search(ElementSet target, std::size_t height, const std::string& u, std::size_t pos, std::size_t j,
              ElementSet x, std::set<std::tuple<std::size_t, std::size_t, ElementSet>>& failed) {
    if (pos == u.size() && (j > 0 || u.empty()) && (x & ~target) == 0) return true;
    if (j == degree_) return false;
    if (failed.count({pos, j, x})) return false;
    for (std::size_t wlen = 0; wlen <= degree_ && pos + wlen <= u.size(); ++wlen) {
      Element w_image = image(std::string_view(u).substr(pos, wlen));
      for (ElementSet k = 0; k < closures_.size(); ++k) {
        ElementSet next = product(product(x, ElementSet{1} << w_image), closures_[k]);
        for (std::size_t vend = pos + wlen; vend <= u.size(); ++vend) {
          if (vend == pos) continue;  // empty blocks never help
          if (!iterates(k, height - 1, u.substr(pos + wlen, vend - pos - wlen))) continue;
          if (search(target, height, u, vend, j + 1, next, failed)) return true;
        }
      }
    }
    failed.insert({pos, j, x});
    return false;
  }

  const MonoidPresentation& monoid_;
  std::size_t degree_;
  std::vector<ElementSet> closures_;
  std::map<std::tuple<ElementSet, std::size_t, std::string>, bool> member_memo_;
  std::map<std::tuple<ElementSet, std::size_t, std::string>, bool> star_memo_;
};

void check_oracle_scale(const MonoidPresentation& monoid, std::size_t height, std::size_t degree,
                        std::string_view word) {
  if (word.size() > 10 || degree > 10 || height > 2 || monoid.size() > 8)
    throw BudgetExceeded("subset language oracle is limited to |w| <= 10, m <= 10, h <= 2, |M| <= 8");
}

}  // namespace

bool subset_language_member_oracle(const MonoidPresentation& monoid, const SubsetLanguage& n, std::string_view word) {
  check_oracle_scale(monoid, n.height, n.degree, word);
  return SubsetOracle(monoid, n.degree).member(n.subset, n.height, std::string(word));
}

Cost minimal_degree_oracle(const MonoidPresentation& monoid, ElementSet subset, std::size_t height,
                           std::string_view word) {
  std::size_t top = std::max<std::size_t>(word.size(), 1);
  for (std::size_t m = 0; m <= top; ++m)
    if (subset_language_member_oracle(monoid, {subset, height, m}, word)) return Cost(m);
  return Cost::infinity();
}

namespace {

Dfa dfa_of(const StringExpression& e, const Alphabet& alphabet) {
  return determinize_minimize(regex_to_nfa(to_regex(e), alphabet));
}

// All words of length <= m whose image lies in k.
std::shared_ptr<const StringExpression> short_words(const MonoidPresentation& monoid, const Alphabet& alphabet,
                                                    ElementSet k, std::size_t m) {
  auto e = std::make_shared<StringExpression>();
  e->height = 0;
  e->degree = m;
  for (const auto& w : words_up_to(alphabet, m))
    if (contains(k, monoid.image(w))) e->words.push_back(w);
  return e;
}

}  // namespace

std::optional<StringExpression> string_expression_reconstruct(const Language& language, std::size_t height,
                                                              std::size_t degree) {
  const auto& monoid = language.monoid;
  const auto& alphabet = language.alphabet();
  if (height > 1 || degree > 2 || (height == 1 && monoid.size() > 4))
    throw BudgetExceeded("string expression reconstruction is limited to h <= 1, m <= 2, |M| <= 4 at h = 1");

  if (height == 0) {
    StringExpression e;
    e.degree = degree;
    for (const auto& w : words_up_to(alphabet, degree))
      if (language.contains(w)) e.words.push_back(w);
    if (equivalent(dfa_of(e, alphabet), language.dfa)) return e;
    return std::nullopt;
  }

  struct Candidate {
    StringExpression::Block block;
    ElementSet x;
  };
  const ElementSet target = monoid.accepting_set();
  std::vector<ElementSet> subsets;
  for (ElementSet k = 0; k <= monoid.all(); ++k) subsets.push_back(k);
  // larger generating sets first: they give the more general blocks
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](ElementSet a, ElementSet b) { return std::popcount(a) > std::popcount(b); });
  auto prefixes = words_up_to(alphabet, degree);

  std::vector<Candidate> layer{{{}, singleton(monoid.identity())}};
  std::vector<StringExpression::Block> candidates;
  for (std::size_t i = 1; i <= degree; ++i) {
    std::vector<Candidate> next;
    for (const auto& c : layer)
      for (const auto& w : prefixes)
        for (ElementSet k : subsets) {
          ElementSet x = monoid.product(monoid.times(c.x, monoid.image(w)), monoid.generated_submonoid(k));
          Candidate d = c;
          d.block.push_back({w, short_words(monoid, alphabet, k, degree)});
          d.x = x;
          if ((x & ~target) == 0) candidates.push_back(d.block);
          next.push_back(std::move(d));
        }
    layer.swap(next);
  }

  StringExpression result;
  result.height = 1;
  result.degree = degree;
  Dfa covered = dfa_of(result, alphabet);
  if (contains(target, monoid.identity())) {
    result.blocks.push_back({});  // eps, the empty block
    covered = dfa_of(result, alphabet);
  }
  for (const auto& block : candidates) {
    if (equivalent(covered, language.dfa)) break;
    StringExpression single;
    single.height = 1;
    single.degree = degree;
    single.blocks.push_back(block);
    Dfa d = dfa_of(single, alphabet);
    if (is_subset(d, covered)) continue;
    result.blocks.push_back(block);
    covered = dfa_union(covered, d);
  }
  if (!equivalent(covered, language.dfa)) return std::nullopt;
  return result;
}

}  // namespace starheight
