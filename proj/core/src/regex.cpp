#include "starheight/regex.hpp"

#include <cctype>
#include <map>
#include <set>
#include <tuple>

#include "starheight/errors.hpp"

namespace starheight {

Regex Regex::empty() { return Regex(std::make_shared<const Node>(Node{Kind::Empty, 0, {}, {}})); }

Regex Regex::epsilon() {
  return Regex(std::make_shared<const Node>(Node{Kind::Epsilon, 0, {}, {}}));
}

Regex Regex::letter(Symbol s) {
  return Regex(std::make_shared<const Node>(Node{Kind::Letter, s, {}, {}}));
}

Regex Regex::union_of(Regex left, Regex right) {
  return Regex(std::make_shared<const Node>(Node{Kind::Union, 0,
                                                 std::make_shared<const Regex>(std::move(left)),
                                                 std::make_shared<const Regex>(std::move(right))}));
}

Regex Regex::concat(Regex left, Regex right) {
  return Regex(std::make_shared<const Node>(Node{Kind::Concat, 0,
                                                 std::make_shared<const Regex>(std::move(left)),
                                                 std::make_shared<const Regex>(std::move(right))}));
}

Regex Regex::star(Regex child) {
  return Regex(std::make_shared<const Node>(
      Node{Kind::Star, 0, std::make_shared<const Regex>(std::move(child)), {}}));
}

bool Regex::operator==(const Regex& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Empty:
    case Kind::Epsilon:
      return true;
    case Kind::Letter:
      return symbol() == other.symbol();
    case Kind::Star:
      return child() == other.child();
    case Kind::Union:
    case Kind::Concat:
      return left() == other.left() && right() == other.right();
  }
  return false;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

  Regex parse() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty regular expression (use 'eps' for the empty word)", pos_);
    Regex e = expr();
    skip_space();
    if (pos_ != text_.size()) {
      if (text_[pos_] == ')') throw ParseError("unmatched ')'", pos_);
      throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_keyword(std::string_view kw) const { return text_.substr(pos_, kw.size()) == kw; }

  bool starts_base() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == '(' || std::isalnum(static_cast<unsigned char>(c));
  }

  Regex expr() {
    Regex e = term();
    skip_space();
    while (pos_ < text_.size() && text_[pos_] == '+') {
      ++pos_;
      e = Regex::union_of(std::move(e), term());
      skip_space();
    }
    return e;
  }

  Regex term() {
    if (!starts_base()) {
      if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
      throw ParseError(std::string("expected an operand before '") + text_[pos_] + "'", pos_);
    }
    Regex e = factor();
    while (starts_base()) e = Regex::concat(std::move(e), factor());
    return e;
  }

  Regex factor() {
    Regex e = base();
    skip_space();
    while (pos_ < text_.size() && text_[pos_] == '*') {
      ++pos_;
      e = Regex::star(std::move(e));
      skip_space();
    }
    return e;
  }

  Regex base() {
    skip_space();
    if (text_[pos_] == '(') {
      std::size_t open = pos_++;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ')') throw ParseError("empty parentheses", pos_);
      Regex e = expr();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("unmatched '('", open);
      ++pos_;
      return e;
    }
    if (at_keyword("empty")) {
      pos_ += 5;
      return Regex::empty();
    }
    if (at_keyword("eps")) {
      pos_ += 3;
      return Regex::epsilon();
    }
    char c = text_[pos_];
    if (!alphabet_.contains(c)) throw ParseError(std::string("letter '") + c + "' is not in the alphabet", pos_);
    ++pos_;
    return Regex::letter(c);
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

// Precedence levels: 0 union, 1 concat, 2 star/atom.
int precedence(const Regex& e) {
  switch (e.kind()) {
    case Regex::Kind::Union:
      return 0;
    case Regex::Kind::Concat:
      return 1;
    default:
      return 2;
  }
}

void print(const Regex& e, int context, std::string& out) {
  bool parens = precedence(e) < context;
  if (parens) out += '(';
  switch (e.kind()) {
    case Regex::Kind::Empty:
      out += "empty";
      break;
    case Regex::Kind::Epsilon:
      out += "eps";
      break;
    case Regex::Kind::Letter:
      out += e.symbol();
      break;
    case Regex::Kind::Union:
      print(e.left(), 0, out);
      out += '+';
      // union is parsed left-associatively
      print(e.right(), 1, out);
      break;
    case Regex::Kind::Concat: {
      print(e.left(), 1, out);
      std::size_t boundary = out.size();
      print(e.right(), 2, out);
      // letters glued across the boundary must not spell a keyword
      for (std::size_t k = boundary >= 4 ? boundary - 4 : 0; k < boundary; ++k) {
        std::string_view rest(out.data() + k, out.size() - k);
        bool eps = rest.substr(0, 3) == "eps" && k + 3 > boundary;
        bool emp = rest.substr(0, 5) == "empty" && k + 5 > boundary;
        if (eps || emp) {
          out.insert(boundary, 1, ' ');
          break;
        }
      }
      break;
    }
    case Regex::Kind::Star:
      print(e.child(), 2, out);
      out += '*';
      break;
  }
  if (parens) out += ')';
}

void collect_letters(const Regex& e, std::set<Symbol>& out) {
  switch (e.kind()) {
    case Regex::Kind::Letter:
      out.insert(e.symbol());
      break;
    case Regex::Kind::Union:
    case Regex::Kind::Concat:
      collect_letters(e.left(), out);
      collect_letters(e.right(), out);
      break;
    case Regex::Kind::Star:
      collect_letters(e.child(), out);
      break;
    default:
      break;
  }
}

class Matcher {
 public:
  explicit Matcher(std::string_view word) : word_(word) {}

  // Does e match word_[i, j)?
  bool match(const Regex& e, std::size_t i, std::size_t j) {
    auto key = std::make_tuple(&e, i, j);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool r = false;
    switch (e.kind()) {
      case Regex::Kind::Empty:
        r = false;
        break;
      case Regex::Kind::Epsilon:
        r = i == j;
        break;
      case Regex::Kind::Letter:
        r = j == i + 1 && word_[i] == e.symbol();
        break;
      case Regex::Kind::Union:
        r = match(e.left(), i, j) || match(e.right(), i, j);
        break;
      case Regex::Kind::Concat:
        for (std::size_t k = i; k <= j && !r; ++k) r = match(e.left(), i, k) && match(e.right(), k, j);
        break;
      case Regex::Kind::Star:
        if (i == j) {
          r = true;
        } else {
          // first iteration is nonempty
          for (std::size_t k = i + 1; k <= j && !r; ++k) r = match(e.child(), i, k) && match(e, k, j);
        }
        break;
    }
    memo_[key] = r;
    return r;
  }

 private:
  std::string_view word_;
  std::map<std::tuple<const Regex*, std::size_t, std::size_t>, bool> memo_;
};

}  // namespace

Regex parse_regex(std::string_view text, const Alphabet& alphabet) { return Parser(text, alphabet).parse(); }

std::string to_string(const Regex& e) {
  std::string out;
  print(e, 0, out);
  return out;
}

std::size_t expression_star_height(const Regex& e) {
  switch (e.kind()) {
    case Regex::Kind::Union:
    case Regex::Kind::Concat:
      return std::max(expression_star_height(e.left()), expression_star_height(e.right()));
    case Regex::Kind::Star:
      return 1 + expression_star_height(e.child());
    default:
      return 0;
  }
}

Alphabet letters_of(const Regex& e) {
  std::set<Symbol> s;
  collect_letters(e, s);
  return Alphabet(std::vector<Symbol>(s.begin(), s.end()));
}

bool regex_matches(const Regex& e, std::string_view word) { return Matcher(word).match(e, 0, word.size()); }

std::vector<Word> words_of_length(const Alphabet& alphabet, std::size_t length) {
  std::vector<Word> out;
  if (alphabet.size() == 0) {
    if (length == 0) out.emplace_back();
    return out;
  }
  Word w(length, alphabet[0]);
  std::vector<std::size_t> idx(length, 0);
  while (true) {
    out.push_back(w);
    std::size_t k = length;
    while (k > 0) {
      --k;
      if (++idx[k] < alphabet.size()) {
        w[k] = alphabet[idx[k]];
        break;
      }
      idx[k] = 0;
      w[k] = alphabet[0];
      if (k == 0) return out;
    }
    if (length == 0) return out;
  }
}

std::vector<Word> words_up_to(const Alphabet& alphabet, std::size_t max_length) {
  std::vector<Word> out;
  for (std::size_t n = 0; n <= max_length; ++n) {
    auto layer = words_of_length(alphabet, n);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace starheight
