#include "starheight/monoid.hpp"

#include <bit>
#include <map>

#include "starheight/errors.hpp"

namespace starheight {

MonoidPresentation::MonoidPresentation(Alphabet alphabet, std::vector<std::vector<Element>> table,
                                       Element identity, std::vector<Element> letter_image,
                                       std::vector<bool> accepting)
    : alphabet_(std::move(alphabet)),
      table_(std::move(table)),
      identity_(identity),
      letter_image_(std::move(letter_image)),
      accepting_(std::move(accepting)) {}

Element MonoidPresentation::image(std::string_view word) const {
  Element x = identity_;
  for (Symbol a : word) x = multiply(x, letter(a));
  return x;
}

ElementSet MonoidPresentation::accepting_set() const {
  ElementSet s = 0;
  for (Element x = 0; x < size(); ++x)
    if (accepting_[x]) s |= singleton(x);
  return s;
}

ElementSet MonoidPresentation::all() const { return size() == 64 ? ~ElementSet{0} : (ElementSet{1} << size()) - 1; }

ElementSet MonoidPresentation::generated_submonoid(ElementSet gens) const {
  ElementSet closure = singleton(identity_);
  ElementSet frontier = closure;
  while (frontier) {
    ElementSet next = 0;
    for (ElementSet f = frontier; f; f &= f - 1) {
      Element x = static_cast<Element>(std::countr_zero(f));
      for (ElementSet g = gens; g; g &= g - 1) {
        Element y = static_cast<Element>(std::countr_zero(g));
        Element z = multiply(x, y);
        if (!contains(closure, z)) next |= singleton(z);
      }
    }
    closure |= next;
    frontier = next;
  }
  return closure;
}

ElementSet MonoidPresentation::product(ElementSet lhs, ElementSet rhs) const {
  ElementSet out = 0;
  for (ElementSet l = lhs; l; l &= l - 1)
    for (ElementSet r = rhs; r; r &= r - 1)
      out |= singleton(multiply(static_cast<Element>(std::countr_zero(l)), static_cast<Element>(std::countr_zero(r))));
  return out;
}

ElementSet MonoidPresentation::times(ElementSet lhs, Element y) const {
  ElementSet out = 0;
  for (ElementSet l = lhs; l; l &= l - 1) out |= singleton(multiply(static_cast<Element>(std::countr_zero(l)), y));
  return out;
}

bool MonoidPresentation::satisfies_monoid_laws() const {
  for (Element x = 0; x < size(); ++x) {
    if (multiply(identity_, x) != x || multiply(x, identity_) != x) return false;
    for (Element y = 0; y < size(); ++y)
      for (Element z = 0; z < size(); ++z)
        if (multiply(multiply(x, y), z) != multiply(x, multiply(y, z))) return false;
  }
  return true;
}

MonoidPresentation transition_monoid(const Dfa& d, std::size_t max_size) {
  max_size = std::min<std::size_t>(max_size, 64);
  using Transformation = std::vector<StateId>;
  std::map<Transformation, Element> ids;
  std::vector<Transformation> elements;
  auto intern = [&](Transformation t) {
    auto [it, fresh] = ids.emplace(t, static_cast<Element>(elements.size()));
    if (fresh) {
      if (elements.size() >= max_size)
        throw BudgetExceeded("transition monoid exceeds " + std::to_string(max_size) + " elements");
      elements.push_back(std::move(t));
    }
    return it->second;
  };
  Transformation id(d.num_states());
  for (StateId q = 0; q < d.num_states(); ++q) id[q] = q;
  Element identity = intern(id);
  std::vector<Element> letters;
  for (std::size_t a = 0; a < d.alphabet.size(); ++a) {
    Transformation t(d.num_states());
    for (StateId q = 0; q < d.num_states(); ++q) t[q] = d.delta[q][a];
    letters.push_back(intern(t));
  }
  // closure under right multiplication by letters reaches every word image
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (Element l : letters) {
      Transformation t(d.num_states());
      for (StateId q = 0; q < d.num_states(); ++q) t[q] = elements[l][elements[i][q]];
      intern(t);
    }
  }
  std::size_t n = elements.size();
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      Transformation t(d.num_states());
      for (StateId q = 0; q < d.num_states(); ++q) t[q] = elements[y][elements[x][q]];
      table[x][y] = ids.at(t);
    }
  std::vector<bool> accepting(n);
  for (std::size_t x = 0; x < n; ++x) accepting[x] = d.final[elements[x][d.initial]];
  return MonoidPresentation(d.alphabet, std::move(table), identity, std::move(letters), std::move(accepting));
}

}  // namespace starheight
