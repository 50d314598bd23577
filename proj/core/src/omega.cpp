#include "starheight/omega.hpp"

namespace starheight::detail {

bool has_accepting_cycle(const std::vector<std::vector<std::size_t>>& edges, const std::vector<bool>& accepting,
                         const std::vector<std::size_t>& start) {
  const std::size_t n = edges.size();
  std::vector<bool> reach(n, false);
  std::vector<std::size_t> todo;
  for (auto s : start)
    if (!reach[s]) reach[s] = true, todo.push_back(s);
  while (!todo.empty()) {
    auto x = todo.back();
    todo.pop_back();
    for (auto y : edges[x])
      if (!reach[y]) reach[y] = true, todo.push_back(y);
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (!reach[s] || !accepting[s]) continue;
    std::vector<bool> seen(n, false);
    todo.assign(edges[s].begin(), edges[s].end());
    for (auto y : todo) seen[y] = true;
    while (!todo.empty()) {
      auto x = todo.back();
      todo.pop_back();
      if (x == s) return true;
      for (auto y : edges[x])
        if (!seen[y]) seen[y] = true, todo.push_back(y);
    }
  }
  return false;
}

}  // namespace starheight::detail
