#include "ictl/lasso.hpp"

#include <algorithm>
#include <stdexcept>

namespace ictl {

bool is_path_in(const BirelationalModel& m, const Lasso& l) {
  if (l.cycle.empty()) return false;
  for (std::size_t i = 0; i < l.span(); ++i) {
    auto a = l.at(i);
    auto b = l.at(i + 1);
    if (a >= m.size() || b >= m.size() || !m.transition(a, b)) return false;
  }
  return true;
}

Lasso close_into_lasso(const BirelationalModel& m,
                       std::vector<WorldIndex> path) {
  if (path.empty()) throw std::invalid_argument("empty path");
  for (;;) {
    const WorldSet& next = m.successors(path.back());
    if (next.empty()) throw InvalidFrame("dead end while closing a lasso");
    WorldIndex u = next.first();
    auto it = std::find(path.begin(), path.end(), u);
    if (it != path.end()) {
      Lasso l;
      l.prefix.assign(path.begin(), it);
      l.cycle.assign(it, path.end());
      return l;
    }
    path.push_back(u);
  }
}

Lasso lasso_from_walk(const std::vector<WorldIndex>& walk) {
  for (std::size_t k = 1; k < walk.size(); ++k) {
    auto it = std::find(walk.begin(), walk.begin() + static_cast<long>(k),
                        walk[k]);
    if (it != walk.begin() + static_cast<long>(k)) {
      Lasso l;
      l.prefix.assign(walk.begin(), it);
      l.cycle.assign(it, walk.begin() + static_cast<long>(k));
      return l;
    }
  }
  throw std::invalid_argument("walk does not revisit a world");
}

std::string lasso_text(const BirelationalModel& m, const Lasso& l) {
  std::string out;
  for (auto w : l.prefix) out += m.name(w) + " ";
  out += "(";
  for (std::size_t i = 0; i < l.cycle.size(); ++i) {
    if (i) out += " ";
    out += m.name(l.cycle[i]);
  }
  return out + ")^w";
}

}  // namespace ictl
