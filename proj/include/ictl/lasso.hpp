// Finite representation prefix · cycle^ω of an infinite transition path.

#ifndef ICTL_LASSO_HPP
#define ICTL_LASSO_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "ictl/model.hpp"

namespace ictl {

struct Lasso {
  std::vector<WorldIndex> prefix;
  std::vector<WorldIndex> cycle;  // non-empty

  /// Number of positions before the path starts repeating.
  std::size_t span() const noexcept { return prefix.size() + cycle.size(); }
  WorldIndex at(std::size_t i) const {
    if (i < prefix.size()) return prefix[i];
    return cycle[(i - prefix.size()) % cycle.size()];
  }
  WorldIndex start() const { return at(0); }

  friend bool operator==(const Lasso&, const Lasso&) = default;
};

/// Whether every consecutive pair, including the seam and the wrap-around,
/// is a transition of `m`.
bool is_path_in(const BirelationalModel& m, const Lasso& l);

/// Completes a finite path whose worlds are pairwise distinct into a simple
/// lasso by following lowest-index successors until a world repeats.
Lasso close_into_lasso(const BirelationalModel& m,
                       std::vector<WorldIndex> path);

/// Same, but the walk may revisit worlds inside `path`: the cycle closes at
/// the first repeated world.
Lasso lasso_from_walk(const std::vector<WorldIndex>& walk);

std::string lasso_text(const BirelationalModel& m, const Lasso& l);

}  // namespace ictl

#endif  // ICTL_LASSO_HPP
