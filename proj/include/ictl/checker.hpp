// Fixpoint labeling engine.
//
// Denotations are computed bottom-up over the subformula list. Implication
// and the universal modalities take the upward interior (along P) of their
// classical counterpart; the existential modalities use the classical
// transition fixpoints unchanged:
//
//   [[a -> b]]   = ([[a]]^c ∪ [[b]])↑
//   [[EX a]]     = Pre∃([[a]])
//   [[AX a]]     = (Pre∀([[a]]))↑
//   [[E(a U b)]] = lfp Z. [[b]] ∪ ([[a]] ∩ Pre∃(Z))
//   [[E(a R b)]] = gfp Z. [[b]] ∩ ([[a]] ∪ Pre∃(Z))
//   [[A(a U b)]] = (lfp Z. [[b]] ∪ ([[a]] ∩ Pre∀(Z)))↑
//   [[A(a R b)]] = (gfp Z. [[b]] ∩ ([[a]] ∪ Pre∀(Z)))↑

#ifndef ICTL_CHECKER_HPP
#define ICTL_CHECKER_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ictl/formula.hpp"
#include "ictl/lasso.hpp"
#include "ictl/model.hpp"

namespace ictl {

/// Least fixed point of a monotone transformer, iterating upward from {}.
template <class Step>
WorldSet lfp(std::size_t universe, Step&& step) {
  WorldSet z(universe);
  for (std::size_t round = 0; round <= universe + 1; ++round) {
    WorldSet next = step(z);
    if (next == z) return z;
    z = std::move(next);
  }
  throw std::logic_error("lfp: transformer is not monotone");
}

/// Greatest fixed point of a monotone transformer, iterating down from W.
template <class Step>
WorldSet gfp(std::size_t universe, Step&& step) {
  WorldSet z = WorldSet::full(universe);
  for (std::size_t round = 0; round <= universe + 1; ++round) {
    WorldSet next = step(z);
    if (next == z) return z;
    z = std::move(next);
  }
  throw std::logic_error("gfp: transformer is not monotone");
}

/// Deliberate faults for mutation testing the differential harness.
enum class Mutation {
  None,
  AxWithoutUpInterior,
};

struct CheckerOptions {
  Mutation mutation = Mutation::None;
};

class Denotation {
 public:
  void add(const Formula& f, WorldSet worlds);
  const WorldSet& at(const Formula& f) const;
  bool contains(const Formula& f) const { return index_.count(f) != 0; }
  /// Entries in post-order of the formula they were computed for.
  const std::vector<std::pair<Formula, WorldSet>>& entries() const noexcept {
    return entries_;
  }

 private:
  std::vector<std::pair<Formula, WorldSet>> entries_;
  std::unordered_map<Formula, std::size_t> index_;
};

/// Denotation of the top operator of `node` given the denotations of its
/// operands (atoms read the valuation). denote() is the post-order fold of
/// this function. Does not check model validity.
WorldSet apply_operator(const BirelationalModel& m, const Formula& node,
                        std::span<const WorldSet> args,
                        const CheckerOptions& options = {});

/// Throws InvalidFrame for models that are not valid birelational models.
Denotation denote(const BirelationalModel& m, const Formula& f,
                  const CheckerOptions& options = {});

/// Evidence behind a verdict. For a satisfied existential modality `path` is
/// a lasso from the world itself. For a failed universal modality or
/// implication `upper_world` is a P-successor where the classical condition
/// breaks and `path` (when present) starts there.
struct Witness {
  std::optional<WorldIndex> upper_world;
  std::optional<Lasso> path;
};

struct CheckOutcome {
  bool satisfied = false;
  std::optional<Witness> witness;
};

CheckOutcome check(const BirelationalModel& m, WorldIndex w, const Formula& f,
                   const CheckerOptions& options = {});
/// Throws std::out_of_range for unknown world names.
CheckOutcome check(const BirelationalModel& m, const std::string& world,
                   const Formula& f, const CheckerOptions& options = {});

bool valid_in_model(const BirelationalModel& m, const Formula& f,
                    const CheckerOptions& options = {});

}  // namespace ictl

#endif  // ICTL_CHECKER_HPP
