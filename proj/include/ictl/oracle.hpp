// Reference semantics evaluated straight from the satisfaction clauses.
//
// Nothing here iterates a fixpoint. Implication and the universal
// modalities quantify explicitly over the P-successors of a world; the path
// clauses are decided by graph search (reachability and cycle detection) on
// the transition relation. lasso_check goes one step further and evaluates
// each path clause on every simple lasso, which is exact on finite models.

#ifndef ICTL_ORACLE_HPP
#define ICTL_ORACLE_HPP

#include <span>
#include <string>
#include <vector>

#include "ictl/formula.hpp"
#include "ictl/lasso.hpp"
#include "ictl/model.hpp"

namespace ictl {

/// Intuitionistic verdict at `w`. Throws InvalidFrame for invalid models and
/// std::out_of_range for unknown worlds.
bool oracle_check(const BirelationalModel& m, WorldIndex w, const Formula& f);
bool oracle_check(const BirelationalModel& m, const std::string& world,
                  const Formula& f);
/// All worlds where the oracle holds `f`.
WorldSet oracle_denotation(const BirelationalModel& m, const Formula& f);
/// Oracle verdicts for the top operator of `node` given the worlds where its
/// operands hold. Does not check model validity.
WorldSet oracle_apply(const BirelationalModel& m, const Formula& node,
                      std::span<const WorldSet> args);

/// Classical CTL over the transition relation alone: the preorder is ignored,
/// implication is material and path quantifiers start at `w` itself. Needs
/// only a serial transition relation.
bool classical_check(const BirelationalModel& m, WorldIndex w,
                     const Formula& f);
WorldSet classical_denotation(const BirelationalModel& m, const Formula& f);

/// Every lasso from `from` whose worlds prefix·cycle are pairwise distinct.
std::vector<Lasso> enumerate_lassos(const BirelationalModel& m,
                                    WorldIndex from);

/// Intuitionistic verdicts for every world, with path clauses decided by
/// brute force over enumerate_lassos.
WorldSet lasso_denotation(const BirelationalModel& m, const Formula& f);
bool lasso_check(const BirelationalModel& m, WorldIndex w, const Formula& f);

enum class PathClause { Next, Until, Release };

/// Truth of X a, (a U b) or (a R b) along the infinite path a lasso denotes,
/// given the sets where a and b hold.
bool path_satisfies(const Lasso& path, PathClause clause, const WorldSet& a,
                    const WorldSet& b);

/// Lifts an R-path `prefix` starting at some w with w P w_prime to a path
/// from w_prime with prefix[i] P result[i] at each position, picking the
/// lowest-index successor each step. Throws InvalidFrame if no such
/// successor exists, which only happens when C2 fails.
std::vector<WorldIndex> lift_path(const BirelationalModel& m,
                                  WorldIndex w_prime,
                                  const std::vector<WorldIndex>& prefix);

}  // namespace ictl

#endif  // ICTL_ORACLE_HPP
