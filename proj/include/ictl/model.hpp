// Finite birelational Kripke models.
//
// A model has a preorder P (knowledge refinement), a serial transition
// relation R (system steps) and a valuation that is monotone along P. The
// frame must satisfy two commutation conditions:
//
//   C1: x R y and y P z  =>  exists u. x P u and u R z
//   C2: x P z and x R y  =>  exists u. y P u and z R u
//
// Models built from documents store the preorder closed. A model is
// immutable once built and records at construction time whether it is a
// valid birelational model; semantic operations refuse invalid ones.

#ifndef ICTL_MODEL_HPP
#define ICTL_MODEL_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ictl/world_set.hpp"

namespace ictl {

using Edge = std::pair<WorldIndex, WorldIndex>;

/// Model as read from a document: generator edges only, nothing closed or
/// checked beyond referential integrity.
struct RawModel {
  std::vector<std::string> worlds;
  std::vector<Edge> preorder;
  std::vector<Edge> transitions;
  std::vector<std::set<std::string>> valuation;  // per world
};

/// Atom name -> worlds where it holds.
using Valuation = std::map<std::string, WorldSet>;

class InvalidFrame : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Smallest reflexive-transitive relation over n worlds containing `edges`.
Relation close_preorder(std::size_t n, const std::vector<Edge>& edges);

class BirelationalModel {
 public:
  /// Relations are taken as given; from_raw() is the path that closes the
  /// preorder. Valuation entries must range over the same universe.
  BirelationalModel(std::vector<std::string> names, const Relation& preorder,
                    Relation transitions, Valuation valuation);

  static BirelationalModel from_raw(const RawModel& raw);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(WorldIndex w) const { return names_.at(w); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<WorldIndex> find(const std::string& name) const;

  bool preorder(WorldIndex a, WorldIndex b) const { return up_[a].contains(b); }
  bool transition(WorldIndex a, WorldIndex b) const {
    return succ_[a].contains(b);
  }

  const WorldSet& up(WorldIndex w) const { return up_.at(w); }
  const WorldSet& down(WorldIndex w) const { return down_.at(w); }
  const WorldSet& successors(WorldIndex w) const { return succ_.at(w); }
  const WorldSet& predecessors(WorldIndex w) const { return pred_.at(w); }
  const Relation& preorder_rows() const noexcept { return up_; }
  const Relation& transition_rows() const noexcept { return succ_; }

  const Valuation& valuation() const noexcept { return valuation_; }
  /// Worlds where `atom` holds; empty for atoms the model never mentions.
  WorldSet atom_worlds(const std::string& atom) const;
  std::set<std::string> atoms_at(WorldIndex w) const;

  WorldSet empty_set() const { return WorldSet(size()); }
  WorldSet all_worlds() const { return WorldSet::full(size()); }

  /// Whether the frame and valuation satisfy every birelational condition
  /// (C3 excluded).
  bool valid() const noexcept { return valid_; }
  /// Throws InvalidFrame unless valid().
  void require_valid() const;

  /// Copy of this model with the identity preorder.
  BirelationalModel with_identity_preorder() const;

  friend bool operator==(const BirelationalModel& a,
                         const BirelationalModel& b) {
    return a.names_ == b.names_ && a.up_ == b.up_ && a.succ_ == b.succ_ &&
           a.valuation_ == b.valuation_;
  }

 private:
  std::vector<std::string> names_;
  Relation up_;
  Relation down_;
  Relation succ_;
  Relation pred_;
  Valuation valuation_;
  bool valid_ = false;
};

// Set operators the semantics is assembled from.

/// w↑ = { w' | w P w' }.
WorldSet up_set(const BirelationalModel& m, WorldIndex w);
/// Y↑ = { w | w↑ ⊆ Y }: the largest P-upward-closed subset of Y.
WorldSet up_interior(const BirelationalModel& m, const WorldSet& y);
/// { w | w R u for some u in X }.
WorldSet pre_exists(const BirelationalModel& m, const WorldSet& x);
/// { w | every R-successor of w is in X }.
WorldSet pre_forall(const BirelationalModel& m, const WorldSet& x);
WorldSet complement(const BirelationalModel& m, const WorldSet& x);
/// Whether w ∈ X and w P w' imply w' ∈ X.
bool is_upward_closed(const BirelationalModel& m, const WorldSet& x);
/// Smallest P-upward-closed superset of X.
WorldSet up_closure(const BirelationalModel& m, const WorldSet& x);

// Validation.

enum class Rule {
  Reflexive,
  Transitive,
  Serial,
  C1,
  C2,
  MonotoneValuation,
  C3,
};

std::string rule_name(Rule r);

struct Violation {
  Rule rule;
  std::vector<WorldIndex> witness;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  std::size_t count(Rule r) const;
};

struct ValidateOptions {
  bool check_c3 = false;
  std::size_t max_per_rule = 10;
};

/// Lists violated instances of every frame and valuation condition, up to
/// `max_per_rule` witnesses per rule.
ValidationReport validate_frame(const BirelationalModel& m,
                                const ValidateOptions& options = {});

}  // namespace ictl

#endif  // ICTL_MODEL_HPP
