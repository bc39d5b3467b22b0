// Bulk sweeps over model corpora: bounded countermodel search and the
// engine-versus-oracle differential harness.
//
// Every sweep has a serial reference path and an OpenMP path over models.
// Both return identical results: hits are resolved to the first one in
// canonical enumeration order and per-model tallies are merged by index.

#ifndef ICTL_SWEEP_HPP
#define ICTL_SWEEP_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ictl/checker.hpp"
#include "ictl/formula.hpp"
#include "ictl/gen.hpp"
#include "ictl/model.hpp"

namespace ictl {

enum class Execution { Serial, Parallel };

/// The fixpoint engine and the oracle gave different verdicts.
class EngineDisagreement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchBounds {
  std::size_t max_worlds = 4;
  /// Sizes up to this are enumerated exhaustively; larger sizes (up to
  /// max_worlds) are sampled at random.
  std::size_t exhaustive_worlds = 4;
  std::size_t max_atoms = 2;
  /// Random models to try after the exhaustive phase.
  std::size_t budget = 10000;
  std::uint64_t seed = 0;
  double edge_density = 0.3;
};

enum class SearchOutcome { Countermodel, Exhausted, BudgetExceeded };

std::string outcome_name(SearchOutcome o);

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::Exhausted;
  std::optional<BirelationalModel> model;
  WorldIndex world = 0;
  std::size_t exhaustive_examined = 0;
  std::size_t random_examined = 0;
};

/// Looks for a model and a world where `f` fails. Valuations range over the
/// atoms of `f`; throws std::invalid_argument if there are more than
/// max_atoms of them. Every hit is confirmed by the oracle before it is
/// returned; EngineDisagreement is thrown otherwise.
SearchResult find_countermodel(const Formula& f, const SearchBounds& bounds,
                               Execution exec = Execution::Parallel);

struct CompareParams {
  std::size_t max_worlds = 3;
  std::size_t atoms = 2;
  std::size_t depth = 3;
  std::size_t samples = 200;  // random models on top of the exhaustive set
  std::size_t sample_max_worlds = 6;
  std::size_t formulas_per_sample = 25;
  std::uint64_t seed = 0;
  std::size_t max_reported = 10;
  CheckerOptions checker;
};

struct Disagreement {
  std::string model_json;
  std::string world;
  std::string formula;
  bool engine = false;
  bool oracle = false;
};

struct CompareStats {
  std::size_t models = 0;
  std::size_t formulas = 0;
  std::size_t checks = 0;  // (model, world, formula) verdict pairs
  std::size_t disagreement_count = 0;
  std::vector<Disagreement> disagreements;  // first max_reported, canonical order
};

/// Differential run. Exhaustive part: every valid model with up to
/// max_worlds worlds, and on each one every formula of depth <= depth over
/// the atoms and false, taken up to equivalence on that model (see
/// formula_classes). Random part: `samples` random models with random
/// formulas.
CompareStats compare_engines(const CompareParams& params,
                             Execution exec = Execution::Parallel);

/// Representatives of every formula of depth <= depth over `atoms` and false,
/// up to agreement of both engines' denotations on `m`. Candidates at depth
/// d apply each operator to representatives of depth < d, so the returned
/// list covers every syntactic formula of the given depth on this model in
/// both engines. `on_candidate` sees every candidate, including those that
/// repeat a known class; returning false stops the walk.
struct CandidateResult {
  Formula formula;
  WorldSet engine;
  WorldSet oracle;
};
void formula_classes(
    const BirelationalModel& m, const std::vector<std::string>& atoms,
    std::size_t depth, const CheckerOptions& options,
    const std::function<bool(const CandidateResult&)>& on_candidate);

}  // namespace ictl

#endif  // ICTL_SWEEP_HPP
