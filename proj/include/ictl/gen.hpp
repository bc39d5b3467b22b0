// Model generators: exhaustive enumeration of small models, seeded random
// sampling with rejection and repair, and a product construction that is
// valid by construction. Also random formulas for differential testing.

#ifndef ICTL_GEN_HPP
#define ICTL_GEN_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ictl/formula.hpp"
#include "ictl/model.hpp"

namespace ictl {

/// Worlds w0, w1, ...
std::vector<std::string> default_world_names(std::size_t n);
/// Atoms p, q, r, s, t, then a5, a6, ...
std::vector<std::string> default_atoms(std::size_t count);

/// A frame without valuation: closed preorder and transition rows.
struct Frame {
  Relation preorder;
  Relation transitions;
  std::size_t size() const noexcept { return preorder.size(); }
};

/// Every valid frame on exactly n labelled worlds (closed preorder, serial
/// transitions, C1 and C2), in a fixed canonical order. Practical for n <= 4;
/// throws std::invalid_argument above 5.
std::vector<Frame> enumerate_frames(std::size_t n);

/// Every P-upward-closed subset, in increasing order of bit pattern.
std::vector<WorldSet> upward_closed_sets(const Relation& preorder);

/// Walks all valid models on exactly n worlds over the given atoms: every
/// frame × every monotone valuation. Deterministic order.
class ModelEnumerator {
 public:
  ModelEnumerator(std::size_t n, std::vector<std::string> atoms);
  /// Walks a given frame list instead of every frame on n worlds.
  ModelEnumerator(std::vector<Frame> frames, std::vector<std::string> atoms);

  std::optional<BirelationalModel> next();

  /// Number of models the stream yields in total.
  std::size_t total() const;

 private:
  void load_frame();

  std::vector<Frame> frames_;
  std::vector<std::string> atoms_;
  std::size_t frame_ = 0;
  std::vector<WorldSet> upsets_;
  std::vector<std::size_t> choice_;  // per atom, index into upsets_
  bool loaded_ = false;
};

/// Monotone valuations of a frame, mixed-radix index -> valuation.
BirelationalModel model_with_valuation(const Frame& frame,
                                       const std::vector<std::string>& atoms,
                                       const std::vector<WorldSet>& upsets,
                                       std::size_t index);
std::size_t valuation_count(std::size_t upsets, std::size_t atoms);

struct GenParams {
  std::size_t n_worlds = 3;
  std::size_t n_atoms = 2;
  std::uint64_t seed = 0;
  std::size_t max_attempts = 100;
  double edge_density = 0.3;      // transition edges
  double preorder_density = 0.3;  // generator edges of the random partial order
  /// Atom names to use instead of default_atoms(n_atoms) when non-empty.
  std::vector<std::string> atoms;
};

struct GenStats {
  std::size_t attempts = 0;
  bool repaired = false;
  std::size_t repair_edges = 0;
};

class GenerationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Valid random model, deterministic in `params`. Frames failing C1/C2 are
/// resampled up to max_attempts times; after that the last sample is repaired
/// by adding transition edges only.
BirelationalModel random_model(const GenParams& params,
                               GenStats* stats = nullptr);

/// Per atom, the (k, s) pairs of the product where it holds.
using ProductValuation =
    std::map<std::string, std::set<std::pair<std::size_t, std::size_t>>>;

/// W = K × S with (k,s) P (k',s') iff k <= k' and s = s', and
/// (k,s) R (k',s') iff k = k' and s T s'. World (k,s) has index k*|S| + s and
/// name "k<k>s<s>". Throws InvalidFrame for a non-serial `kripke`, and
/// std::invalid_argument for a non-preorder `poset` or a valuation that is
/// not monotone in k.
BirelationalModel product_frame(const Relation& poset, const Relation& kripke,
                                const ProductValuation& valuation = {});

/// Random formula of depth <= max_depth over `atoms` (plus false).
Formula random_formula(std::mt19937_64& rng,
                       const std::vector<std::string>& atoms,
                       std::size_t max_depth);

/// splitmix64 step; derives independent seeds from (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace ictl

#endif  // ICTL_GEN_HPP
