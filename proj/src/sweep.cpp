#include "ictl/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <set>

#include "ictl/model_io.hpp"
#include "ictl/oracle.hpp"

namespace ictl {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::optional<WorldIndex> refuting_world(const BirelationalModel& m,
                                         const Formula& f) {
  WorldSet sat = denote(m, f).at(f);
  WorldSet bad = complement(m, sat);
  if (bad.empty()) return std::nullopt;
  return bad.first();
}

// First index in [0, count) for which `probe` reports a hit, or kNone.
template <class Probe>
std::size_t first_hit(std::size_t count, Execution exec, Probe&& probe) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < count; ++i)
      if (probe(i)) return i;
    return kNone;
  }
  std::atomic<std::size_t> best{kNone};
  const long long total = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < total; ++i) {
    std::size_t idx = static_cast<std::size_t>(i);
    if (idx > best.load(std::memory_order_relaxed)) continue;
    if (probe(idx)) {
      std::size_t cur = best.load();
      while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
      }
    }
  }
  return best.load();
}

// Applies `work` to every index; results land in index order either way.
template <class T, class Work>
std::vector<T> map_indices(std::size_t count, Execution exec, Work&& work) {
  std::vector<T> out(count);
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < count; ++i) out[i] = work(i);
    return out;
  }
  const long long total = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < total; ++i)
    out[static_cast<std::size_t>(i)] = work(static_cast<std::size_t>(i));
  return out;
}

void confirm_with_oracle(const BirelationalModel& m, WorldIndex w,
                         const Formula& f) {
  if (oracle_check(m, w, f))
    throw EngineDisagreement("fixpoint engine refutes " + print_formula(f) +
                             " at " + m.name(w) +
                             " but the oracle satisfies it in " +
                             model_to_json(m));
}

struct Tally {
  std::size_t models = 0;
  std::size_t formulas = 0;
  std::size_t checks = 0;
  std::size_t mismatches = 0;
  std::vector<Disagreement> reported;
};

void record(Tally& t, const BirelationalModel& m, const Formula& f,
            const WorldSet& engine, const WorldSet& oracle,
            std::size_t max_reported) {
  ++t.formulas;
  t.checks += m.size();
  if (engine == oracle) return;
  for (WorldIndex w = 0; w < m.size(); ++w) {
    if (engine.contains(w) == oracle.contains(w)) continue;
    ++t.mismatches;
    if (t.reported.size() < max_reported)
      t.reported.push_back({model_to_json(m), m.name(w), print_formula(f),
                            engine.contains(w), oracle.contains(w)});
  }
}

void merge(CompareStats& stats, Tally&& t, std::size_t max_reported) {
  stats.models += t.models;
  stats.formulas += t.formulas;
  stats.checks += t.checks;
  stats.disagreement_count += t.mismatches;
  for (auto& d : t.reported)
    if (stats.disagreements.size() < max_reported)
      stats.disagreements.push_back(std::move(d));
}

}  // namespace

std::string outcome_name(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::Countermodel: return "countermodel";
    case SearchOutcome::Exhausted: return "exhausted";
    case SearchOutcome::BudgetExceeded: return "budget_exceeded";
  }
  return "?";
}

SearchResult find_countermodel(const Formula& f, const SearchBounds& bounds,
                               Execution exec) {
  const auto atoms = f.atoms();
  if (atoms.size() > bounds.max_atoms)
    throw std::invalid_argument("formula has " + std::to_string(atoms.size()) +
                                " atoms, more than the bound of " +
                                std::to_string(bounds.max_atoms));
  if (bounds.max_worlds == 0)
    throw std::invalid_argument("max_worlds must be positive");
  SearchResult result;

  const std::size_t exhaustive = std::min(bounds.max_worlds,
                                          bounds.exhaustive_worlds);
  for (std::size_t n = 1; n <= exhaustive; ++n) {
    const auto frames = enumerate_frames(n);
    std::vector<std::vector<WorldSet>> upsets;
    upsets.reserve(frames.size());
    for (const auto& fr : frames) upsets.push_back(upward_closed_sets(fr.preorder));

    auto scan = [&](std::size_t i) -> std::optional<std::size_t> {
      const std::size_t count = valuation_count(upsets[i].size(), atoms.size());
      for (std::size_t v = 0; v < count; ++v) {
        auto m = model_with_valuation(frames[i], atoms, upsets[i], v);
        if (refuting_world(m, f)) return v;
      }
      return std::nullopt;
    };
    std::size_t hit = first_hit(frames.size(), exec,
                                [&](std::size_t i) { return scan(i).has_value(); });
    std::size_t before = 0;
    const std::size_t stop = hit == kNone ? frames.size() : hit;
    for (std::size_t i = 0; i < stop; ++i)
      before += valuation_count(upsets[i].size(), atoms.size());
    result.exhaustive_examined += before;
    if (hit != kNone) {
      std::size_t v = *scan(hit);
      auto m = model_with_valuation(frames[hit], atoms, upsets[hit], v);
      WorldIndex w = *refuting_world(m, f);
      confirm_with_oracle(m, w, f);
      result.exhaustive_examined += v + 1;
      result.outcome = SearchOutcome::Countermodel;
      result.model = std::move(m);
      result.world = w;
      return result;
    }
  }

  if (bounds.max_worlds <= exhaustive) {
    result.outcome = SearchOutcome::Exhausted;
    return result;
  }

  const std::size_t span = bounds.max_worlds - exhaustive;
  auto sample = [&](std::size_t i) {
    GenParams p;
    p.n_worlds = exhaustive + 1 + derive_seed(bounds.seed, 2 * i) % span;
    p.seed = derive_seed(bounds.seed, 2 * i + 1);
    p.edge_density = bounds.edge_density;
    p.atoms = atoms;
    p.n_atoms = atoms.size();
    return random_model(p);
  };
  std::size_t hit = first_hit(bounds.budget, exec, [&](std::size_t i) {
    return refuting_world(sample(i), f).has_value();
  });
  if (hit == kNone) {
    result.random_examined = bounds.budget;
    result.outcome = SearchOutcome::BudgetExceeded;
    return result;
  }
  auto m = sample(hit);
  WorldIndex w = *refuting_world(m, f);
  confirm_with_oracle(m, w, f);
  result.random_examined = hit + 1;
  result.outcome = SearchOutcome::Countermodel;
  result.model = std::move(m);
  result.world = w;
  return result;
}

void formula_classes(
    const BirelationalModel& m, const std::vector<std::string>& atoms,
    std::size_t depth, const CheckerOptions& options,
    const std::function<bool(const CandidateResult&)>& on_candidate) {
  std::vector<CandidateResult> reps;
  std::set<std::pair<WorldSet, WorldSet>> known;
  std::vector<CandidateResult> fresh;
  bool go = true;
  // Both engines are compositional, so evaluating the top operator over the
  // representatives' sets is exact for the candidate formula.
  auto consider = [&](const Formula& g, std::vector<WorldSet> engine_args,
                      std::vector<WorldSet> oracle_args) {
    if (!go) return;
    CandidateResult c{g, apply_operator(m, g, engine_args, options),
                      oracle_apply(m, g, oracle_args)};
    go = on_candidate(c);
    if (known.emplace(c.engine, c.oracle).second) fresh.push_back(std::move(c));
  };

  for (const auto& a : atoms) consider(Formula::atom(a), {}, {});
  consider(Formula::bottom(), {}, {});
  reps = std::move(fresh);
  fresh.clear();

  static constexpr Op unary[] = {Op::ExistsNext, Op::ForallNext};
  static constexpr Op binary[] = {Op::And,           Op::Or,
                                  Op::Implies,       Op::ExistsUntil,
                                  Op::ExistsRelease, Op::ForallUntil,
                                  Op::ForallRelease};
  // Combinations involving only older representatives were tried already.
  std::size_t seen = 0;
  for (std::size_t d = 1; d <= depth && go; ++d) {
    const std::size_t k = reps.size();
    for (Op op : unary)
      for (std::size_t i = seen; i < k; ++i)
        consider(Formula::make(op, {reps[i].formula}), {reps[i].engine},
                 {reps[i].oracle});
    for (Op op : binary)
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i < seen ? seen : 0; j < k; ++j)
          consider(Formula::make(op, {reps[i].formula, reps[j].formula}),
                   {reps[i].engine, reps[j].engine},
                   {reps[i].oracle, reps[j].oracle});
    seen = k;
    for (auto& c : fresh) reps.push_back(std::move(c));
    fresh.clear();
  }
}

CompareStats compare_engines(const CompareParams& params, Execution exec) {
  const auto atoms = default_atoms(params.atoms);
  CompareStats stats;

  for (std::size_t n = 1; n <= params.max_worlds; ++n) {
    const auto frames = enumerate_frames(n);
    auto tallies = map_indices<Tally>(frames.size(), exec, [&](std::size_t i) {
      Tally t;
      const auto upsets = upward_closed_sets(frames[i].preorder);
      const std::size_t count = valuation_count(upsets.size(), atoms.size());
      for (std::size_t v = 0; v < count; ++v) {
        auto m = model_with_valuation(frames[i], atoms, upsets, v);
        ++t.models;
        formula_classes(m, atoms, params.depth, params.checker,
                        [&](const CandidateResult& c) {
                          record(t, m, c.formula, c.engine, c.oracle,
                                 params.max_reported);
                          return true;
                        });
      }
      return t;
    });
    for (auto& t : tallies) merge(stats, std::move(t), params.max_reported);
  }

  const std::size_t max_n = std::max<std::size_t>(params.sample_max_worlds, 1);
  auto tallies = map_indices<Tally>(params.samples, exec, [&](std::size_t i) {
    GenParams p;
    p.n_worlds = 1 + derive_seed(params.seed, 3 * i) % max_n;
    p.n_atoms = params.atoms;
    p.seed = derive_seed(params.seed, 3 * i + 1);
    auto m = random_model(p);
    std::mt19937_64 rng(derive_seed(params.seed, 3 * i + 2));
    Tally t;
    t.models = 1;
    for (std::size_t k = 0; k < params.formulas_per_sample; ++k) {
      Formula f = random_formula(rng, atoms, params.depth);
      record(t, m, f, denote(m, f, params.checker).at(f),
             oracle_denotation(m, f), params.max_reported);
    }
    return t;
  });
  for (auto& t : tallies) merge(stats, std::move(t), params.max_reported);
  return stats;
}

}  // namespace ictl
