#include "ictl/gen.hpp"

#include <algorithm>
#include <numeric>

namespace ictl {

namespace {

using Mask = std::uint32_t;

Mask image(const std::vector<Mask>& rows, Mask set) {
  Mask out = 0;
  for (std::size_t i = 0; set; ++i, set >>= 1)
    if (set & 1U) out |= rows[i];
  return out;
}

std::vector<std::vector<Mask>> closed_preorders(std::size_t n) {
  std::vector<Edge> pairs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) pairs.emplace_back(a, b);
  std::vector<std::vector<Mask>> out;
  const std::uint64_t limit = std::uint64_t{1} << pairs.size();
  std::vector<Mask> up(n);
  for (std::uint64_t bits = 0; bits < limit; ++bits) {
    for (std::size_t w = 0; w < n; ++w) up[w] = Mask{1} << w;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if ((bits >> k) & 1U) up[pairs[k].first] |= Mask{1} << pairs[k].second;
    bool transitive = true;
    for (std::size_t w = 0; w < n && transitive; ++w)
      transitive = (image(up, up[w]) & ~up[w]) == 0;
    if (transitive) out.push_back(up);
  }
  return out;
}

bool commutes(const std::vector<Mask>& up, const std::vector<Mask>& succ) {
  const std::size_t n = up.size();
  for (std::size_t x = 0; x < n; ++x) {
    // C1: every z above a successor of x is a successor of something above x.
    if (image(up, succ[x]) & ~image(succ, up[x])) return false;
    // C2: every successor-of-x's upset meets every above-x's successors.
    for (std::size_t z = 0; z < n; ++z) {
      if (!((up[x] >> z) & 1U)) continue;
      for (std::size_t y = 0; y < n; ++y)
        if (((succ[x] >> y) & 1U) && !(up[y] & succ[z])) return false;
    }
  }
  return true;
}

Relation to_relation(const std::vector<Mask>& rows) {
  const std::size_t n = rows.size();
  Relation out(n, WorldSet(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if ((rows[a] >> b) & 1U) out[a].insert(b);
  return out;
}

}  // namespace

std::vector<std::string> default_world_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("w" + std::to_string(i));
  return names;
}

std::vector<std::string> default_atoms(std::size_t count) {
  static const char* base[] = {"p", "q", "r", "s", "t"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(i < 5 ? base[i] : "a" + std::to_string(i));
  return out;
}

std::vector<Frame> enumerate_frames(std::size_t n) {
  if (n == 0 || n > 5)
    throw std::invalid_argument("enumerate_frames supports 1..5 worlds");
  const Mask full = (Mask{1} << n) - 1;
  std::vector<Frame> frames;
  std::vector<Mask> succ(n);
  for (const auto& up : closed_preorders(n)) {
    std::fill(succ.begin(), succ.end(), Mask{1});
    for (;;) {
      if (commutes(up, succ))
        frames.push_back({to_relation(up), to_relation(succ)});
      std::size_t i = 0;
      while (i < n && succ[i] == full) succ[i++] = 1;
      if (i == n) break;
      ++succ[i];
    }
  }
  return frames;
}

std::vector<WorldSet> upward_closed_sets(const Relation& preorder) {
  const std::size_t n = preorder.size();
  if (n > 20) throw std::invalid_argument("too many worlds to list up-sets");
  std::vector<WorldSet> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    WorldSet s(n);
    for (std::size_t w = 0; w < n; ++w)
      if ((bits >> w) & 1U) s.insert(w);
    bool closed = true;
    for (std::size_t w = 0; w < n && closed; ++w)
      if (s.contains(w)) closed = preorder[w].subset_of(s);
    if (closed) out.push_back(std::move(s));
  }
  return out;
}

std::size_t valuation_count(std::size_t upsets, std::size_t atoms) {
  std::size_t c = 1;
  for (std::size_t i = 0; i < atoms; ++i) c *= upsets;
  return c;
}

BirelationalModel model_with_valuation(const Frame& frame,
                                       const std::vector<std::string>& atoms,
                                       const std::vector<WorldSet>& upsets,
                                       std::size_t index) {
  Valuation val;
  for (const auto& atom : atoms) {
    val.emplace(atom, upsets.at(index % upsets.size()));
    index /= upsets.size();
  }
  return BirelationalModel(default_world_names(frame.size()), frame.preorder,
                           frame.transitions, std::move(val));
}

ModelEnumerator::ModelEnumerator(std::size_t n, std::vector<std::string> atoms)
    : ModelEnumerator(enumerate_frames(n), std::move(atoms)) {}

ModelEnumerator::ModelEnumerator(std::vector<Frame> frames,
                                 std::vector<std::string> atoms)
    : frames_(std::move(frames)), atoms_(std::move(atoms)) {}

void ModelEnumerator::load_frame() {
  upsets_ = upward_closed_sets(frames_[frame_].preorder);
  choice_.assign(atoms_.size(), 0);
  loaded_ = true;
}

std::optional<BirelationalModel> ModelEnumerator::next() {
  if (frame_ >= frames_.size()) return std::nullopt;
  if (!loaded_) load_frame();
  Valuation val;
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    val.emplace(atoms_[i], upsets_[choice_[i]]);
  const Frame& f = frames_[frame_];
  BirelationalModel m(default_world_names(f.size()), f.preorder, f.transitions,
                      std::move(val));
  // Advance the odometer; atom 0 is the fastest digit.
  std::size_t i = 0;
  while (i < choice_.size() && ++choice_[i] == upsets_.size()) choice_[i++] = 0;
  if (i == choice_.size()) {
    ++frame_;
    loaded_ = false;
  }
  return m;
}

std::size_t ModelEnumerator::total() const {
  std::size_t t = 0;
  for (const auto& f : frames_)
    t += valuation_count(upward_closed_sets(f.preorder).size(), atoms_.size());
  return t;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

BirelationalModel random_model(const GenParams& params, GenStats* stats) {
  const std::size_t n = params.n_worlds;
  if (n == 0) throw std::invalid_argument("n_worlds must be positive");
  std::mt19937_64 rng(params.seed);
  std::bernoulli_distribution pre_edge(std::clamp(params.preorder_density, 0.0, 1.0));
  std::bernoulli_distribution tr_edge(std::clamp(params.edge_density, 0.0, 1.0));
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  const auto names = default_world_names(n);

  auto sample_frame = [&] {
    std::vector<WorldIndex> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (pre_edge(rng)) edges.emplace_back(order[i], order[j]);
    Relation succ(n, WorldSet(n));
    for (WorldIndex a = 0; a < n; ++a) {
      for (WorldIndex b = 0; b < n; ++b)
        if (tr_edge(rng)) succ[a].insert(b);
      if (succ[a].empty()) succ[a].insert(pick(rng));
    }
    return Frame{close_preorder(n, edges), std::move(succ)};
  };

  GenStats local;
  Frame frame;
  bool ok = false;
  const std::size_t attempts = std::max<std::size_t>(params.max_attempts, 1);
  for (std::size_t a = 0; a < attempts && !ok; ++a) {
    ++local.attempts;
    frame = sample_frame();
    ok = BirelationalModel(names, frame.preorder, frame.transitions, {}).valid();
  }
  if (!ok) {
    local.repaired = true;
    // Each added edge discharges one C1/C2 instance; edges only accumulate,
    // so this stops after at most n*n additions.
    for (std::size_t guard = 0; guard <= n * n; ++guard) {
      BirelationalModel m(names, frame.preorder, frame.transitions, {});
      if (m.valid()) {
        ok = true;
        break;
      }
      auto report = validate_frame(m, {.check_c3 = false, .max_per_rule = 1});
      const Violation* v = nullptr;
      for (const auto& item : report.violations)
        if (item.rule == Rule::C1 || item.rule == Rule::C2) {
          v = &item;
          break;
        }
      if (!v) break;
      const auto& t = v->witness;
      if (v->rule == Rule::C1)
        frame.transitions[t[0]].insert(t[2]);  // x R z, witness u = x
      else
        frame.transitions[t[2]].insert(t[1]);  // z R y, witness u = y
      ++local.repair_edges;
    }
  }
  if (stats) *stats = local;
  if (!ok)
    throw GenerationFailed("random_model: no valid frame after " +
                           std::to_string(local.attempts) +
                           " attempts and " +
                           std::to_string(local.repair_edges) +
                           " repair edges");

  Valuation val;
  std::bernoulli_distribution coin(0.5);
  BirelationalModel frame_only(names, frame.preorder, frame.transitions, {});
  const auto atoms =
      params.atoms.empty() ? default_atoms(params.n_atoms) : params.atoms;
  for (const auto& atom : atoms) {
    WorldSet seed_set(n);
    for (WorldIndex w = 0; w < n; ++w)
      if (coin(rng)) seed_set.insert(w);
    val.emplace(atom, up_closure(frame_only, seed_set));
  }
  return BirelationalModel(names, frame.preorder, frame.transitions,
                           std::move(val));
}

BirelationalModel product_frame(const Relation& poset, const Relation& kripke,
                                const ProductValuation& valuation) {
  const std::size_t nk = poset.size();
  const std::size_t ns = kripke.size();
  if (nk == 0 || ns == 0) throw std::invalid_argument("empty product factor");
  if (close_preorder(nk, [&] {
        std::vector<Edge> e;
        for (std::size_t a = 0; a < nk; ++a)
          for (auto b : poset[a].members()) e.emplace_back(a, b);
        return e;
      }()) != poset)
    throw std::invalid_argument("product_frame: poset is not a closed preorder");
  for (std::size_t s = 0; s < ns; ++s)
    if (kripke[s].empty())
      throw InvalidFrame("product_frame: kripke state " + std::to_string(s) +
                         " has no successor");

  const std::size_t n = nk * ns;
  auto idx = [ns](std::size_t k, std::size_t s) { return k * ns + s; };
  std::vector<std::string> names;
  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t s = 0; s < ns; ++s)
      names.push_back("k" + std::to_string(k) + "s" + std::to_string(s));

  Relation up(n, WorldSet(n));
  Relation succ(n, WorldSet(n));
  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t s = 0; s < ns; ++s) {
      for (auto k2 : poset[k].members()) up[idx(k, s)].insert(idx(k2, s));
      for (auto s2 : kripke[s].members()) succ[idx(k, s)].insert(idx(k, s2));
    }

  Valuation val;
  for (const auto& [atom, cells] : valuation) {
    if (!is_valid_atom_name(atom))
      throw std::invalid_argument("invalid atom name '" + atom + "'");
    WorldSet ws(n);
    for (auto [k, s] : cells) {
      if (k >= nk || s >= ns)
        throw std::invalid_argument("product valuation cell out of range");
      ws.insert(idx(k, s));
    }
    for (auto [k, s] : cells)
      for (auto k2 : poset[k].members())
        if (!cells.count({k2, s}))
          throw std::invalid_argument("product valuation of '" + atom +
                                      "' is not monotone in k");
    val.emplace(atom, std::move(ws));
  }
  return BirelationalModel(std::move(names), up, std::move(succ),
                           std::move(val));
}

Formula random_formula(std::mt19937_64& rng,
                       const std::vector<std::string>& atoms,
                       std::size_t max_depth) {
  std::uniform_int_distribution<std::size_t> leaf_pick(0, atoms.size());
  auto leaf = [&] {
    std::size_t i = leaf_pick(rng);
    return i < atoms.size() ? Formula::atom(atoms[i]) : Formula::bottom();
  };
  if (max_depth == 0 || std::bernoulli_distribution(0.2)(rng)) return leaf();
  static constexpr Op ops[] = {Op::And,           Op::Or,
                               Op::Implies,       Op::ExistsNext,
                               Op::ExistsUntil,   Op::ExistsRelease,
                               Op::ForallNext,    Op::ForallUntil,
                               Op::ForallRelease};
  Op op = ops[std::uniform_int_distribution<std::size_t>(0, 8)(rng)];
  std::vector<Formula> args;
  for (std::size_t i = 0; i < arity(op); ++i)
    args.push_back(random_formula(rng, atoms, max_depth - 1));
  return Formula::make(op, std::move(args));
}

}  // namespace ictl
