#include "ictl/checker.hpp"

#include <algorithm>

namespace ictl {

namespace {

WorldSet classical_eu(const BirelationalModel& m, const WorldSet& a,
                      const WorldSet& b) {
  return lfp(m.size(), [&](const WorldSet& z) {
    return b | (a & pre_exists(m, z));
  });
}

WorldSet classical_er(const BirelationalModel& m, const WorldSet& a,
                      const WorldSet& b) {
  return gfp(m.size(), [&](const WorldSet& z) {
    return b & (a | pre_exists(m, z));
  });
}

WorldSet classical_au(const BirelationalModel& m, const WorldSet& a,
                      const WorldSet& b) {
  return lfp(m.size(), [&](const WorldSet& z) {
    return b | (a & pre_forall(m, z));
  });
}

WorldSet classical_ar(const BirelationalModel& m, const WorldSet& a,
                      const WorldSet& b) {
  return gfp(m.size(), [&](const WorldSet& z) {
    return b & (a | pre_forall(m, z));
  });
}

}  // namespace

WorldSet apply_operator(const BirelationalModel& m, const Formula& g,
                        std::span<const WorldSet> args,
                        const CheckerOptions& opts) {
  if (args.size() != g.arity())
    throw std::invalid_argument("apply_operator: wrong operand count");
  auto sub = [&](std::size_t i) -> const WorldSet& { return args[i]; };
  switch (g.op()) {
    case Op::Atom:
      return m.atom_worlds(g.atom_name());
    case Op::Bottom:
      return m.empty_set();
    case Op::And:
      return sub(0) & sub(1);
    case Op::Or:
      return sub(0) | sub(1);
    case Op::Implies:
      return up_interior(m, complement(m, sub(0)) | sub(1));
    case Op::ExistsNext:
      return pre_exists(m, sub(0));
    case Op::ForallNext:
      if (opts.mutation == Mutation::AxWithoutUpInterior)
        return pre_forall(m, sub(0));
      return up_interior(m, pre_forall(m, sub(0)));
    case Op::ExistsUntil:
      return classical_eu(m, sub(0), sub(1));
    case Op::ExistsRelease:
      return classical_er(m, sub(0), sub(1));
    case Op::ForallUntil:
      return up_interior(m, classical_au(m, sub(0), sub(1)));
    case Op::ForallRelease:
      return up_interior(m, classical_ar(m, sub(0), sub(1)));
  }
  throw std::logic_error("unhandled operator");
}

namespace {

// Index of the first stage S_k of the chain S_0 = seed,
// S_{k+1} = seed ∪ (via ∩ Pre∃(S_k)) containing each world.
std::vector<std::size_t> reach_stages(const BirelationalModel& m,
                                      const WorldSet& via,
                                      const WorldSet& seed) {
  const std::size_t unreached = m.size() + 1;
  std::vector<std::size_t> stage(m.size(), unreached);
  WorldSet cur = seed;
  for (std::size_t k = 0;; ++k) {
    for (WorldIndex w : cur.members())
      if (stage[w] == unreached) stage[w] = k;
    WorldSet next = seed | (via & pre_exists(m, cur));
    if (next == cur) break;
    cur = std::move(next);
  }
  return stage;
}

// Path from `from` that stays in `via` until it hits `seed`, descending the
// reach stages; `from` must be reachable.
std::vector<WorldIndex> descend(const BirelationalModel& m, WorldIndex from,
                                const std::vector<std::size_t>& stage) {
  std::vector<WorldIndex> path{from};
  while (stage[path.back()] > 0) {
    auto want = stage[path.back()] - 1;
    for (WorldIndex u : m.successors(path.back()).members()) {
      if (stage[u] == want) {
        path.push_back(u);
        break;
      }
    }
    if (stage[path.back()] != want) break;
  }
  return path;
}

Lasso step_lasso(const BirelationalModel& m, WorldIndex from, WorldIndex to) {
  if (from == to) return Lasso{{}, {from}};
  return close_into_lasso(m, {from, to});
}

// Walk inside `stay` from `from`; stops when `goal` is reached (path is then
// closed arbitrarily) or a world repeats (the repeat closes the cycle).
Lasso walk_inside(const BirelationalModel& m, WorldIndex from,
                  const WorldSet& stay, const WorldSet& goal) {
  std::vector<WorldIndex> walk{from};
  for (;;) {
    WorldIndex cur = walk.back();
    if (goal.contains(cur)) return close_into_lasso(m, walk);
    WorldSet next = m.successors(cur) & stay;
    WorldIndex u = next.first();
    if (u == m.size()) return close_into_lasso(m, walk);
    walk.push_back(u);
    if (std::find(walk.begin(), walk.end() - 1, u) != walk.end() - 1)
      return lasso_from_walk(walk);
  }
}

std::optional<WorldIndex> first_outside(const BirelationalModel& m,
                                        WorldIndex w, const WorldSet& set) {
  WorldSet bad = m.up(w) & complement(m, set);
  if (bad.empty()) return std::nullopt;
  return bad.first();
}

std::optional<Witness> extract_witness(const BirelationalModel& m,
                                       WorldIndex w, const Formula& f,
                                       const Denotation& d, bool satisfied) {
  auto sub = [&](std::size_t i) -> const WorldSet& { return d.at(f.arg(i)); };
  if (satisfied) {
    switch (f.op()) {
      case Op::ExistsNext: {
        WorldIndex u = (m.successors(w) & sub(0)).first();
        return Witness{std::nullopt, step_lasso(m, w, u)};
      }
      case Op::ExistsUntil: {
        auto stage = reach_stages(m, sub(0), sub(1));
        return Witness{std::nullopt, close_into_lasso(m, descend(m, w, stage))};
      }
      case Op::ExistsRelease: {
        const WorldSet& z = d.at(f);
        return Witness{std::nullopt, walk_inside(m, w, z, sub(0) & sub(1))};
      }
      default:
        return std::nullopt;
    }
  }
  switch (f.op()) {
    case Op::Implies: {
      auto upper = first_outside(m, w, complement(m, sub(0)) | sub(1));
      if (!upper) return std::nullopt;
      return Witness{upper, std::nullopt};
    }
    case Op::ForallNext: {
      auto upper = first_outside(m, w, pre_forall(m, sub(0)));
      if (!upper) return std::nullopt;
      WorldIndex u = (m.successors(*upper) & complement(m, sub(0))).first();
      return Witness{upper, step_lasso(m, *upper, u)};
    }
    case Op::ForallUntil: {
      WorldSet l = classical_au(m, sub(0), sub(1));
      auto upper = first_outside(m, w, l);
      if (!upper) return std::nullopt;
      WorldSet outside = complement(m, l);
      return Witness{upper, walk_inside(m, *upper, outside,
                                        outside & complement(m, sub(0)))};
    }
    case Op::ForallRelease: {
      WorldSet g = classical_ar(m, sub(0), sub(1));
      auto upper = first_outside(m, w, g);
      if (!upper) return std::nullopt;
      // Classical failure of release is E(¬a U ¬b).
      auto stage = reach_stages(m, complement(m, sub(0)), complement(m, sub(1)));
      return Witness{upper, close_into_lasso(m, descend(m, *upper, stage))};
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

void Denotation::add(const Formula& f, WorldSet worlds) {
  if (index_.count(f)) return;
  index_.emplace(f, entries_.size());
  entries_.emplace_back(f, std::move(worlds));
}

const WorldSet& Denotation::at(const Formula& f) const {
  auto it = index_.find(f);
  if (it == index_.end())
    throw std::out_of_range("no denotation for " + print_formula(f));
  return entries_[it->second].second;
}

Denotation denote(const BirelationalModel& m, const Formula& f,
                  const CheckerOptions& options) {
  m.require_valid();
  Denotation d;
  std::vector<WorldSet> args;
  for (const auto& g : subformulas(f)) {
    args.clear();
    for (std::size_t i = 0; i < g.arity(); ++i) args.push_back(d.at(g.arg(i)));
    d.add(g, apply_operator(m, g, args, options));
  }
  return d;
}

CheckOutcome check(const BirelationalModel& m, WorldIndex w, const Formula& f,
                   const CheckerOptions& options) {
  if (w >= m.size()) throw std::out_of_range("unknown world index");
  Denotation d = denote(m, f, options);
  CheckOutcome out;
  out.satisfied = d.at(f).contains(w);
  out.witness = extract_witness(m, w, f, d, out.satisfied);
  return out;
}

CheckOutcome check(const BirelationalModel& m, const std::string& world,
                   const Formula& f, const CheckerOptions& options) {
  auto w = m.find(world);
  if (!w) throw std::out_of_range("unknown world '" + world + "'");
  return check(m, *w, f, options);
}

bool valid_in_model(const BirelationalModel& m, const Formula& f,
                    const CheckerOptions& options) {
  return denote(m, f, options).at(f).is_full();
}

}  // namespace ictl
