#include "ictl/oracle.hpp"

#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace ictl {

namespace {

using Verdicts = std::vector<char>;

class SearchEvaluator {
 public:
  SearchEvaluator(const BirelationalModel& m, bool classical)
      : m_(m), n_(m.size()), classical_(classical) {}

  const Verdicts& eval(const Formula& f) {
    for (const auto& g : subformulas(f)) {
      if (memo_.count(g)) continue;
      const Verdicts* a = g.arity() > 0 ? &memo_.at(g.arg(0)) : nullptr;
      const Verdicts* b = g.arity() > 1 ? &memo_.at(g.arg(1)) : nullptr;
      Verdicts v = compute(g, a, b);
      memo_.emplace(g, std::move(v));
    }
    return memo_.at(f);
  }

  // Worlds the agent may still move to from w.
  bool above(WorldIndex w, WorldIndex v) const {
    return classical_ ? w == v : m_.preorder(w, v);
  }

  Verdicts reachable_within(WorldIndex from, const Verdicts& allowed) const {
    Verdicts seen(n_, 0);
    if (!allowed[from]) return seen;
    std::vector<WorldIndex> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
      WorldIndex s = stack.back();
      stack.pop_back();
      for (WorldIndex u = 0; u < n_; ++u)
        if (m_.transition(s, u) && allowed[u] && !seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
    }
    return seen;
  }

  // Whether s can return to itself in one or more steps through `allowed`.
  bool on_cycle_within(WorldIndex s, const Verdicts& allowed) const {
    Verdicts seen(n_, 0);
    std::vector<WorldIndex> stack;
    for (WorldIndex u = 0; u < n_; ++u)
      if (m_.transition(s, u) && allowed[u]) {
        if (u == s) return true;
        seen[u] = 1;
        stack.push_back(u);
      }
    while (!stack.empty()) {
      WorldIndex t = stack.back();
      stack.pop_back();
      for (WorldIndex u = 0; u < n_; ++u)
        if (m_.transition(t, u) && allowed[u]) {
          if (u == s) return true;
          if (!seen[u]) {
            seen[u] = 1;
            stack.push_back(u);
          }
        }
    }
    return false;
  }

  // Some path from w keeps `stay` until it meets `goal`.
  bool reach(WorldIndex w, const Verdicts& stay, const Verdicts& goal) const {
    Verdicts seen(n_, 0);
    std::vector<WorldIndex> stack{w};
    seen[w] = 1;
    while (!stack.empty()) {
      WorldIndex s = stack.back();
      stack.pop_back();
      if (goal[s]) return true;
      if (!stay[s]) continue;
      for (WorldIndex u = 0; u < n_; ++u)
        if (m_.transition(s, u) && !seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
    }
    return false;
  }

  // Some path from w stays in `inside` forever.
  bool stays_forever(WorldIndex w, const Verdicts& inside) const {
    Verdicts r = reachable_within(w, inside);
    for (WorldIndex s = 0; s < n_; ++s)
      if (r[s] && on_cycle_within(s, inside)) return true;
    return false;
  }

  static Verdicts negate(const Verdicts& v) {
    Verdicts out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = !v[i];
    return out;
  }
  static Verdicts both(const Verdicts& a, const Verdicts& b) {
    Verdicts out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
    return out;
  }

  // Path clauses at a single starting world.
  bool exists_until(WorldIndex w, const Verdicts& a, const Verdicts& b) const {
    return reach(w, a, b);
  }
  bool exists_release(WorldIndex w, const Verdicts& a,
                      const Verdicts& b) const {
    if (!b[w]) return false;
    // Either b holds until a point where a and b both hold, or b holds
    // forever along some path.
    if (reach(w, b, both(a, b))) return true;
    return stays_forever(w, b);
  }
  // Whether some path from v falsifies (a U b).
  bool until_fails(WorldIndex v, const Verdicts& a, const Verdicts& b) const {
    Verdicts not_b = negate(b);
    if (reach(v, not_b, both(negate(a), not_b))) return true;
    return stays_forever(v, not_b);
  }
  // Whether some path from v falsifies (a R b): ¬b is met before any a.
  bool release_fails(WorldIndex v, const Verdicts& a, const Verdicts& b) const {
    return reach(v, negate(a), negate(b));
  }

  template <class Pred>
  bool for_all_above(WorldIndex w, Pred&& pred) const {
    for (WorldIndex v = 0; v < n_; ++v)
      if (above(w, v) && !pred(v)) return false;
    return true;
  }

  // Verdicts of the top operator of g given its operands' verdicts.
  Verdicts compute(const Formula& g, const Verdicts* a, const Verdicts* b) const {
    Verdicts out(n_, 0);
    auto sub = [&](std::size_t i) -> const Verdicts& { return i ? *b : *a; };
    for (WorldIndex w = 0; w < n_; ++w) {
      bool v = false;
      switch (g.op()) {
        case Op::Atom:
          v = m_.atom_worlds(g.atom_name()).contains(w);
          break;
        case Op::Bottom:
          v = false;
          break;
        case Op::And:
          v = sub(0)[w] && sub(1)[w];
          break;
        case Op::Or:
          v = sub(0)[w] || sub(1)[w];
          break;
        case Op::Implies:
          v = for_all_above(w, [&](WorldIndex u) {
            return !sub(0)[u] || sub(1)[u];
          });
          break;
        case Op::ExistsNext:
          for (WorldIndex u = 0; u < n_ && !v; ++u)
            v = m_.transition(w, u) && sub(0)[u];
          break;
        case Op::ForallNext:
          v = for_all_above(w, [&](WorldIndex x) {
            for (WorldIndex u = 0; u < n_; ++u)
              if (m_.transition(x, u) && !sub(0)[u]) return false;
            return true;
          });
          break;
        case Op::ExistsUntil:
          v = exists_until(w, sub(0), sub(1));
          break;
        case Op::ExistsRelease:
          v = exists_release(w, sub(0), sub(1));
          break;
        case Op::ForallUntil:
          v = for_all_above(w, [&](WorldIndex x) {
            return !until_fails(x, sub(0), sub(1));
          });
          break;
        case Op::ForallRelease:
          v = for_all_above(w, [&](WorldIndex x) {
            return !release_fails(x, sub(0), sub(1));
          });
          break;
      }
      out[w] = v;
    }
    return out;
  }

 private:
  const BirelationalModel& m_;
  std::size_t n_;
  bool classical_;
  std::unordered_map<Formula, Verdicts> memo_;
};

WorldSet to_set(const Verdicts& v) {
  WorldSet s(v.size());
  for (WorldIndex w = 0; w < v.size(); ++w)
    if (v[w]) s.insert(w);
  return s;
}

void require_serial(const BirelationalModel& m) {
  for (WorldIndex w = 0; w < m.size(); ++w)
    if (m.successors(w).empty())
      throw InvalidFrame("transition relation is not serial at '" + m.name(w) +
                         "'");
}

Verdicts to_verdicts(const WorldSet& s) {
  Verdicts v(s.universe(), 0);
  for (WorldIndex w : s.members()) v[w] = 1;
  return v;
}

}  // namespace

WorldSet oracle_apply(const BirelationalModel& m, const Formula& node,
                      std::span<const WorldSet> args) {
  if (args.size() != node.arity())
    throw std::invalid_argument("oracle_apply: wrong operand count");
  Verdicts a = args.size() > 0 ? to_verdicts(args[0]) : Verdicts{};
  Verdicts b = args.size() > 1 ? to_verdicts(args[1]) : Verdicts{};
  return to_set(SearchEvaluator(m, false).compute(node, &a, &b));
}

bool oracle_check(const BirelationalModel& m, WorldIndex w, const Formula& f) {
  if (w >= m.size()) throw std::out_of_range("unknown world index");
  m.require_valid();
  return SearchEvaluator(m, false).eval(f)[w] != 0;
}

bool oracle_check(const BirelationalModel& m, const std::string& world,
                  const Formula& f) {
  auto w = m.find(world);
  if (!w) throw std::out_of_range("unknown world '" + world + "'");
  return oracle_check(m, *w, f);
}

WorldSet oracle_denotation(const BirelationalModel& m, const Formula& f) {
  m.require_valid();
  return to_set(SearchEvaluator(m, false).eval(f));
}

bool classical_check(const BirelationalModel& m, WorldIndex w,
                     const Formula& f) {
  if (w >= m.size()) throw std::out_of_range("unknown world index");
  require_serial(m);
  return SearchEvaluator(m, true).eval(f)[w] != 0;
}

WorldSet classical_denotation(const BirelationalModel& m, const Formula& f) {
  require_serial(m);
  return to_set(SearchEvaluator(m, true).eval(f));
}

std::vector<Lasso> enumerate_lassos(const BirelationalModel& m,
                                    WorldIndex from) {
  if (from >= m.size()) throw std::out_of_range("unknown world index");
  std::vector<Lasso> out;
  std::vector<WorldIndex> path{from};
  std::vector<char> on_path(m.size(), 0);
  on_path[from] = 1;
  std::function<void()> extend = [&] {
    WorldIndex last = path.back();
    for (WorldIndex u : m.successors(last).members()) {
      if (on_path[u]) {
        std::size_t k = 0;
        while (path[k] != u) ++k;
        Lasso l;
        l.prefix.assign(path.begin(), path.begin() + static_cast<long>(k));
        l.cycle.assign(path.begin() + static_cast<long>(k), path.end());
        out.push_back(std::move(l));
      } else {
        on_path[u] = 1;
        path.push_back(u);
        extend();
        path.pop_back();
        on_path[u] = 0;
      }
    }
  };
  extend();
  return out;
}

bool path_satisfies(const Lasso& path, PathClause clause, const WorldSet& a,
                    const WorldSet& b) {
  // Positions at or beyond span() repeat earlier ones, so they cannot change
  // the outcome of an until or release clause.
  switch (clause) {
    case PathClause::Next:
      return a.contains(path.at(1));
    case PathClause::Until:
      for (std::size_t j = 0; j < path.span(); ++j) {
        if (b.contains(path.at(j))) return true;
        if (!a.contains(path.at(j))) return false;
      }
      return false;
    case PathClause::Release:
      for (std::size_t j = 0; j < path.span(); ++j) {
        if (!b.contains(path.at(j))) return false;
        if (a.contains(path.at(j))) return true;
      }
      return true;
  }
  return false;
}

WorldSet lasso_denotation(const BirelationalModel& m, const Formula& f) {
  m.require_valid();
  const std::size_t n = m.size();
  std::vector<std::vector<Lasso>> lassos(n);
  for (WorldIndex w = 0; w < n; ++w) lassos[w] = enumerate_lassos(m, w);

  std::unordered_map<Formula, WorldSet> memo;
  auto some_path = [&](WorldIndex w, PathClause c, const WorldSet& a,
                       const WorldSet& b) {
    for (const auto& l : lassos[w])
      if (path_satisfies(l, c, a, b)) return true;
    return false;
  };
  auto every_path_above = [&](WorldIndex w, PathClause c, const WorldSet& a,
                              const WorldSet& b) {
    for (WorldIndex v = 0; v < n; ++v) {
      if (!m.preorder(w, v)) continue;
      for (const auto& l : lassos[v])
        if (!path_satisfies(l, c, a, b)) return false;
    }
    return true;
  };

  for (const auto& g : subformulas(f)) {
    WorldSet out(n);
    WorldSet none(n);
    const WorldSet& a = g.arity() > 0 ? memo.at(g.arg(0)) : none;
    const WorldSet& b = g.arity() > 1 ? memo.at(g.arg(1)) : none;
    for (WorldIndex w = 0; w < n; ++w) {
      bool v = false;
      switch (g.op()) {
        case Op::Atom: v = m.atom_worlds(g.atom_name()).contains(w); break;
        case Op::Bottom: v = false; break;
        case Op::And: v = a.contains(w) && b.contains(w); break;
        case Op::Or: v = a.contains(w) || b.contains(w); break;
        case Op::Implies:
          v = true;
          for (WorldIndex u = 0; u < n; ++u)
            if (m.preorder(w, u) && a.contains(u) && !b.contains(u)) v = false;
          break;
        case Op::ExistsNext: v = some_path(w, PathClause::Next, a, b); break;
        case Op::ExistsUntil: v = some_path(w, PathClause::Until, a, b); break;
        case Op::ExistsRelease:
          v = some_path(w, PathClause::Release, a, b);
          break;
        case Op::ForallNext:
          v = every_path_above(w, PathClause::Next, a, b);
          break;
        case Op::ForallUntil:
          v = every_path_above(w, PathClause::Until, a, b);
          break;
        case Op::ForallRelease:
          v = every_path_above(w, PathClause::Release, a, b);
          break;
      }
      if (v) out.insert(w);
    }
    memo.emplace(g, std::move(out));
  }
  return memo.at(f);
}

bool lasso_check(const BirelationalModel& m, WorldIndex w, const Formula& f) {
  if (w >= m.size()) throw std::out_of_range("unknown world index");
  return lasso_denotation(m, f).contains(w);
}

std::vector<WorldIndex> lift_path(const BirelationalModel& m,
                                  WorldIndex w_prime,
                                  const std::vector<WorldIndex>& prefix) {
  if (prefix.empty()) throw std::invalid_argument("lift_path: empty prefix");
  if (w_prime >= m.size() || prefix[0] >= m.size())
    throw std::out_of_range("lift_path: unknown world");
  if (!m.preorder(prefix[0], w_prime))
    throw std::invalid_argument("lift_path: start is not P-below w'");
  for (std::size_t i = 1; i < prefix.size(); ++i)
    if (!m.transition(prefix[i - 1], prefix[i]))
      throw std::invalid_argument("lift_path: prefix is not a transition path");

  std::vector<WorldIndex> tau{w_prime};
  for (std::size_t i = 1; i < prefix.size(); ++i) {
    WorldIndex chosen = m.size();
    for (WorldIndex u = 0; u < m.size(); ++u)
      if (m.transition(tau.back(), u) && m.preorder(prefix[i], u)) {
        chosen = u;
        break;
      }
    if (chosen == m.size())
      throw InvalidFrame("lift_path: no C2 witness above '" +
                         m.name(prefix[i]) + "' from '" + m.name(tau.back()) +
                         "'");
    tau.push_back(chosen);
  }
  return tau;
}

}  // namespace ictl
