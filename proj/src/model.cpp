#include "ictl/model.hpp"

#include <algorithm>

namespace ictl {

namespace {

Relation transpose(const Relation& rows) {
  Relation out(rows.size(), WorldSet(rows.size()));
  for (WorldIndex a = 0; a < rows.size(); ++a)
    for (WorldIndex b : rows[a].members()) out[b].insert(a);
  return out;
}

std::string tuple_text(const BirelationalModel& m,
                       const std::vector<WorldIndex>& ws) {
  std::string out = "(";
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (i) out += ", ";
    out += m.name(ws[i]);
  }
  return out + ")";
}

class Collector {
 public:
  Collector(const BirelationalModel& m, const ValidateOptions& opts,
            bool stop_at_first)
      : m_(m), opts_(opts), stop_(stop_at_first) {}

  // Returns false once the caller should stop scanning this rule.
  bool add(Rule rule, std::vector<WorldIndex> witness, std::string message) {
    if (stop_ && !report_.violations.empty()) return false;
    if (report_.count(rule) >= opts_.max_per_rule) return false;
    message = rule_name(rule) + " violated at " + tuple_text(m_, witness) +
              (message.empty() ? "" : ": " + message);
    report_.violations.push_back({rule, std::move(witness), std::move(message)});
    return !(stop_ || report_.count(rule) >= opts_.max_per_rule);
  }

  bool done() const { return stop_ && !report_.violations.empty(); }
  ValidationReport take() { return std::move(report_); }

 private:
  const BirelationalModel& m_;
  const ValidateOptions& opts_;
  bool stop_;
  ValidationReport report_;
};

ValidationReport validate_impl(const BirelationalModel& m,
                               const ValidateOptions& opts, bool stop_first) {
  Collector c(m, opts, stop_first);
  const std::size_t n = m.size();

  for (WorldIndex w = 0; w < n; ++w)
    if (!m.preorder(w, w) && !c.add(Rule::Reflexive, {w}, "")) break;

  [&] {
    for (WorldIndex a = 0; a < n; ++a)
      for (WorldIndex b : m.up(a).members())
        for (WorldIndex d : m.up(b).members())
          if (!m.preorder(a, d) && !c.add(Rule::Transitive, {a, b, d}, ""))
            return;
  }();

  for (WorldIndex w = 0; w < n && !c.done(); ++w)
    if (m.successors(w).empty() &&
        !c.add(Rule::Serial, {w}, "no transition successor"))
      break;

  // C1: x R y, y P z  =>  some u with x P u and u R z.
  [&] {
    for (WorldIndex x = 0; x < n; ++x)
      for (WorldIndex y : m.successors(x).members())
        for (WorldIndex z : m.up(y).members())
          if (!m.up(x).intersects(m.predecessors(z)) &&
              !c.add(Rule::C1, {x, y, z}, ""))
            return;
  }();

  // C2: x P z, x R y  =>  some u with y P u and z R u.
  [&] {
    for (WorldIndex x = 0; x < n; ++x)
      for (WorldIndex z : m.up(x).members())
        for (WorldIndex y : m.successors(x).members())
          if (!m.up(y).intersects(m.successors(z)) &&
              !c.add(Rule::C2, {x, y, z}, ""))
            return;
  }();

  for (const auto& [atom, worlds] : m.valuation()) {
    if (c.done()) break;
    bool stop = false;
    for (WorldIndex w : worlds.members()) {
      for (WorldIndex v : m.up(w).members()) {
        if (!worlds.contains(v) &&
            !c.add(Rule::MonotoneValuation, {w, v},
                   "atom '" + atom + "' lost along the preorder")) {
          stop = true;
          break;
        }
      }
      if (stop) break;
    }
  }

  if (opts.check_c3) {
    // C3: x P y, y R z  =>  some u with x R u and u P z.
    [&] {
      for (WorldIndex x = 0; x < n; ++x)
        for (WorldIndex y : m.up(x).members())
          for (WorldIndex z : m.successors(y).members())
            if (!m.successors(x).intersects(m.down(z)) &&
                !c.add(Rule::C3, {x, y, z}, ""))
              return;
    }();
  }
  return c.take();
}

}  // namespace

Relation close_preorder(std::size_t n, const std::vector<Edge>& edges) {
  Relation rows(n, WorldSet(n));
  for (WorldIndex w = 0; w < n; ++w) rows[w].insert(w);
  for (auto [a, b] : edges) rows.at(a).insert(b);
  // Warshall over bit rows.
  for (WorldIndex k = 0; k < n; ++k)
    for (WorldIndex i = 0; i < n; ++i)
      if (rows[i].contains(k)) rows[i] |= rows[k];
  return rows;
}

BirelationalModel::BirelationalModel(std::vector<std::string> names,
                                     const Relation& preorder,
                                     Relation transitions, Valuation valuation)
    : names_(std::move(names)),
      up_(preorder),
      succ_(std::move(transitions)),
      valuation_(std::move(valuation)) {
  const std::size_t n = names_.size();
  if (n == 0) throw std::invalid_argument("a model needs at least one world");
  if (up_.size() != n || succ_.size() != n)
    throw std::invalid_argument("relation row count does not match worlds");
  for (const auto& row : up_)
    if (row.universe() != n)
      throw std::invalid_argument("preorder row over wrong universe");
  for (const auto& row : succ_)
    if (row.universe() != n)
      throw std::invalid_argument("transition row over wrong universe");
  for (const auto& [atom, ws] : valuation_)
    if (ws.universe() != n)
      throw std::invalid_argument("valuation of '" + atom +
                                  "' over wrong universe");
  // Atoms that hold nowhere are dropped so equality ignores them.
  std::erase_if(valuation_, [](const auto& kv) { return kv.second.empty(); });
  down_ = transpose(up_);
  pred_ = transpose(succ_);
  valid_ = validate_impl(*this, ValidateOptions{}, true).ok();
}

BirelationalModel BirelationalModel::from_raw(const RawModel& raw) {
  const std::size_t n = raw.worlds.size();
  Relation succ(n, WorldSet(n));
  for (auto [a, b] : raw.transitions) succ.at(a).insert(b);
  Valuation val;
  for (WorldIndex w = 0; w < raw.valuation.size() && w < n; ++w)
    for (const auto& atom : raw.valuation[w]) {
      auto it = val.try_emplace(atom, WorldSet(n)).first;
      it->second.insert(w);
    }
  return BirelationalModel(raw.worlds, close_preorder(n, raw.preorder),
                           std::move(succ), std::move(val));
}

std::optional<WorldIndex> BirelationalModel::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<WorldIndex>(it - names_.begin());
}

WorldSet BirelationalModel::atom_worlds(const std::string& atom) const {
  auto it = valuation_.find(atom);
  return it == valuation_.end() ? empty_set() : it->second;
}

std::set<std::string> BirelationalModel::atoms_at(WorldIndex w) const {
  std::set<std::string> out;
  for (const auto& [atom, ws] : valuation_)
    if (ws.contains(w)) out.insert(atom);
  return out;
}

void BirelationalModel::require_valid() const {
  if (valid_) return;
  auto report = validate_frame(*this, {.check_c3 = false, .max_per_rule = 1});
  throw InvalidFrame("invalid birelational model: " +
                     report.violations.front().message);
}

BirelationalModel BirelationalModel::with_identity_preorder() const {
  return BirelationalModel(names_, close_preorder(size(), {}), succ_,
                           valuation_);
}

WorldSet up_set(const BirelationalModel& m, WorldIndex w) { return m.up(w); }

WorldSet up_interior(const BirelationalModel& m, const WorldSet& y) {
  WorldSet out = m.empty_set();
  for (WorldIndex w = 0; w < m.size(); ++w)
    if (m.up(w).subset_of(y)) out.insert(w);
  return out;
}

WorldSet pre_exists(const BirelationalModel& m, const WorldSet& x) {
  WorldSet out = m.empty_set();
  for (WorldIndex w = 0; w < m.size(); ++w)
    if (m.successors(w).intersects(x)) out.insert(w);
  return out;
}

WorldSet pre_forall(const BirelationalModel& m, const WorldSet& x) {
  WorldSet out = m.empty_set();
  for (WorldIndex w = 0; w < m.size(); ++w)
    if (m.successors(w).subset_of(x)) out.insert(w);
  return out;
}

WorldSet complement(const BirelationalModel& m, const WorldSet& x) {
  if (x.universe() != m.size())
    throw std::invalid_argument("world set over wrong universe");
  return x.complemented();
}

bool is_upward_closed(const BirelationalModel& m, const WorldSet& x) {
  for (WorldIndex w : x.members())
    if (!m.up(w).subset_of(x)) return false;
  return true;
}

WorldSet up_closure(const BirelationalModel& m, const WorldSet& x) {
  WorldSet out = m.empty_set();
  for (WorldIndex w : x.members()) out |= m.up(w);
  return out;
}

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::Reflexive: return "reflexive";
    case Rule::Transitive: return "transitive";
    case Rule::Serial: return "serial";
    case Rule::C1: return "C1";
    case Rule::C2: return "C2";
    case Rule::MonotoneValuation: return "monotone-valuation";
    case Rule::C3: return "C3-optional";
  }
  return "?";
}

std::size_t ValidationReport::count(Rule r) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(),
                    [r](const Violation& v) { return v.rule == r; }));
}

ValidationReport validate_frame(const BirelationalModel& m,
                                const ValidateOptions& options) {
  return validate_impl(m, options, false);
}

}  // namespace ictl
