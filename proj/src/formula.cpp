#include "ictl/formula.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace ictl {

struct Formula::Node {
  Op op;
  std::string name;
  std::vector<Formula> args;
  std::size_t hash = 0;
  std::size_t size = 1;
  std::size_t depth = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

constexpr std::string_view kReserved[] = {"false", "true"};

}  // namespace

std::size_t arity(Op op) noexcept {
  switch (op) {
    case Op::Atom:
    case Op::Bottom:
      return 0;
    case Op::ExistsNext:
    case Op::ForallNext:
      return 1;
    default:
      return 2;
  }
}

bool is_valid_atom_name(std::string_view name) noexcept {
  if (name.empty() || name.front() < 'a' || name.front() > 'z') return false;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return std::find(std::begin(kReserved), std::end(kReserved), name) ==
         std::end(kReserved);
}

std::string_view op_name(Op op) noexcept {
  switch (op) {
    case Op::Atom: return "atom";
    case Op::Bottom: return "false";
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Implies: return "->";
    case Op::ExistsNext: return "EX";
    case Op::ExistsUntil: return "EU";
    case Op::ExistsRelease: return "ER";
    case Op::ForallNext: return "AX";
    case Op::ForallUntil: return "AU";
    case Op::ForallRelease: return "AR";
  }
  return "?";
}

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula Formula::make(Op op, std::vector<Formula> args) {
  if (op == Op::Atom) throw std::invalid_argument("use Formula::atom");
  if (args.size() != ictl::arity(op))
    throw std::invalid_argument("wrong operand count for " +
                                std::string(op_name(op)));
  auto node = std::make_shared<Node>();
  node->op = op;
  node->hash = mix(0, static_cast<std::size_t>(op));
  for (const auto& a : args) {
    node->hash = mix(node->hash, a.hash());
    node->size += a.size();
    node->depth = std::max(node->depth, a.depth() + 1);
  }
  node->args = std::move(args);
  return Formula(std::move(node));
}

Formula Formula::atom(std::string name) {
  if (!is_valid_atom_name(name))
    throw std::invalid_argument("invalid atom name '" + name + "'");
  auto node = std::make_shared<Node>();
  node->op = Op::Atom;
  node->hash = mix(std::hash<std::string>{}(name), 0x51);
  node->name = std::move(name);
  return Formula(std::move(node));
}

Formula Formula::bottom() { return make(Op::Bottom, {}); }
Formula Formula::top() { return implies(bottom(), bottom()); }
Formula Formula::conj(Formula a, Formula b) {
  return make(Op::And, {std::move(a), std::move(b)});
}
Formula Formula::disj(Formula a, Formula b) {
  return make(Op::Or, {std::move(a), std::move(b)});
}
Formula Formula::implies(Formula a, Formula b) {
  return make(Op::Implies, {std::move(a), std::move(b)});
}
Formula Formula::negation(Formula f) {
  return implies(std::move(f), bottom());
}
Formula Formula::ex(Formula f) { return make(Op::ExistsNext, {std::move(f)}); }
Formula Formula::ax(Formula f) { return make(Op::ForallNext, {std::move(f)}); }
Formula Formula::eu(Formula a, Formula b) {
  return make(Op::ExistsUntil, {std::move(a), std::move(b)});
}
Formula Formula::er(Formula a, Formula b) {
  return make(Op::ExistsRelease, {std::move(a), std::move(b)});
}
Formula Formula::au(Formula a, Formula b) {
  return make(Op::ForallUntil, {std::move(a), std::move(b)});
}
Formula Formula::ar(Formula a, Formula b) {
  return make(Op::ForallRelease, {std::move(a), std::move(b)});
}

Op Formula::op() const noexcept { return node_->op; }
std::size_t Formula::arity() const noexcept { return node_->args.size(); }

const Formula& Formula::arg(std::size_t i) const {
  if (i >= node_->args.size()) throw std::out_of_range("Formula::arg");
  return node_->args[i];
}

const std::string& Formula::atom_name() const {
  if (node_->op != Op::Atom) throw std::logic_error("not an atom");
  return node_->name;
}

std::size_t Formula::hash() const noexcept { return node_->hash; }
std::size_t Formula::size() const noexcept { return node_->size; }
std::size_t Formula::depth() const noexcept { return node_->depth; }

std::vector<std::string> Formula::atoms() const {
  std::set<std::string> names;
  for (const auto& g : subformulas(*this))
    if (g.op() == Op::Atom) names.insert(g.atom_name());
  return {names.begin(), names.end()};
}

bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->op != b.node_->op ||
      a.node_->size != b.node_->size)
    return false;
  if (a.node_->op == Op::Atom) return a.node_->name == b.node_->name;
  for (std::size_t i = 0; i < a.node_->args.size(); ++i)
    if (a.node_->args[i] != b.node_->args[i]) return false;
  return true;
}

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula> seen;
  // Iterative post-order so deep formulas do not exhaust the stack.
  std::vector<std::pair<Formula, std::size_t>> stack{{f, 0}};
  while (!stack.empty()) {
    auto& [g, next] = stack.back();
    if (seen.count(g)) {
      stack.pop_back();
      continue;
    }
    if (next < g.arity()) {
      Formula child = g.arg(next++);
      if (!seen.count(child)) stack.emplace_back(std::move(child), 0);
      continue;
    }
    seen.insert(g);
    out.push_back(g);
    stack.pop_back();
  }
  return out;
}

namespace {

// Binding strength: -> 0, | 1, & 2, prefix and atoms 3.
int level(const Formula& f) {
  switch (f.op()) {
    case Op::Implies: return 0;
    case Op::Or: return 1;
    case Op::And: return 2;
    default: return 3;
  }
}

void print(const Formula& f, int min_level, std::string& out) {
  bool paren = level(f) < min_level;
  if (paren) out += '(';
  switch (f.op()) {
    case Op::Atom:
      out += f.atom_name();
      break;
    case Op::Bottom:
      out += "false";
      break;
    case Op::Implies:
      print(f.arg(0), 1, out);
      out += " -> ";
      print(f.arg(1), 0, out);
      break;
    case Op::Or:
      print(f.arg(0), 1, out);
      out += " | ";
      print(f.arg(1), 2, out);
      break;
    case Op::And:
      print(f.arg(0), 2, out);
      out += " & ";
      print(f.arg(1), 3, out);
      break;
    case Op::ExistsNext:
    case Op::ForallNext:
      out += f.op() == Op::ExistsNext ? "EX " : "AX ";
      print(f.arg(0), 3, out);
      break;
    case Op::ExistsUntil:
    case Op::ExistsRelease:
    case Op::ForallUntil:
    case Op::ForallRelease: {
      bool exists = f.op() == Op::ExistsUntil || f.op() == Op::ExistsRelease;
      bool until = f.op() == Op::ExistsUntil || f.op() == Op::ForallUntil;
      out += exists ? "E[" : "A[";
      print(f.arg(0), 0, out);
      out += until ? " U " : " R ";
      print(f.arg(1), 0, out);
      out += ']';
      break;
    }
  }
  if (paren) out += ')';
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

}  // namespace ictl
