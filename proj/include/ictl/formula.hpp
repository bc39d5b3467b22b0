// Abstract syntax for intuitionistic CTL formulas.
//
// Formula is an immutable value with shared structure. Copies are cheap and
// equality is structural. Negation and `true` are surface sugar only: the
// parser lowers ~f to (f -> false) and true to (false -> false).

#ifndef ICTL_FORMULA_HPP
#define ICTL_FORMULA_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace ictl {

enum class Op : std::uint8_t {
  Atom,
  Bottom,
  And,
  Or,
  Implies,
  ExistsNext,
  ExistsUntil,
  ExistsRelease,
  ForallNext,
  ForallUntil,
  ForallRelease,
};

/// Number of operand slots for an operator (0, 1 or 2).
std::size_t arity(Op op) noexcept;

/// True for names of the form [a-z][A-Za-z0-9_]* that are not reserved words.
bool is_valid_atom_name(std::string_view name) noexcept;

class Formula {
 public:
  static Formula atom(std::string name);
  static Formula bottom();
  static Formula top();  // false -> false
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula negation(Formula f);  // f -> false
  static Formula ex(Formula f);
  static Formula ax(Formula f);
  static Formula eu(Formula lhs, Formula rhs);
  static Formula er(Formula lhs, Formula rhs);
  static Formula au(Formula lhs, Formula rhs);
  static Formula ar(Formula lhs, Formula rhs);

  /// Builds a node of the given operator. Throws std::invalid_argument when
  /// the operand count does not match arity(op).
  static Formula make(Op op, std::vector<Formula> args);

  Op op() const noexcept;
  std::size_t arity() const noexcept;
  const Formula& arg(std::size_t i) const;
  const std::string& atom_name() const;

  std::size_t hash() const noexcept;
  std::size_t size() const noexcept;   // node count
  std::size_t depth() const noexcept;  // leaves have depth 0

  /// Distinct atom names, sorted.
  std::vector<std::string> atoms() const;

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend bool operator!=(const Formula& a, const Formula& b) noexcept {
    return !(a == b);
  }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// Post-order list of distinct subformulas; each entry follows its children
/// and the last entry is `f`.
std::vector<Formula> subformulas(const Formula& f);

/// Canonical text. parse_formula(print_formula(f)) == f for every f.
std::string print_formula(const Formula& f);

std::string_view op_name(Op op) noexcept;

}  // namespace ictl

template <>
struct std::hash<ictl::Formula> {
  std::size_t operator()(const ictl::Formula& f) const noexcept {
    return f.hash();
  }
};

#endif  // ICTL_FORMULA_HPP
