// Recursive-descent parser for the formula surface syntax.
//
//   formula := impl
//   impl    := or ( "->" impl )?
//   or      := and ( "|" and )*
//   and     := unary ( "&" unary )*
//   unary   := "~" unary | "EX" unary | "AX" unary
//            | ("E" | "A") "[" formula ("U" | "R") formula "]"
//            | "(" formula ")" | "false" | "true" | atom
//   atom    := [a-z][A-Za-z0-9_]*

#ifndef ICTL_PARSER_HPP
#define ICTL_PARSER_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ictl/formula.hpp"

namespace ictl {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, std::vector<std::string> expected,
             const std::string& message);

  /// Byte offset into the input where the error was detected.
  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept {
    return expected_;
  }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

Formula parse_formula(std::string_view text);

}  // namespace ictl

#endif  // ICTL_PARSER_HPP
