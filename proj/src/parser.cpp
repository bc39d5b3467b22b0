#include "ictl/parser.hpp"

#include <cctype>

namespace ictl {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

enum class Tok {
  End,
  Atom,
  False,
  True,
  Not,
  And,
  Or,
  Arrow,
  LParen,
  RParen,
  LBracket,
  RBracket,
  EX,
  AX,
  E,
  A,
  U,
  R,
};

struct Token {
  Tok kind;
  std::size_t pos;
  std::string_view text;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + std::string(t.text) + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::size_t start = pos_;
    if (pos_ == text_.size()) return {Tok::End, start, {}};
    char c = text_[pos_];
    auto single = [&](Tok k) {
      ++pos_;
      return Token{k, start, text_.substr(start, 1)};
    };
    switch (c) {
      case '~': return single(Tok::Not);
      case '&': return single(Tok::And);
      case '|': return single(Tok::Or);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '[': return single(Tok::LBracket);
      case ']': return single(Tok::RBracket);
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          pos_ += 2;
          return {Tok::Arrow, start, text_.substr(start, 2)};
        }
        throw ParseError(start, {"'->'"}, "stray '-'");
      default:
        break;
    }
    if (c >= 'a' && c <= 'z') {
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      auto word = text_.substr(start, pos_ - start);
      if (word == "false") return {Tok::False, start, word};
      if (word == "true") return {Tok::True, start, word};
      return {Tok::Atom, start, word};
    }
    if (c >= 'A' && c <= 'Z') {
      // Keywords are runs of capitals, so "EXp" lexes as EX p.
      while (pos_ < text_.size() && text_[pos_] >= 'A' && text_[pos_] <= 'Z')
        ++pos_;
      auto word = text_.substr(start, pos_ - start);
      if (word == "EX") return {Tok::EX, start, word};
      if (word == "AX") return {Tok::AX, start, word};
      if (word == "E") return {Tok::E, start, word};
      if (word == "A") return {Tok::A, start, word};
      if (word == "U") return {Tok::U, start, word};
      if (word == "R") return {Tok::R, start, word};
      throw ParseError(start, {"EX", "AX", "E", "A", "U", "R"},
                       "unknown keyword '" + std::string(word) + "'");
    }
    throw ParseError(start, {}, std::string("unexpected character '") + c +
                                    "'");
  }

 private:
  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { advance(); }

  Formula parse() {
    if (cur_.kind == Tok::End)
      throw ParseError(0, {"formula"}, "empty input");
    Formula f = implication();
    if (cur_.kind != Tok::End) fail({"end of input", "'&'", "'|'", "'->'"});
    return f;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string msg = "unexpected " + describe(cur_) + ", expected " +
                      join(expected);
    throw ParseError(cur_.pos, std::move(expected), msg);
  }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) fail({what});
    advance();
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (cur_.kind == Tok::Arrow) {
      advance();
      return Formula::implies(std::move(lhs), implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (cur_.kind == Tok::Or) {
      advance();
      f = Formula::disj(std::move(f), conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (cur_.kind == Tok::And) {
      advance();
      f = Formula::conj(std::move(f), unary());
    }
    return f;
  }

  Formula unary() {
    switch (cur_.kind) {
      case Tok::Not:
        advance();
        return Formula::negation(unary());
      case Tok::EX:
        advance();
        return Formula::ex(unary());
      case Tok::AX:
        advance();
        return Formula::ax(unary());
      case Tok::E:
      case Tok::A: {
        bool exists = cur_.kind == Tok::E;
        advance();
        expect(Tok::LBracket, "'['");
        Formula lhs = implication();
        bool until;
        if (cur_.kind == Tok::U) {
          until = true;
        } else if (cur_.kind == Tok::R) {
          until = false;
        } else {
          fail({"'U'", "'R'"});
        }
        advance();
        Formula rhs = implication();
        expect(Tok::RBracket, "']'");
        if (exists)
          return until ? Formula::eu(std::move(lhs), std::move(rhs))
                       : Formula::er(std::move(lhs), std::move(rhs));
        return until ? Formula::au(std::move(lhs), std::move(rhs))
                     : Formula::ar(std::move(lhs), std::move(rhs));
      }
      case Tok::LParen: {
        advance();
        Formula f = implication();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::False:
        advance();
        return Formula::bottom();
      case Tok::True:
        advance();
        return Formula::top();
      case Tok::Atom: {
        Formula f = Formula::atom(std::string(cur_.text));
        advance();
        return f;
      }
      default:
        fail({"atom", "'false'", "'true'", "'~'", "'EX'", "'AX'", "'E'",
              "'A'", "'('"});
    }
  }

  Lexer lexer_;
  Token cur_{};
};

}  // namespace

ParseError::ParseError(std::size_t position, std::vector<std::string> expected,
                       const std::string& message)
    : std::runtime_error("parse error at " + std::to_string(position) + ": " +
                         message),
      position_(position),
      expected_(std::move(expected)) {}

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

}  // namespace ictl
