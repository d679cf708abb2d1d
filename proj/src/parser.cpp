#include "caselaw/parser.hpp"

#include <string>
#include <vector>

#include "caselaw/errors.hpp"

namespace caselaw {
namespace {

enum class Tok { Ident, LParen, RParen, Comma, Not, And, Or, Implies, Iff, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

const char* describe(Tok kind) {
  switch (kind) {
    case Tok::Ident:
      return "identifier";
    case Tok::LParen:
      return "'('";
    case Tok::RParen:
      return "')'";
    case Tok::Comma:
      return "','";
    case Tok::Not:
      return "'!'";
    case Tok::And:
      return "'&'";
    case Tok::Or:
      return "'|'";
    case Tok::Implies:
      return "'->'";
    case Tok::Iff:
      return "'<->'";
    case Tok::End:
      return "end of input";
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  auto ident_char = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
           (c >= '0' && c <= '9');
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    const std::size_t tl = line, tc = column;
    auto single = [&](Tok kind, std::size_t len) {
      tokens.push_back({kind, std::string(text.substr(i, len)), tl, tc});
      advance(len);
    };
    switch (c) {
      case '(':
        single(Tok::LParen, 1);
        continue;
      case ')':
        single(Tok::RParen, 1);
        continue;
      case ',':
        single(Tok::Comma, 1);
        continue;
      case '!':
        single(Tok::Not, 1);
        continue;
      case '&':
        single(Tok::And, 1);
        continue;
      case '|':
        single(Tok::Or, 1);
        continue;
      case '-':
        if (text.substr(i, 2) == "->") {
          single(Tok::Implies, 2);
          continue;
        }
        break;
      case '<':
        if (text.substr(i, 3) == "<->") {
          single(Tok::Iff, 3);
          continue;
        }
        break;
      default:
        if (ident_char(c) && !(c >= '0' && c <= '9')) {
          std::size_t j = i;
          while (j < text.size() && ident_char(text[j])) ++j;
          single(Tok::Ident, j - i);
          continue;
        }
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", tl, tc);
  }
  tokens.push_back({Tok::End, "", line, column});
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula parse() {
    Formula f = parse_iff();
    expect(Tok::End);
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  const Token& expect(Tok kind) {
    const Token& t = peek();
    if (t.kind != kind) {
      throw ParseError(std::string("expected ") + describe(kind) + " but found " +
                           describe(t.kind) + (t.text.empty() ? "" : " '" + t.text + "'"),
                       t.line, t.column);
    }
    ++pos_;
    return t;
  }

  Formula parse_iff() {
    Formula lhs = parse_imp();
    if (accept(Tok::Iff)) return Formula::equivalence(lhs, parse_iff());
    return lhs;
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (accept(Tok::Implies)) return Formula::implication(lhs, parse_imp());
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept(Tok::Or)) f = Formula::disjunction(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept(Tok::And)) f = Formula::conjunction(f, parse_unary());
    return f;
  }

  Formula parse_unary() {
    if (accept(Tok::Not)) return Formula::negation(parse_unary());
    if (accept(Tok::LParen)) {
      Formula f = parse_iff();
      expect(Tok::RParen);
      return f;
    }
    const Token& name = expect(Tok::Ident);
    const bool reserved = name.text == "true" || name.text == "false";
    if (peek().kind == Tok::LParen) {
      if (reserved)
        throw ParseError("'" + name.text + "' is reserved and cannot take arguments",
                         name.line, name.column);
      ++pos_;
      std::vector<std::string> args;
      do {
        args.push_back(expect(Tok::Ident).text);
      } while (accept(Tok::Comma));
      expect(Tok::RParen);
      return Formula::atom(name.text, std::move(args));
    }
    if (name.text == "true") return Formula::top();
    if (name.text == "false") return Formula::bot();
    return Formula::atom(name.text);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(tokenize(text)).parse(); }

}  // namespace caselaw
