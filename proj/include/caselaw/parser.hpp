#pragma once

#include <string_view>

#include "caselaw/formula.hpp"

namespace caselaw {

/// Parses the formula grammar
///
///   formula := iff ; iff := imp ("<->" imp)* ; imp := or ("->" or)* ;
///   or := and ("|" and)* ; and := unary ("&" unary)* ;
///   unary := "!" unary | "(" formula ")" | "true" | "false" | atom ;
///   atom := IDENT [ "(" IDENT ("," IDENT)* ")" ]
///
/// `&` and `|` associate to the left, `->` and `<->` to the right.
/// Throws ParseError with the 1-based line and column of the offending token.
Formula parse_formula(std::string_view text);

}  // namespace caselaw
