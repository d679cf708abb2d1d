#pragma once

#include <set>
#include <string>
#include <vector>

#include "caselaw/formula.hpp"

namespace caselaw {

struct Literal {
  Atom atom;
  bool positive = true;

  auto operator<=>(const Literal&) const = default;
  bool operator==(const Literal&) const = default;

  Formula to_formula() const;
};

/// A disjunction of literals, kept sorted and duplicate-free.
using Clause = std::vector<Literal>;

/// Conjunction of clauses over the source formula's own atoms. The empty clause
/// set is Top; a set containing the empty clause is Bot.
struct CnfFormula {
  std::set<Clause> clauses;

  bool operator==(const CnfFormula&) const = default;

  bool is_top() const { return clauses.empty(); }
  bool is_bot() const { return clauses.count(Clause{}) > 0; }

  Formula to_formula() const;
  std::string to_string() const;
};

/// Equivalent CNF by implication elimination, negation pushing and distribution.
/// Introduces no auxiliary atoms; drops tautological and subsumed clauses.
/// Worst-case exponential in the size of `f`.
CnfFormula to_structural_cnf(const Formula& f);

}  // namespace caselaw
