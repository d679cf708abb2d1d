#include "caselaw/cnf.hpp"

#include <algorithm>
#include <iterator>

namespace caselaw {

Formula Literal::to_formula() const {
  Formula a = Formula::atom(atom);
  return positive ? a : Formula::negation(a);
}

Formula CnfFormula::to_formula() const {
  std::vector<Formula> conjuncts;
  conjuncts.reserve(clauses.size());
  for (const auto& clause : clauses) {
    std::vector<Formula> lits;
    for (const auto& l : clause) lits.push_back(l.to_formula());
    conjuncts.push_back(disjoin_all(lits));
  }
  return conjoin_all(conjuncts);
}

std::string CnfFormula::to_string() const {
  std::string out = "{";
  bool first_clause = true;
  for (const auto& clause : clauses) {
    if (!first_clause) out += ", ";
    first_clause = false;
    out += "{";
    for (std::size_t i = 0; i < clause.size(); ++i) {
      if (i > 0) out += ", ";
      if (!clause[i].positive) out += "!";
      out += clause[i].atom.to_string();
    }
    out += "}";
  }
  return out + "}";
}

namespace {

using ClauseSet = std::set<Clause>;

bool is_tautology(const Clause& c) {
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i - 1].atom == c[i].atom) return true;  // sorted: same atom, both signs
  return false;
}

ClauseSet remove_subsumed(const ClauseSet& in) {
  std::vector<const Clause*> sorted;
  for (const auto& c : in) sorted.push_back(&c);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Clause* a, const Clause* b) { return a->size() < b->size(); });
  std::vector<const Clause*> kept;
  for (const Clause* c : sorted) {
    bool subsumed = std::any_of(kept.begin(), kept.end(), [&](const Clause* k) {
      return std::includes(c->begin(), c->end(), k->begin(), k->end());
    });
    if (!subsumed) kept.push_back(c);
  }
  ClauseSet out;
  for (const Clause* c : kept) out.insert(*c);
  return out;
}

ClauseSet conjunction(ClauseSet a, const ClauseSet& b) {
  a.insert(b.begin(), b.end());
  return remove_subsumed(a);
}

ClauseSet disjunction(const ClauseSet& a, const ClauseSet& b) {
  ClauseSet out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      Clause merged;
      std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(merged));
      if (!is_tautology(merged)) out.insert(std::move(merged));
    }
  }
  return remove_subsumed(out);
}

const ClauseSet& top_set() {
  static const ClauseSet kTop;
  return kTop;
}

const ClauseSet& bot_set() {
  static const ClauseSet kBot{Clause{}};
  return kBot;
}

// CNF of f when `positive`, of !f otherwise.
ClauseSet convert(const Formula& f, bool positive) {
  switch (f.op()) {
    case Op::Top:
      return positive ? top_set() : bot_set();
    case Op::Bot:
      return positive ? bot_set() : top_set();
    case Op::Atom:
      return ClauseSet{Clause{Literal{f.atom_value(), positive}}};
    case Op::Not:
      return convert(f.lhs(), !positive);
    case Op::And:
      return positive ? conjunction(convert(f.lhs(), true), convert(f.rhs(), true))
                      : disjunction(convert(f.lhs(), false), convert(f.rhs(), false));
    case Op::Or:
      return positive ? disjunction(convert(f.lhs(), true), convert(f.rhs(), true))
                      : conjunction(convert(f.lhs(), false), convert(f.rhs(), false));
    case Op::Implies:
      return positive ? disjunction(convert(f.lhs(), false), convert(f.rhs(), true))
                      : conjunction(convert(f.lhs(), true), convert(f.rhs(), false));
    case Op::Iff: {
      ClauseSet a_pos = convert(f.lhs(), true), a_neg = convert(f.lhs(), false);
      ClauseSet b_pos = convert(f.rhs(), true), b_neg = convert(f.rhs(), false);
      if (positive)  // (!a | b) & (a | !b)
        return conjunction(disjunction(a_neg, b_pos), disjunction(a_pos, b_neg));
      // (a | b) & (!a | !b)
      return conjunction(disjunction(a_pos, b_pos), disjunction(a_neg, b_neg));
    }
  }
  return top_set();
}

}  // namespace

CnfFormula to_structural_cnf(const Formula& f) {
  ClauseSet clauses = convert(f, true);
  if (clauses.count(Clause{}) > 0) return CnfFormula{bot_set()};
  return CnfFormula{std::move(clauses)};
}

}  // namespace caselaw
