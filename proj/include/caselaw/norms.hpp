#pragma once

// Norms read off privacy cases, and the normal form N(C) that exposes them.

#include <string>
#include <vector>

#include "caselaw/entailment.hpp"
#include "caselaw/model.hpp"

namespace caselaw {

enum class Polarity { Positive, Negative };

/// condition -> is_legal_action(action) when Positive, condition ->
/// !is_legal_action(action) when Negative.
struct Norm {
  Polarity polarity = Polarity::Positive;
  std::string action;
  Formula condition;

  Formula conclusion() const;
  Formula as_formula() const;
  /// `+` or `-`, the action and the condition, tab separated.
  std::string to_line() const;

  bool operator==(const Norm&) const = default;
};

/// facts_C split into a world part and a trigger: facts_C entails
/// phi_w & (phi_s -> df), and phi_w entails phi_s.
struct NormSplit {
  Formula phi_w;
  Formula phi_s;

  bool operator==(const NormSplit&) const = default;
};

/// Clause surgery on the structural CNF of facts_C. Clauses with the df literal
/// (df itself, or !L for a negative df) contribute r_j, the conjunction of the
/// negated remaining literals, and phi_s is the disjunction of the r_j. The
/// complementary literal is deleted from the other clauses, which form phi_w.
/// Throws ModelError if `c` is not a privacy case of `db`.
NormSplit split_facts(const Case& c, const CaseLawDatabase& db);

/// Norm with condition pres_C & phi_s.
Norm extract_norm(const Case& c, const CaseLawDatabase& db);

/// One norm per privacy case, in time order.
std::vector<Norm> extract_norms(const CaseLawDatabase& db);

/// KB_W & facts_C |= phi_w & (phi_s -> df) and KB_W & phi_w |= phi_s.
bool verify_norm_properties(const Case& c, const NormSplit& split,
                            const Formula& kb_w = Formula::top(), const Oracle& oracle = Oracle());

/// N(C): AND root df over two AND nodes phi_w and phi_s -> df, each above a copy
/// of the leaves of `c` in pre-order. Same id, description, court and time.
Case normal_form(const Case& c, const CaseLawDatabase& db);

/// `db` with N(C) in place of case `id`. References to the leaves of C are
/// redirected to the first copy, marks on them apply to both copies. Throws
/// ModelError when another case references an inner non-root node of C, as it
/// has no counterpart in N(C).
CaseLawDatabase normalize(const CaseLawDatabase& db, const CaseId& id);

/// Every privacy case replaced by its normal form.
CaseLawDatabase normalize_all(const CaseLawDatabase& db);

}  // namespace caselaw
