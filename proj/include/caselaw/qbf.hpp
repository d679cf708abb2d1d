#pragma once

// Two-level QBF: the switch encoding of supporting-set existence, a solver by
// universal expansion, and the reduction from QBF validity to permissibility.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "caselaw/entailment.hpp"
#include "caselaw/model.hpp"
#include "caselaw/reasoning.hpp"

namespace caselaw {

/// exists X forall Y matrix(X, Y).
struct QbfInstance {
  std::vector<Atom> exists_vars;
  std::vector<Atom> forall_vars;
  Formula matrix;

  bool operator==(const QbfInstance&) const = default;
};

/// Throws ModelError unless X and Y are disjoint, free of duplicates and cover
/// every atom of the matrix.
void validate(const QbfInstance& inst);

/// Text format:
///
///   e x1 x2 0
///   a y1 0
///   <formula>
///
/// Blank lines and lines starting with `c` are skipped. Throws ParseError,
/// also when the instance fails `validate`.
QbfInstance parse_qbf(std::string_view text);
std::string to_qbf_text(const QbfInstance& inst);

inline constexpr std::size_t kDefaultExpansionLimit = std::size_t{1} << 20;

/// The matrix with every universal variable expanded: the conjunction of
/// matrix[Y := v] over all 2^|Y| assignments v. Throws SizeLimitError when
/// 2^|Y| exceeds `limit`.
Formula expand_universal(const QbfInstance& inst, std::size_t limit = kDefaultExpansionLimit);

/// Validity by universal expansion and one SAT call.
bool solve_qbf(const QbfInstance& inst, std::size_t limit = kDefaultExpansionLimit);

struct SwitchEncoding {
  /// exists chosen_i forall world: phi1 & phi2.
  QbfInstance instance;
  /// KB_W & CaseDesc & AND(!chosen_i | fact_i); must be satisfiable for some
  /// world under the same choice of selectors.
  Formula phi3;
  /// selectors[i] is the leaf switched by `__chosen_<i>`.
  std::vector<AssessRef> selectors;
};

/// One selector per citable Assess leaf. phi1 = KB_W & CaseDesc ->
/// AND(!chosen_i | pre_i), phi2 = KB_W & CaseDesc & AND(!chosen_i | fact_i) -> f.
/// Hierarchical constraints are ignored. Throws ReservedNameError when the
/// database or query already uses `__chosen_` atoms, UnknownCourtError for an
/// unknown query court.
SwitchEncoding encode_switch(const CaseLawDatabase& db, const Query& q,
                             const Oracle& oracle = Oracle());

/// exists chosen: (forall world: phi1 & phi2) and (exists world: phi3), with
/// phi3 over a renamed copy of the world atoms so a single SAT call decides it.
/// Throws SizeLimitError when the expansion exceeds `limit` assignments.
bool solve_switch(const CaseLawDatabase& db, const Query& q,
                  std::size_t limit = kDefaultExpansionLimit, const Oracle& oracle = Oracle());

/// Court of every `x` case, of every `!x` case, and of the query. The three
/// are pairwise incomparable, so no case must agree with another.
inline constexpr const char* kQbfPositiveCourt = "qbf_pos";
inline constexpr const char* kQbfNegativeCourt = "qbf_neg";
inline constexpr const char* kQbfQueryCourt = "__qbf_crt";

/// Per x in X the cases `pos_<x>` (true -> x) and `neg_<x>` (true -> !x), each a
/// single Assess leaf, KB_W = true; the query asks for the matrix under
/// CaseDesc = true. permit succeeds iff the instance is valid.
/// Throws ModelError if X is empty or the instance is invalid.
std::pair<CaseLawDatabase, Query> qbf_to_cld(const QbfInstance& inst);

}  // namespace caselaw
