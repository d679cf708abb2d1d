#pragma once

// Supporting sets, permissibility and deducibility.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "caselaw/consistency.hpp"
#include "caselaw/entailment.hpp"
#include "caselaw/model.hpp"

namespace caselaw {

/// An Assess leaf of a stored case.
struct AssessRef {
  CaseId case_id;
  NodePath path;
  Formula pre;
  Formula fact;

  NodeRef ref() const { return {case_id, path}; }
  bool operator==(const AssessRef&) const = default;
};

struct SupportingSet {
  std::vector<AssessRef> members;

  bool operator==(const SupportingSet&) const = default;
};

struct Query {
  Formula f;
  Formula case_desc;
  CourtId crt;
};

/// All Assess leaves in canonical order: case time, then node path.
std::vector<AssessRef> assess_leaves(const CaseLawDatabase& db);

/// Assess leaves outside U(DB) whose leaf subcase is warranted w.r.t. U(DB),
/// i.e. the leaves a new case may cite. Canonical order.
std::vector<AssessRef> citable_leaves(const CaseLawDatabase& db, Checker& checker);

/// Citable leaves with KB_W & CaseDesc |= pre and KB_W & CaseDesc & fact
/// satisfiable. Canonical order.
std::vector<AssessRef> candidate_nodes(const CaseLawDatabase& db, const Query& q,
                                       const Oracle& oracle = Oracle());

/// Conditions (1)-(3): the members' pres follow from KB_W & CaseDesc, their
/// facts together with KB_W & CaseDesc entail f and are satisfiable.
/// Throws ModelError if a member does not name an Assess leaf of `db`.
bool is_supporting(const CaseLawDatabase& db, const Query& q, const SupportingSet& a,
                   const Oracle& oracle = Oracle());

/// The case (true, CaseDesc, tree, crt) whose tree is an AND root `true` over
/// one Ref leaf per member; for the empty set a single Axiom `true` leaf.
Case supporting_probe(const Query& q, const SupportingSet& a);

/// DB u {probe} is consistent.
bool is_consistent_with(const CaseLawDatabase& db, const Query& q, const SupportingSet& a,
                        const Oracle& oracle = Oracle());

/// C(A): root AND with formula f over one Ref leaf per member (pre and fact
/// copied from the member, targeting the member's leaf) and one Axiom leaf
/// (conjunction of member facts -> f); with no members the Axiom leaf is f.
Case witness_case(const CaseLawDatabase& db, const Query& q, const SupportingSet& a);

struct PermitOptions {
  /// Skip supersets of sets whose facts contradict KB_W & CaseDesc.
  bool prune_supersets = true;
  /// Run check_db first and throw InconsistentDatabaseError on failure.
  bool verify_database = true;
  /// permit_set: cap on supporting-set combinations examined.
  std::size_t max_combinations = std::size_t{1} << 20;
};

/// The first supporting set (by size, then lexicographically in canonical
/// order) whose witness case can be appended consistently.
std::optional<SupportingSet> find_supporting_set(const CaseLawDatabase& db, const Query& q,
                                                 const PermitOptions& options = {},
                                                 const Oracle& oracle = Oracle());

/// Witness case C(A) for the first such supporting set, or nullopt.
std::optional<Case> permit(const CaseLawDatabase& db, const Query& q,
                           const PermitOptions& options = {}, const Oracle& oracle = Oracle());

/// Witness cases for all formulas that can be appended together, in ascending
/// formula-text order, or nullopt. Keys are the formulas of `fs`.
std::optional<std::map<Formula, Case>> permit_set(const CaseLawDatabase& db,
                                                  const std::vector<Formula>& fs,
                                                  const Formula& case_desc, const CourtId& crt,
                                                  const PermitOptions& options = {},
                                                  const Oracle& oracle = Oracle());

enum class Deducibility { Deducible, PermittedButContradicted, NotPermitted };

const char* to_string(Deducibility d);

Deducibility deducible(const CaseLawDatabase& db, const Query& q,
                       const PermitOptions& options = {}, const Oracle& oracle = Oracle());

/// Supporting set for the formula of the node at `path` of stored case `c`
/// under CaseDesc := pres of that node, built by collecting the Assess leaves
/// below the node, choosing among OR branches and expanding Ref leaves into
/// the leaves of the referenced subcases. When no collected set passes
/// is_supporting, searches subsets of all Assess leaves outside U(DB) (at most
/// 16 usable leaves). nullopt when neither finds one.
std::optional<SupportingSet> supports_exists_for_node(const CaseLawDatabase& db, const Case& c,
                                                      const NodePath& path,
                                                      const Oracle& oracle = Oracle());

}  // namespace caselaw
