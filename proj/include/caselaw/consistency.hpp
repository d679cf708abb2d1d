#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "caselaw/entailment.hpp"
#include "caselaw/model.hpp"

namespace caselaw {

enum class ViolationKind { CaseWise, Referential, Hierarchical, Warrant };

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  CaseId case_id;
  std::optional<NodePath> path;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

struct ConsistencyReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void merge(const ConsistencyReport& other);
};

/// Case consistency: (i) KB_W & CaseDesc is satisfiable, (ii) it entails
/// pres_C, (iii) KB_W & CaseDesc & facts_C is satisfiable, every Axiom leaf is
/// entailed by KB_W & CaseDesc, and every inner node follows from its children
/// (conjunction for AND, disjunction for OR; a leaf child contributes its fact).
/// A root formula differing from df is also reported.
ConsistencyReport check_case(const Case& c, const Formula& kb_w, const Oracle& oracle = Oracle());

/// Replaces the pre of every leaf of `c` named in `blocked` by false and checks
/// case consistency of the result.
bool warranted_subcase(const Case& c, const std::set<NodeRef>& blocked, const Formula& kb_w,
                       const Oracle& oracle = Oracle());

/// Consistency checks against one database. Results about stored (sub)cases are
/// memoized, so a Checker should be reused across related queries on the same
/// database. Cases not stored in the database are treated as appended at the
/// end of the timeline and are never memoized.
class Checker {
 public:
  explicit Checker(const CaseLawDatabase& db, Oracle oracle = Oracle());

  const CaseLawDatabase& db() const { return db_; }
  const Oracle& oracle() const { return oracle_; }

  ConsistencyReport check_case(const Case& c);
  bool case_consistent(const Case& c);
  /// Whether `c` is warranted w.r.t. `blocked`.
  bool warranted(const Case& c, const std::set<NodeRef>& blocked);

  /// Correct reference of the Ref leaf at `leaf_path` in `c`: (a) the targeted
  /// subcase decides the leaf's fact, (b) it is warranted w.r.t. U(C),
  /// (c) may_ref(C, D), (d) KB_W & pre entails the target's pres.
  ConsistencyReport check_reference(const Case& c, const NodePath& leaf_path);
  ConsistencyReport check_references(const Case& c);

  bool in_conflict(const Case& c1, const Case& c2);
  /// Conflicts of `c` with every earlier stored case it must agree with.
  ConsistencyReport check_conflicts(const Case& c);

  /// Warrant consistency as seen by observer `c`: every Ref leaf (of stored
  /// cases, plus those of `c` itself) whose target is unwarranted w.r.t. U(c)
  /// must be in U(c).
  ConsistencyReport check_warrants_for(const Case& c);

  ConsistencyReport check_case_wise();
  ConsistencyReport check_referential();
  ConsistencyReport check_hierarchical();
  ConsistencyReport check_warrants();
  ConsistencyReport check_db();

  /// Consistency of DB u {c} given that DB itself is consistent: only checks
  /// that involve `c` are made. `c` must not be stored in the database; its
  /// time is set to the end of the timeline.
  ConsistencyReport check_appended(Case c);

 private:
  const Case& target_subcase(const ProofNode& ref_leaf);
  bool cacheable(const Case& c) const;
  ConsistencyReport case_report(const Case& c);

  const CaseLawDatabase& db_;
  Oracle oracle_;
  std::map<NodeRef, Case> subcases_;
  std::map<NodeRef, ConsistencyReport> case_reports_;
  std::map<std::pair<NodeRef, std::set<NodeRef>>, bool> blocked_results_;
};

// Single-shot conveniences over a fresh Checker.
ConsistencyReport check_reference(const CaseLawDatabase& db, const Case& c,
                                  const NodePath& leaf_path, const Oracle& oracle = Oracle());
bool in_conflict(const CaseLawDatabase& db, const Case& c1, const Case& c2,
                 const Oracle& oracle = Oracle());
ConsistencyReport check_hierarchical(const CaseLawDatabase& db, const Oracle& oracle = Oracle());
ConsistencyReport check_warrants(const CaseLawDatabase& db, const Oracle& oracle = Oracle());
ConsistencyReport check_db(const CaseLawDatabase& db, const Oracle& oracle = Oracle());
ConsistencyReport check_appended(const CaseLawDatabase& db, const Case& c,
                                 const Oracle& oracle = Oracle());

/// Upper bound on decision-procedure calls made by check_db:
/// |DB|(|DB|+1) + sum over cases of (|ProofTree|+1) + sum of Ref leaf counts.
std::uint64_t entailment_budget(const CaseLawDatabase& db);

}  // namespace caselaw
