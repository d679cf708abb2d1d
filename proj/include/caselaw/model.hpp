#pragma once

// Cases, proof trees and case-law databases.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "caselaw/formula.hpp"

namespace caselaw {

using CaseId = std::string;
using CourtId = std::string;
/// Child indices from the root; empty is the root itself.
using NodePath = std::vector<int>;

std::string path_to_string(const NodePath& path);

/// Case and court identifiers: nonempty, drawn from [A-Za-z0-9_.:-]. The `#`
/// character is excluded so synthesized subcase ids never collide.
bool is_valid_case_id(std::string_view id);

enum class NodeKind { And, Or, Axiom, Assess, Ref };

const char* to_string(NodeKind kind);

struct ProofNode {
  NodeKind kind = NodeKind::Axiom;
  /// Inner nodes: the concluded formula. Leaves: the fact.
  Formula formula;
  /// Leaves only.
  Formula pre;
  /// Inner nodes only; never empty.
  std::vector<ProofNode> children;
  /// Ref leaves only.
  CaseId ref_id;
  NodePath target_path;

  static ProofNode inner(NodeKind connective, Formula formula, std::vector<ProofNode> children);
  static ProofNode axiom(Formula f);
  static ProofNode assess(Formula pre, Formula fact);
  static ProofNode reference(CaseId target, Formula pre, Formula fact, NodePath target_path = {});

  bool is_leaf() const { return kind != NodeKind::And && kind != NodeKind::Or; }
  const Formula& fact() const { return formula; }

  bool operator==(const ProofNode&) const = default;
};

Formula pres_of(const ProofNode& node);
Formula facts_of(const ProofNode& node);

/// nullptr when the path does not resolve.
const ProofNode* node_at(const ProofNode& root, const NodePath& path);
std::size_t tree_size(const ProofNode& root);

/// Pre-order traversal; `visit(path, node)`.
void for_each_node(const ProofNode& root,
                   const std::function<void(const NodePath&, const ProofNode&)>& visit);

/// A node of a stored case, identified by position.
struct NodeRef {
  CaseId case_id;
  NodePath path;

  auto operator<=>(const NodeRef&) const = default;
  bool operator==(const NodeRef&) const = default;
};

struct Case {
  CaseId id;
  Formula df;
  Formula case_desc;
  ProofNode tree;
  CourtId crt;
  std::int64_t time = 0;
  /// Where this tree lives inside a stored case. For a subcase of stored case X
  /// at path P this is (X, P); otherwise (id, []).
  NodeRef origin;

  Formula pres() const { return pres_of(tree); }
  Formula facts() const { return facts_of(tree); }

  /// Position of a node of this tree within its stored case.
  NodeRef locate(const NodePath& path) const;

  bool operator==(const Case&) const = default;
};

/// A case with origin set to itself.
Case make_case(CaseId id, Formula df, Formula case_desc, ProofNode tree, CourtId crt,
               std::int64_t time = 0);

/// sub(C, n): df is the node's formula (a leaf's fact), same description and
/// court. The id is `<id>#<path>`. Throws ModelError on an invalid path.
Case subcase(const Case& c, const NodePath& path);

/// Partial order <=_S given by generator pairs (lo, hi), closed reflexively and
/// transitively. Throws ModelError on unknown courts or cycles.
class CourtHierarchy {
 public:
  CourtHierarchy() = default;
  CourtHierarchy(std::set<CourtId> courts, const std::vector<std::pair<CourtId, CourtId>>& leq);

  const std::set<CourtId>& courts() const { return courts_; }
  bool contains(const CourtId& c) const { return courts_.count(c) > 0; }
  /// Throws UnknownCourtError for courts outside the hierarchy.
  bool leq(const CourtId& lo, const CourtId& hi) const;
  /// Non-reflexive pairs of the closure.
  std::vector<std::pair<CourtId, CourtId>> strict_pairs() const;

  bool operator==(const CourtHierarchy&) const = default;

 private:
  std::set<CourtId> courts_;
  std::set<std::pair<CourtId, CourtId>> closure_;
};

/// Marks `target` unwarranted for every case whose time is at least
/// `mark_time`, and at least the observer's time when an observer is named.
struct UnwarrantedMark {
  std::optional<CaseId> observer;
  std::int64_t mark_time = 0;
  NodeRef target;
};

class CaseLawDatabase {
 public:
  CaseLawDatabase() = default;
  /// Validates every structural invariant; throws ModelError (UnknownCourtError
  /// for courts) naming the offending case or node.
  CaseLawDatabase(Formula kb_w, std::set<std::string> actions, CourtHierarchy hierarchy,
                  std::vector<Case> cases, const std::vector<UnwarrantedMark>& marks = {});

  const Formula& kb_w() const { return kb_w_; }
  const std::set<std::string>& actions() const { return actions_; }
  const CourtHierarchy& hierarchy() const { return hierarchy_; }
  /// In time order.
  const std::vector<Case>& cases() const { return cases_; }
  std::size_t size() const { return cases_.size(); }
  bool empty() const { return cases_.empty(); }

  bool contains(const CaseId& id) const { return index_.count(id) > 0; }
  const Case* find(const CaseId& id) const;
  /// Throws ModelError for unknown ids.
  const Case& at(const CaseId& id) const;
  const ProofNode* node(const NodeRef& ref) const;

  /// Time at which an appended case is placed.
  std::int64_t next_time() const;

  /// U(C): marks effective at time(C). Cases not stored here are treated as
  /// appended at the end of the timeline and see U(DB).
  std::set<NodeRef> unwarranted_for(const Case& c) const;
  /// U(DB), the union over all stored cases.
  std::set<NodeRef> unwarranted_all() const;
  /// Target -> earliest time from which it is unwarranted.
  const std::map<NodeRef, std::int64_t>& unwarranted_marks() const { return marks_; }

  bool operator==(const CaseLawDatabase&) const = default;

 private:
  Formula kb_w_;
  std::set<std::string> actions_;
  CourtHierarchy hierarchy_;
  std::vector<Case> cases_;
  std::map<CaseId, std::size_t> index_;
  std::map<NodeRef, std::int64_t> marks_;
};

/// U as observer-free marks, one per target at its earliest effective time.
std::vector<UnwarrantedMark> marks_of(const CaseLawDatabase& db);

/// DB with C appended at the end of the timeline under a fresh id (the given id
/// when unused, otherwise `<id>_<n>`). U(C) is U(DB).
CaseLawDatabase db_insert(const CaseLawDatabase& db, Case c);

/// The database with `replacement` at the position and id of the case it names.
CaseLawDatabase db_replace(const CaseLawDatabase& db, const Case& replacement);

/// Later case C must agree with earlier case D from an equal or higher court:
/// time(D) <= time(C) and crt(C) <=_S crt(D).
bool must_agree(const CaseLawDatabase& db, const Case& c, const Case& d);
/// C may cite D when D is not later: time(D) <= time(C).
bool may_ref(const CaseLawDatabase& db, const Case& c, const Case& d);

inline constexpr const char* kLegalActionPredicate = "is_legal_action";

bool is_privacy_case(const Case& c, const CaseLawDatabase& db);

/// Atom-name prefix reserved for selector atoms of the switch encoding.
inline constexpr const char* kChosenPrefix = "__chosen_";
bool uses_reserved_atoms(const Formula& f);

}  // namespace caselaw
