#include "caselaw/consistency.hpp"

#include <algorithm>

#include "caselaw/errors.hpp"

namespace caselaw {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::CaseWise:
      return "case-wise";
    case ViolationKind::Referential:
      return "referential";
    case ViolationKind::Hierarchical:
      return "hierarchical";
    case ViolationKind::Warrant:
      return "warrant";
  }
  return "?";
}

void ConsistencyReport::merge(const ConsistencyReport& other) {
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

namespace {

Formula combine(NodeKind kind, const std::vector<ProofNode>& children) {
  Formula out = children.front().formula;
  for (std::size_t i = 1; i < children.size(); ++i)
    out = kind == NodeKind::And ? Formula::conjunction(out, children[i].formula)
                                : Formula::disjunction(out, children[i].formula);
  return out;
}

bool has_prefix(const NodePath& path, const NodePath& prefix) {
  return path.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), path.begin());
}

// Blocked nodes that fall inside the tree of `c`, as paths relative to its root.
std::set<NodePath> blocked_within(const Case& c, const std::set<NodeRef>& blocked) {
  std::set<NodePath> out;
  for (const auto& b : blocked) {
    if (b.case_id != c.origin.case_id || !has_prefix(b.path, c.origin.path)) continue;
    NodePath rel(b.path.begin() + static_cast<std::ptrdiff_t>(c.origin.path.size()), b.path.end());
    const ProofNode* n = node_at(c.tree, rel);
    if (n && n->is_leaf()) out.insert(std::move(rel));
  }
  return out;
}

ProofNode with_blocked_pres(const ProofNode& node, const std::set<NodePath>& blocked,
                            NodePath& path) {
  ProofNode out = node;
  if (node.is_leaf()) {
    if (blocked.count(path)) out.pre = Formula::bot();
    return out;
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    path.push_back(static_cast<int>(i));
    out.children[i] = with_blocked_pres(node.children[i], blocked, path);
    path.pop_back();
  }
  return out;
}

Formula blocked_pres(const Case& c, const std::set<NodePath>& blocked) {
  NodePath path;
  return pres_of(with_blocked_pres(c.tree, blocked, path));
}

}  // namespace

ConsistencyReport check_case(const Case& c, const Formula& kb_w, const Oracle& oracle) {
  ConsistencyReport report;
  auto violation = [&](std::optional<NodePath> path, std::string detail) {
    report.violations.push_back({ViolationKind::CaseWise, c.id, std::move(path), std::move(detail)});
  };
  const Formula base = conjoin(kb_w, c.case_desc);

  if (!(c.tree.formula == c.df))
    violation(NodePath{}, "root formula " + c.tree.formula.to_string() + " differs from df " +
                              c.df.to_string());

  // (iii) subsumes (i); (i) is only separated out on failure.
  if (oracle.is_inconsistent(conjoin(base, c.facts()))) {
    if (oracle.is_inconsistent(base)) violation(std::nullopt, "(i) KB_W & CaseDesc is inconsistent");
    violation(std::nullopt, "(iii) KB_W & CaseDesc & facts is inconsistent");
  }

  std::vector<std::pair<NodePath, Formula>> axioms;
  for_each_node(c.tree, [&](const NodePath& path, const ProofNode& n) {
    if (n.kind == NodeKind::Axiom) axioms.emplace_back(path, n.fact());
  });
  const Formula pres = c.pres();
  Formula required = pres;
  for (const auto& [path, ax] : axioms) required = conjoin(required, ax);
  if (!required.is_top() && !oracle.entails(base, required)) {
    if (axioms.empty() || !oracle.entails(base, pres))
      violation(std::nullopt, "(ii) KB_W & CaseDesc does not entail pres " + pres.to_string());
    if (!axioms.empty()) {
      for (const auto& [path, ax] : axioms)
        if (!oracle.entails(base, ax))
          violation(path, "axiom " + ax.to_string() + " is not entailed by KB_W & CaseDesc");
    }
  }

  for_each_node(c.tree, [&](const NodePath& path, const ProofNode& n) {
    if (n.is_leaf()) return;
    if (!oracle.entails(combine(n.kind, n.children), n.formula))
      violation(path, std::string("(iv) ") + to_string(n.kind) + " node " +
                          n.formula.to_string() + " does not follow from its children");
  });
  return report;
}

bool warranted_subcase(const Case& c, const std::set<NodeRef>& blocked, const Formula& kb_w,
                       const Oracle& oracle) {
  Case modified = c;
  NodePath path;
  modified.tree = with_blocked_pres(c.tree, blocked_within(c, blocked), path);
  return check_case(modified, kb_w, oracle).ok();
}

Checker::Checker(const CaseLawDatabase& db, Oracle oracle) : db_(db), oracle_(oracle) {}

bool Checker::cacheable(const Case& c) const {
  const Case* stored = db_.find(c.origin.case_id);
  if (!stored) return false;
  const ProofNode* n = node_at(stored->tree, c.origin.path);
  return n && *n == c.tree && stored->case_desc == c.case_desc && c.df == n->formula;
}

ConsistencyReport Checker::case_report(const Case& c) {
  if (!cacheable(c)) return caselaw::check_case(c, db_.kb_w(), oracle_);
  if (auto it = case_reports_.find(c.origin); it != case_reports_.end()) {
    ConsistencyReport r = it->second;
    for (auto& v : r.violations) v.case_id = c.id;
    return r;
  }
  ConsistencyReport report;
  const NodePath& path = c.origin.path;
  if (!path.empty()) {
    // A subcase reached through AND nodes only inherits consistency from the
    // whole case: its pres, facts, axioms and inner nodes are all covered.
    const Case& root = db_.at(c.origin.case_id);
    bool and_chain = true;
    const ProofNode* n = &root.tree;
    for (int i : path) {
      and_chain = and_chain && n->kind == NodeKind::And;
      n = &n->children[i];
    }
    if (and_chain && case_report(root).ok()) {
      case_reports_.emplace(c.origin, report);
      return report;
    }
  }
  report = caselaw::check_case(c, db_.kb_w(), oracle_);
  case_reports_.emplace(c.origin, report);
  return report;
}

ConsistencyReport Checker::check_case(const Case& c) { return case_report(c); }

bool Checker::case_consistent(const Case& c) { return case_report(c).ok(); }

bool Checker::warranted(const Case& c, const std::set<NodeRef>& blocked) {
  std::set<NodePath> inside = blocked_within(c, blocked);
  if (!case_consistent(c)) return false;
  if (inside.empty()) return true;
  // Blocking only strengthens pres, so the remaining condition is (ii) on the
  // modified pres.
  const bool memo = cacheable(c);
  std::set<NodeRef> key_nodes;
  for (const auto& p : inside) key_nodes.insert(c.locate(p));
  auto key = std::make_pair(c.origin, key_nodes);
  if (memo)
    if (auto it = blocked_results_.find(key); it != blocked_results_.end()) return it->second;
  const bool result =
      oracle_.entails(conjoin(db_.kb_w(), c.case_desc), blocked_pres(c, inside));
  if (memo) blocked_results_.emplace(std::move(key), result);
  return result;
}

const Case& Checker::target_subcase(const ProofNode& ref_leaf) {
  NodeRef key{ref_leaf.ref_id, ref_leaf.target_path};
  auto it = subcases_.find(key);
  if (it == subcases_.end())
    it = subcases_.emplace(key, subcase(db_.at(ref_leaf.ref_id), ref_leaf.target_path)).first;
  return it->second;
}

ConsistencyReport Checker::check_reference(const Case& c, const NodePath& leaf_path) {
  const ProofNode* leaf = node_at(c.tree, leaf_path);
  if (!leaf || leaf->kind != NodeKind::Ref)
    throw ModelError("case '" + c.id + "' has no ref leaf at " + path_to_string(leaf_path));
  ConsistencyReport report;
  auto violation = [&](std::string detail) {
    report.violations.push_back({ViolationKind::Referential, c.id, leaf_path, std::move(detail)});
  };
  const Case* d = db_.find(leaf->ref_id);
  if (!d) {
    violation("dangling reference to unknown case '" + leaf->ref_id + "'");
    return report;
  }
  if (!node_at(d->tree, leaf->target_path)) {
    violation("reference to missing node " + path_to_string(leaf->target_path) + " of case '" +
              d->id + "'");
    return report;
  }
  const Case& target = target_subcase(*leaf);
  if (!(target.df == leaf->fact()))
    violation("(a) referenced subcase decides " + target.df.to_string() + ", not " +
              leaf->fact().to_string());
  if (!may_ref(db_, c, *d)) violation("(c) may not reference later case '" + d->id + "'");
  if (!warranted(target, db_.unwarranted_for(c)))
    violation("(b) referenced subcase '" + target.id + "' is not warranted");
  if (!oracle_.entails(conjoin(db_.kb_w(), leaf->pre), target.pres()))
    violation("(d) KB_W & pre does not entail the referenced pres " + target.pres().to_string());
  return report;
}

ConsistencyReport Checker::check_references(const Case& c) {
  ConsistencyReport report;
  for_each_node(c.tree, [&](const NodePath& path, const ProofNode& n) {
    if (n.kind == NodeKind::Ref) report.merge(check_reference(c, path));
  });
  return report;
}

bool Checker::in_conflict(const Case& c1, const Case& c2) {
  if (!must_agree(db_, c1, c2)) return false;
  if (!warranted(c2, db_.unwarranted_for(c1))) return false;
  const Formula& kb = db_.kb_w();
  if (!oracle_.is_inconsistent(conjoin(kb, conjoin(c1.facts(), c2.facts())))) return false;
  return oracle_.is_satisfiable(conjoin(kb, conjoin(c1.pres(), c2.pres())));
}

ConsistencyReport Checker::check_conflicts(const Case& c) {
  ConsistencyReport report;
  for (const auto& d : db_.cases()) {
    if (d.time >= c.time || d.id == c.id) continue;
    if (in_conflict(c, d))
      report.violations.push_back(
          {ViolationKind::Hierarchical, c.id, std::nullopt, "in conflict with case '" + d.id + "'"});
  }
  return report;
}

ConsistencyReport Checker::check_warrants_for(const Case& c) {
  ConsistencyReport report;
  const std::set<NodeRef> blocked = db_.unwarranted_for(c);
  auto visit_case = [&](const Case& owner) {
    for_each_node(owner.tree, [&](const NodePath& path, const ProofNode& n) {
      if (n.kind != NodeKind::Ref || !db_.node({n.ref_id, n.target_path})) return;
      if (blocked.count(owner.locate(path))) return;
      const Case& target = target_subcase(n);
      if (!warranted(target, blocked))
        report.violations.push_back({ViolationKind::Warrant, owner.id, path,
                                     "reference to unwarranted subcase '" + target.id +
                                         "' is missing from U('" + c.id + "')"});
    });
  };
  for (const auto& owner : db_.cases()) visit_case(owner);
  if (!db_.contains(c.id)) visit_case(c);
  return report;
}

ConsistencyReport Checker::check_case_wise() {
  ConsistencyReport report;
  for (const auto& c : db_.cases()) report.merge(case_report(c));
  return report;
}

ConsistencyReport Checker::check_referential() {
  ConsistencyReport report;
  for (const auto& c : db_.cases()) report.merge(check_references(c));
  return report;
}

ConsistencyReport Checker::check_hierarchical() {
  ConsistencyReport report;
  for (const auto& c : db_.cases()) report.merge(check_conflicts(c));
  return report;
}

ConsistencyReport Checker::check_warrants() {
  ConsistencyReport report;
  std::set<std::pair<CaseId, NodePath>> seen;
  for (const auto& c : db_.cases()) {
    for (auto& v : check_warrants_for(c).violations)
      if (seen.emplace(v.case_id, *v.path).second) report.violations.push_back(std::move(v));
  }
  return report;
}

ConsistencyReport Checker::check_db() {
  ConsistencyReport report = check_case_wise();
  report.merge(check_referential());
  report.merge(check_hierarchical());
  report.merge(check_warrants());
  return report;
}

ConsistencyReport Checker::check_appended(Case c) {
  if (db_.contains(c.id))
    throw ModelError("case id '" + c.id + "' is already stored in the database");
  if (!db_.hierarchy().contains(c.crt))
    throw UnknownCourtError("unknown court '" + c.crt + "'");
  c.time = db_.next_time();
  c.origin = NodeRef{c.id, {}};
  ConsistencyReport report = case_report(c);
  report.merge(check_references(c));
  report.merge(check_conflicts(c));
  report.merge(check_warrants_for(c));
  return report;
}

ConsistencyReport check_reference(const CaseLawDatabase& db, const Case& c,
                                  const NodePath& leaf_path, const Oracle& oracle) {
  return Checker(db, oracle).check_reference(c, leaf_path);
}

bool in_conflict(const CaseLawDatabase& db, const Case& c1, const Case& c2, const Oracle& oracle) {
  return Checker(db, oracle).in_conflict(c1, c2);
}

ConsistencyReport check_hierarchical(const CaseLawDatabase& db, const Oracle& oracle) {
  return Checker(db, oracle).check_hierarchical();
}

ConsistencyReport check_warrants(const CaseLawDatabase& db, const Oracle& oracle) {
  return Checker(db, oracle).check_warrants();
}

ConsistencyReport check_db(const CaseLawDatabase& db, const Oracle& oracle) {
  return Checker(db, oracle).check_db();
}

ConsistencyReport check_appended(const CaseLawDatabase& db, const Case& c, const Oracle& oracle) {
  return Checker(db, oracle).check_appended(c);
}

std::uint64_t entailment_budget(const CaseLawDatabase& db) {
  const std::uint64_t n = db.size();
  std::uint64_t budget = n * (n + 1);
  for (const auto& c : db.cases()) {
    budget += tree_size(c.tree) + 1;
    for_each_node(c.tree, [&](const NodePath&, const ProofNode& node) {
      if (node.kind == NodeKind::Ref) ++budget;
    });
  }
  return budget;
}

}  // namespace caselaw
