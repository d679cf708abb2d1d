#include "caselaw/norms.hpp"

#include <algorithm>
#include <map>

#include "caselaw/cnf.hpp"
#include "caselaw/errors.hpp"

namespace caselaw {

namespace {

// The df literal of a privacy case.
Literal decision_literal(const Case& c, const CaseLawDatabase& db) {
  if (!is_privacy_case(c, db)) throw ModelError("case '" + c.id + "' is not a privacy case");
  if (c.df.op() == Op::Not) return Literal{c.df.lhs().atom_value(), false};
  return Literal{c.df.atom_value(), true};
}

Formula clause_formula(const Clause& clause) {
  Formula out = Formula::bot();
  for (const auto& lit : clause) out = disjoin(out, lit.to_formula());
  return out;
}

}  // namespace

Formula Norm::conclusion() const {
  Formula legal = Formula::atom(kLegalActionPredicate, {action});
  return polarity == Polarity::Positive ? legal : negate(legal);
}

Formula Norm::as_formula() const { return Formula::implication(condition, conclusion()); }

std::string Norm::to_line() const {
  return std::string(polarity == Polarity::Positive ? "+" : "-") + "\t" + action + "\t" +
         condition.to_string();
}

NormSplit split_facts(const Case& c, const CaseLawDatabase& db) {
  const Literal lit = decision_literal(c, db);
  const Literal complement{lit.atom, !lit.positive};
  Formula phi_w = Formula::top();
  Formula phi_s = Formula::bot();
  for (const Clause& clause : to_structural_cnf(c.facts()).clauses) {
    const bool has_lit = std::find(clause.begin(), clause.end(), lit) != clause.end();
    Clause rest;
    for (const auto& l : clause)
      if (l != lit && l != complement) rest.push_back(l);
    if (has_lit) {
      Formula r = Formula::top();
      for (const auto& x : rest) r = conjoin(r, Literal{x.atom, !x.positive}.to_formula());
      phi_s = disjoin(phi_s, r);
    } else {
      phi_w = conjoin(phi_w, clause_formula(rest));
    }
  }
  return {phi_w, phi_s};
}

Norm extract_norm(const Case& c, const CaseLawDatabase& db) {
  const Literal lit = decision_literal(c, db);
  const NormSplit split = split_facts(c, db);
  return Norm{lit.positive ? Polarity::Positive : Polarity::Negative, lit.atom.args.at(0),
              conjoin(c.pres(), split.phi_s)};
}

std::vector<Norm> extract_norms(const CaseLawDatabase& db) {
  std::vector<Norm> out;
  for (const auto& c : db.cases())
    if (is_privacy_case(c, db)) out.push_back(extract_norm(c, db));
  return out;
}

bool verify_norm_properties(const Case& c, const NormSplit& split, const Formula& kb_w,
                            const Oracle& oracle) {
  const Formula rule = conjoin(split.phi_w, Formula::implication(split.phi_s, c.df));
  return oracle.entails(conjoin(kb_w, c.facts()), rule) &&
         oracle.entails(conjoin(kb_w, split.phi_w), split.phi_s);
}

namespace {

std::vector<std::pair<NodePath, ProofNode>> leaves_of(const ProofNode& root) {
  std::vector<std::pair<NodePath, ProofNode>> out;
  for_each_node(root, [&](const NodePath& path, const ProofNode& n) {
    if (n.is_leaf()) out.emplace_back(path, n);
  });
  return out;
}

}  // namespace

Case normal_form(const Case& c, const CaseLawDatabase& db) {
  const NormSplit split = split_facts(c, db);
  std::vector<ProofNode> leaves;
  for (auto& [path, leaf] : leaves_of(c.tree)) leaves.push_back(std::move(leaf));
  ProofNode world = ProofNode::inner(NodeKind::And, split.phi_w, leaves);
  ProofNode trigger =
      ProofNode::inner(NodeKind::And, Formula::implication(split.phi_s, c.df), std::move(leaves));
  Case out = c;
  out.tree = ProofNode::inner(NodeKind::And, c.df, {std::move(world), std::move(trigger)});
  return out;
}

namespace {

void redirect_refs(ProofNode& node, const CaseId& id,
                   const std::map<NodePath, int>& leaf_index, const Case& referrer) {
  if (node.kind == NodeKind::Ref && node.ref_id == id && !node.target_path.empty()) {
    auto it = leaf_index.find(node.target_path);
    if (it == leaf_index.end())
      throw ModelError("case '" + referrer.id + "' references inner node " +
                       path_to_string(node.target_path) + " of case '" + id +
                       "', which has no counterpart in its normal form");
    node.target_path = {0, it->second};
  }
  for (auto& child : node.children) redirect_refs(child, id, leaf_index, referrer);
}

}  // namespace

CaseLawDatabase normalize(const CaseLawDatabase& db, const CaseId& id) {
  const Case& original = db.at(id);
  const Case replacement = normal_form(original, db);
  std::map<NodePath, int> leaf_index;
  int i = 0;
  for (const auto& [path, leaf] : leaves_of(original.tree)) leaf_index[path] = i++;

  std::vector<Case> cases = db.cases();
  for (auto& c : cases) {
    if (c.id == id)
      c = replacement;
    else
      redirect_refs(c.tree, id, leaf_index, c);
  }
  std::vector<UnwarrantedMark> marks;
  for (auto mark : marks_of(db)) {
    if (mark.target.case_id != id) {
      marks.push_back(std::move(mark));
      continue;
    }
    auto it = leaf_index.find(mark.target.path);
    if (it == leaf_index.end())
      throw ModelError("mark on node " + path_to_string(mark.target.path) + " of case '" + id +
                       "' has no counterpart in its normal form");
    for (int copy : {0, 1}) {
      UnwarrantedMark moved = mark;
      moved.target.path = {copy, it->second};
      marks.push_back(std::move(moved));
    }
  }
  return CaseLawDatabase(db.kb_w(), db.actions(), db.hierarchy(), std::move(cases), marks);
}

CaseLawDatabase normalize_all(const CaseLawDatabase& db) {
  CaseLawDatabase out = db;
  for (const auto& c : db.cases())
    if (is_privacy_case(c, db)) out = normalize(out, c.id);
  return out;
}

}  // namespace caselaw
