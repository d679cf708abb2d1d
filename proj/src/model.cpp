#include "caselaw/model.hpp"

#include <algorithm>

#include "caselaw/errors.hpp"

namespace caselaw {

std::string path_to_string(const NodePath& path) {
  std::string out = "[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(path[i]);
  }
  return out + "]";
}

bool is_valid_case_id(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '.' || c == ':' || c == '-';
  });
}

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::And:
      return "and";
    case NodeKind::Or:
      return "or";
    case NodeKind::Axiom:
      return "axiom";
    case NodeKind::Assess:
      return "assess";
    case NodeKind::Ref:
      return "ref";
  }
  return "?";
}

ProofNode ProofNode::inner(NodeKind connective, Formula formula, std::vector<ProofNode> children) {
  ProofNode n;
  n.kind = connective;
  n.formula = std::move(formula);
  n.children = std::move(children);
  return n;
}

ProofNode ProofNode::axiom(Formula f) {
  ProofNode n;
  n.kind = NodeKind::Axiom;
  n.pre = f;
  n.formula = std::move(f);
  return n;
}

ProofNode ProofNode::assess(Formula pre, Formula fact) {
  ProofNode n;
  n.kind = NodeKind::Assess;
  n.pre = std::move(pre);
  n.formula = std::move(fact);
  return n;
}

ProofNode ProofNode::reference(CaseId target, Formula pre, Formula fact, NodePath target_path) {
  ProofNode n;
  n.kind = NodeKind::Ref;
  n.pre = std::move(pre);
  n.formula = std::move(fact);
  n.ref_id = std::move(target);
  n.target_path = std::move(target_path);
  return n;
}

namespace {

template <typename Leaf>
Formula aggregate(const ProofNode& node, Leaf leaf) {
  if (node.is_leaf()) return leaf(node);
  std::vector<Formula> parts;
  parts.reserve(node.children.size());
  for (const auto& child : node.children) parts.push_back(aggregate(child, leaf));
  // Folding n-ary parts left to right keeps the binary shape predictable.
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i)
    out = node.kind == NodeKind::And ? Formula::conjunction(out, parts[i])
                                     : Formula::disjunction(out, parts[i]);
  return out;
}

}  // namespace

Formula pres_of(const ProofNode& node) {
  return aggregate(node, [](const ProofNode& n) { return n.pre; });
}

Formula facts_of(const ProofNode& node) {
  return aggregate(node, [](const ProofNode& n) { return n.fact(); });
}

const ProofNode* node_at(const ProofNode& root, const NodePath& path) {
  const ProofNode* n = &root;
  for (int i : path) {
    if (i < 0 || static_cast<std::size_t>(i) >= n->children.size()) return nullptr;
    n = &n->children[i];
  }
  return n;
}

std::size_t tree_size(const ProofNode& root) {
  std::size_t n = 1;
  for (const auto& c : root.children) n += tree_size(c);
  return n;
}

namespace {

void walk(const ProofNode& node, NodePath& path,
          const std::function<void(const NodePath&, const ProofNode&)>& visit) {
  visit(path, node);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    path.push_back(static_cast<int>(i));
    walk(node.children[i], path, visit);
    path.pop_back();
  }
}

}  // namespace

void for_each_node(const ProofNode& root,
                   const std::function<void(const NodePath&, const ProofNode&)>& visit) {
  NodePath path;
  walk(root, path, visit);
}

NodeRef Case::locate(const NodePath& path) const {
  NodeRef out = origin;
  out.path.insert(out.path.end(), path.begin(), path.end());
  return out;
}

Case make_case(CaseId id, Formula df, Formula case_desc, ProofNode tree, CourtId crt,
               std::int64_t time) {
  Case c;
  c.origin = NodeRef{id, {}};
  c.id = std::move(id);
  c.df = std::move(df);
  c.case_desc = std::move(case_desc);
  c.tree = std::move(tree);
  c.crt = std::move(crt);
  c.time = time;
  return c;
}

Case subcase(const Case& c, const NodePath& path) {
  const ProofNode* n = node_at(c.tree, path);
  if (!n) throw ModelError("case '" + c.id + "' has no node at path " + path_to_string(path));
  Case out;
  out.id = c.id + "#";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out.id += ".";
    out.id += std::to_string(path[i]);
  }
  out.df = n->formula;
  out.case_desc = c.case_desc;
  out.tree = *n;
  out.crt = c.crt;
  out.time = c.time;
  out.origin = c.locate(path);
  return out;
}

CourtHierarchy::CourtHierarchy(std::set<CourtId> courts,
                               const std::vector<std::pair<CourtId, CourtId>>& leq)
    : courts_(std::move(courts)) {
  for (const auto& c : courts_)
    if (!is_valid_case_id(c)) throw ModelError("invalid court id '" + c + "'");
  for (const auto& [lo, hi] : leq) {
    if (!contains(lo)) throw UnknownCourtError("unknown court '" + lo + "' in hierarchy");
    if (!contains(hi)) throw UnknownCourtError("unknown court '" + hi + "' in hierarchy");
  }
  // Reachability from every court; the sets are tiny.
  std::map<CourtId, std::set<CourtId>> up;
  for (const auto& c : courts_) up[c].insert(c);
  for (const auto& [lo, hi] : leq) up[lo].insert(hi);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [c, above] : up) {
      std::set<CourtId> next = above;
      for (const auto& a : above) next.insert(up[a].begin(), up[a].end());
      if (next.size() != above.size()) {
        above = std::move(next);
        changed = true;
      }
    }
  }
  for (const auto& [c, above] : up) {
    for (const auto& a : above) {
      if (a != c && up[a].count(c))
        throw ModelError("court hierarchy is not antisymmetric: '" + c + "' and '" + a +
                         "' are mutually below each other");
      closure_.emplace(c, a);
    }
  }
}

bool CourtHierarchy::leq(const CourtId& lo, const CourtId& hi) const {
  if (!contains(lo)) throw UnknownCourtError("unknown court '" + lo + "'");
  if (!contains(hi)) throw UnknownCourtError("unknown court '" + hi + "'");
  return closure_.count({lo, hi}) > 0;
}

std::vector<std::pair<CourtId, CourtId>> CourtHierarchy::strict_pairs() const {
  std::vector<std::pair<CourtId, CourtId>> out;
  for (const auto& p : closure_)
    if (p.first != p.second) out.push_back(p);
  return out;
}

bool uses_reserved_atoms(const Formula& f) {
  for (const auto& a : atoms_of(f))
    if (a.name.rfind(kChosenPrefix, 0) == 0) return true;
  return false;
}

namespace {

void check_formula(const Formula& f, const std::string& where) {
  if (uses_reserved_atoms(f))
    throw ModelError(where + " uses the reserved atom prefix '" + kChosenPrefix + "'");
}

void validate_tree(const Case& c) {
  for_each_node(c.tree, [&](const NodePath& path, const ProofNode& n) {
    const std::string where = "case '" + c.id + "' node " + path_to_string(path);
    check_formula(n.formula, where);
    if (n.is_leaf()) {
      check_formula(n.pre, where);
      if (!n.children.empty()) throw ModelError(where + ": leaf with children");
      if (n.kind == NodeKind::Axiom && !(n.pre == n.fact()))
        throw ModelError(where + ": axiom leaf must have pre identical to fact");
    } else if (n.children.empty()) {
      throw ModelError(where + ": inner node without children");
    }
  });
}

}  // namespace

CaseLawDatabase::CaseLawDatabase(Formula kb_w, std::set<std::string> actions,
                                 CourtHierarchy hierarchy, std::vector<Case> cases,
                                 const std::vector<UnwarrantedMark>& marks)
    : kb_w_(std::move(kb_w)),
      actions_(std::move(actions)),
      hierarchy_(std::move(hierarchy)),
      cases_(std::move(cases)) {
  check_formula(kb_w_, "world knowledge");
  for (const auto& a : actions_)
    if (!is_identifier(a)) throw ModelError("invalid action '" + a + "'");

  std::sort(cases_.begin(), cases_.end(),
            [](const Case& a, const Case& b) { return a.time < b.time; });
  for (std::size_t i = 0; i < cases_.size(); ++i) {
    Case& c = cases_[i];
    if (!is_valid_case_id(c.id)) throw ModelError("invalid case id '" + c.id + "'");
    if (!index_.emplace(c.id, i).second) throw ModelError("duplicate case id '" + c.id + "'");
    if (!hierarchy_.contains(c.crt))
      throw UnknownCourtError("case '" + c.id + "' has unknown court '" + c.crt + "'");
    if (c.time < 0) throw ModelError("case '" + c.id + "' has a negative timestamp");
    if (i > 0 && cases_[i - 1].time == c.time)
      throw ModelError("cases '" + cases_[i - 1].id + "' and '" + c.id +
                       "' share timestamp " + std::to_string(c.time));
    c.origin = NodeRef{c.id, {}};
    check_formula(c.df, "case '" + c.id + "' decision");
    check_formula(c.case_desc, "case '" + c.id + "' description");
    validate_tree(c);
  }

  for (const auto& c : cases_) {
    for_each_node(c.tree, [&](const NodePath& path, const ProofNode& n) {
      if (n.kind != NodeKind::Ref) return;
      const std::string where = "case '" + c.id + "' node " + path_to_string(path);
      const Case* target = find(n.ref_id);
      if (!target) throw ModelError(where + " references unknown case '" + n.ref_id + "'");
      if (target->time >= c.time)
        throw ModelError(where + " references case '" + n.ref_id + "' which is not earlier");
      if (!node_at(target->tree, n.target_path))
        throw ModelError(where + " references missing node " + path_to_string(n.target_path) +
                         " of case '" + n.ref_id + "'");
    });
  }

  const std::int64_t last = cases_.empty() ? -1 : cases_.back().time;
  for (const auto& m : marks) {
    const ProofNode* target = node(m.target);
    const std::string what = "unwarranted mark on " + m.target.case_id + " " +
                             path_to_string(m.target.path);
    if (!target) throw ModelError(what + " does not name an existing node");
    if (target->kind != NodeKind::Assess && target->kind != NodeKind::Ref)
      throw ModelError(what + " names a node that is neither assess nor ref");
    std::int64_t effective = m.mark_time;
    if (m.observer) {
      const Case* obs = find(*m.observer);
      if (!obs) throw ModelError(what + " names unknown observer '" + *m.observer + "'");
      effective = std::max(effective, obs->time);
    }
    if (effective > last) throw ModelError(what + " takes effect after the last case");
    auto [it, inserted] = marks_.emplace(m.target, effective);
    if (!inserted) it->second = std::min(it->second, effective);
  }
}

const Case* CaseLawDatabase::find(const CaseId& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &cases_[it->second];
}

const Case& CaseLawDatabase::at(const CaseId& id) const {
  const Case* c = find(id);
  if (!c) throw ModelError("unknown case '" + id + "'");
  return *c;
}

const ProofNode* CaseLawDatabase::node(const NodeRef& ref) const {
  const Case* c = find(ref.case_id);
  return c ? node_at(c->tree, ref.path) : nullptr;
}

std::int64_t CaseLawDatabase::next_time() const {
  return cases_.empty() ? 0 : cases_.back().time + 1;
}

std::set<NodeRef> CaseLawDatabase::unwarranted_for(const Case& c) const {
  const Case* stored = find(c.id);
  if (!stored) return unwarranted_all();
  std::set<NodeRef> out;
  for (const auto& [target, t] : marks_)
    if (t <= stored->time) out.insert(target);
  return out;
}

std::set<NodeRef> CaseLawDatabase::unwarranted_all() const {
  std::set<NodeRef> out;
  for (const auto& [target, t] : marks_) out.insert(target);
  return out;
}

std::vector<UnwarrantedMark> marks_of(const CaseLawDatabase& db) {
  std::vector<UnwarrantedMark> out;
  for (const auto& [target, t] : db.unwarranted_marks()) out.push_back({std::nullopt, t, target});
  return out;
}

CaseLawDatabase db_insert(const CaseLawDatabase& db, Case c) {
  if (!db.hierarchy().contains(c.crt))
    throw UnknownCourtError("unknown court '" + c.crt + "'");
  CaseId id = c.id;
  for (int n = 1; !is_valid_case_id(id) || db.contains(id); ++n)
    id = (is_valid_case_id(c.id) ? c.id : std::string("case")) + "_" + std::to_string(n);
  c.id = id;
  c.origin = NodeRef{id, {}};
  c.time = db.next_time();
  std::vector<Case> cases = db.cases();
  cases.push_back(std::move(c));
  return CaseLawDatabase(db.kb_w(), db.actions(), db.hierarchy(), std::move(cases), marks_of(db));
}

CaseLawDatabase db_replace(const CaseLawDatabase& db, const Case& replacement) {
  const Case& old = db.at(replacement.id);
  std::vector<Case> cases = db.cases();
  for (auto& c : cases) {
    if (c.id != replacement.id) continue;
    c = replacement;
    c.time = old.time;
    c.origin = NodeRef{c.id, {}};
  }
  return CaseLawDatabase(db.kb_w(), db.actions(), db.hierarchy(), std::move(cases), marks_of(db));
}

bool must_agree(const CaseLawDatabase& db, const Case& c, const Case& d) {
  const bool courts = db.hierarchy().leq(c.crt, d.crt);
  return d.time <= c.time && courts;
}

bool may_ref(const CaseLawDatabase& db, const Case& c, const Case& d) {
  db.hierarchy().leq(c.crt, c.crt);  // validates both courts
  db.hierarchy().leq(d.crt, d.crt);
  return d.time <= c.time;
}

bool is_privacy_case(const Case& c, const CaseLawDatabase& db) {
  const Formula* core = &c.df;
  if (core->op() == Op::Not) core = &core->lhs();
  if (!core->is_atom()) return false;
  const Atom& a = core->atom_value();
  if (a.name != kLegalActionPredicate || a.args.size() != 1) return false;
  if (!db.actions().count(a.args[0])) return false;
  return !mentions_predicate(db.kb_w(), kLegalActionPredicate) &&
         !mentions_predicate(c.case_desc, kLegalActionPredicate);
}

}  // namespace caselaw
