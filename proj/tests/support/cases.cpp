#include "support/cases.hpp"

#include "caselaw/consistency.hpp"
#include "caselaw/errors.hpp"
#include "caselaw/parser.hpp"
#include "support/oracles.hpp"

namespace caselaw::testing {

Formula P(const std::string& text) { return parse_formula(text); }

CaseLawDatabase precedent_fixture() {
  CourtHierarchy courts({"H11", "H12", "H2"}, {{"H11", "H2"}, {"H12", "H2"}});
  auto single = [](const char* id, const char* df, const char* crt, int time) {
    return make_case(id, P(df), Formula::top(), ProofNode::assess(Formula::top(), P(df)), crt,
                     time);
  };
  return CaseLawDatabase(Formula::top(), {}, std::move(courts),
                         {single("C1", "p", "H11", 0), single("C2", "!p", "H12", 1),
                          single("C3", "A -> B", "H11", 2), single("C4", "B -> !A", "H12", 3)});
}

namespace {

CourtHierarchy generated_courts() {
  return CourtHierarchy({"low", "high", "side", kQueryCourt}, {{"low", "high"}});
}

const char* random_court(Rng& rng) {
  static const char* kCourts[] = {"low", "high", "side"};
  return kCourts[uniform_int(rng, 0, 2)];
}

Formula random_pre(Rng& rng, const std::vector<Atom>& atoms) {
  if (coin(rng, 0.45)) return Formula::top();
  Formula lit = Formula::atom(atoms[uniform_int(rng, 0, static_cast<int>(atoms.size()) - 1)]);
  return coin(rng) ? lit : negate(lit);
}

// Inner node over `children` whose formula follows from them.
ProofNode combine(Rng& rng, std::vector<ProofNode> children, double or_probability) {
  const bool is_or = coin(rng, or_probability);
  Formula f = is_or ? Formula::bot() : Formula::top();
  for (const auto& c : children) f = is_or ? disjoin(f, c.formula) : conjoin(f, c.formula);
  if (!is_or && children.size() > 1 && coin(rng, 0.2)) f = children.front().formula;  // weaker
  return ProofNode::inner(is_or ? NodeKind::Or : NodeKind::And, f, std::move(children));
}

std::vector<std::pair<const Case*, NodePath>> all_nodes(const CaseLawDatabase& db) {
  std::vector<std::pair<const Case*, NodePath>> out;
  for (const auto& c : db.cases())
    for_each_node(c.tree, [&](const NodePath& p, const ProofNode&) { out.emplace_back(&c, p); });
  return out;
}

// Adds marks on Ref leaves until no reference to an unwarranted subcase is
// left unmarked, as seen by every case.
std::vector<UnwarrantedMark> close_marks(const CaseLawDatabase& base,
                                         std::vector<UnwarrantedMark> marks) {
  for (int round = 0; round < 8; ++round) {
    CaseLawDatabase db(base.kb_w(), base.actions(), base.hierarchy(), base.cases(), marks);
    Checker checker(db);
    bool changed = false;
    for (const auto& observer : db.cases()) {
      const auto blocked = db.unwarranted_for(observer);
      for (const auto& c : db.cases()) {
        for_each_node(c.tree, [&](const NodePath& path, const ProofNode& n) {
          if (n.kind != NodeKind::Ref || blocked.count(NodeRef{c.id, path})) return;
          const Case& target = db.at(n.ref_id);
          if (checker.warranted(subcase(target, n.target_path), blocked)) return;
          marks.push_back({std::nullopt, observer.time, NodeRef{c.id, path}});
          changed = true;
        });
      }
    }
    if (!changed) return marks;
  }
  return marks;
}

CaseLawDatabase with_marks(Rng& rng, const CaseLawDatabase& db) {
  std::vector<NodeRef> assess;
  for (const auto& c : db.cases())
    for_each_node(c.tree, [&](const NodePath& p, const ProofNode& n) {
      if (n.kind == NodeKind::Assess) assess.push_back({c.id, p});
    });
  if (assess.empty()) return db;
  const NodeRef target = assess[uniform_int(rng, 0, static_cast<int>(assess.size()) - 1)];
  const auto& cases = db.cases();
  const std::int64_t t = cases[uniform_int(rng, 0, static_cast<int>(cases.size()) - 1)].time;
  auto marks = close_marks(db, {{std::nullopt, t, target}});
  try {
    CaseLawDatabase marked(db.kb_w(), db.actions(), db.hierarchy(), db.cases(), marks);
    if (check_db(marked).ok()) return marked;
  } catch (const ModelError&) {
  }
  return db;
}

}  // namespace

CaseLawDatabase random_consistent_db(Rng& rng, const DbGenOptions& options) {
  const auto atoms = atom_pool(options.num_atoms);
  Formula kb = Formula::top();
  if (coin(rng, options.kb_probability)) kb = random_satisfiable_formula(rng, atoms, 1);
  CaseLawDatabase db(kb, {}, generated_courts(), {});
  const int target = uniform_int(rng, 1, options.max_cases);
  int assess_used = 0;
  for (int attempt = 0; attempt < 25 * target && static_cast<int>(db.size()) < target; ++attempt) {
    const auto nodes = all_nodes(db);
    const int k = uniform_int(rng, 1, options.max_leaves_per_case);
    std::vector<ProofNode> leaves;
    int assess_here = 0;
    for (int i = 0; i < k; ++i) {
      if (!nodes.empty() && coin(rng, options.ref_probability)) {
        const auto& [d, path] = nodes[uniform_int(rng, 0, static_cast<int>(nodes.size()) - 1)];
        const ProofNode& n = *node_at(d->tree, path);
        leaves.push_back(ProofNode::reference(d->id, pres_of(n), n.formula, path));
      } else if (assess_used + assess_here < options.max_assess_total) {
        leaves.push_back(ProofNode::assess(
            random_pre(rng, atoms), random_satisfiable_formula(rng, atoms, options.formula_depth)));
        ++assess_here;
      }
    }
    if (leaves.empty()) continue;
    ProofNode tree;
    if (leaves.size() == 1) {
      tree = std::move(leaves.front());
    } else if (leaves.size() >= 3 && coin(rng, 0.4)) {
      std::vector<ProofNode> inner(leaves.begin(), leaves.begin() + 2);
      std::vector<ProofNode> top{combine(rng, std::move(inner), options.or_probability)};
      top.insert(top.end(), leaves.begin() + 2, leaves.end());
      tree = combine(rng, std::move(top), options.or_probability);
    } else {
      tree = combine(rng, std::move(leaves), options.or_probability);
    }
    Formula desc = pres_of(tree);
    if (coin(rng, 0.5)) desc = conjoin(desc, random_pre(rng, atoms));
    const Formula df = tree.formula;
    Case c = make_case("c" + std::to_string(db.size()), df, desc, std::move(tree),
                       random_court(rng));
    if (!check_appended(db, c).ok()) continue;
    db = db_insert(db, std::move(c));
    assess_used += assess_here;
  }
  if (coin(rng, options.mark_probability)) db = with_marks(rng, db);
  return db;
}

CaseLawDatabase random_privacy_db(Rng& rng, const PrivacyGenOptions& options) {
  const auto atoms = atom_pool(options.num_atoms, "w");
  CaseLawDatabase db(Formula::top(), {"a", "b"}, generated_courts(), {});
  const int target = uniform_int(rng, 1, options.max_cases);
  for (int attempt = 0; attempt < 25 * target && static_cast<int>(db.size()) < target; ++attempt) {
    const std::string action = coin(rng) ? "a" : "b";
    const Formula legal = Formula::atom(kLegalActionPredicate, {action});
    const Formula df = coin(rng, options.negative_probability) ? negate(legal) : legal;

    // rule: antecedent -> df, trigger: something entailing the antecedent
    const Formula antecedent = random_satisfiable_formula(rng, atoms, 1);
    std::vector<ProofNode> leaves;
    leaves.push_back(
        ProofNode::assess(random_pre(rng, atoms), Formula::implication(antecedent, df)));
    Formula trigger = antecedent;
    if (coin(rng, 0.4)) trigger = conjoin(trigger, random_pre(rng, atoms));
    leaves.push_back(ProofNode::assess(random_pre(rng, atoms), trigger));
    if (coin(rng, 0.3))
      leaves.push_back(
          ProofNode::assess(random_pre(rng, atoms), random_satisfiable_formula(rng, atoms, 1)));
    if (!db.empty() && coin(rng, options.ref_probability)) {
      const Case& d = db.cases()[uniform_int(rng, 0, static_cast<int>(db.size()) - 1)];
      std::vector<NodePath> targets{{}};
      for_each_node(d.tree, [&](const NodePath& p, const ProofNode& n) {
        if (n.is_leaf() && !p.empty()) targets.push_back(p);
      });
      const NodePath path = targets[uniform_int(rng, 0, static_cast<int>(targets.size()) - 1)];
      const ProofNode& n = *node_at(d.tree, path);
      leaves.push_back(ProofNode::reference(d.id, pres_of(n), n.formula, path));
    }
    ProofNode tree = ProofNode::inner(NodeKind::And, df, std::move(leaves));
    Formula desc = pres_of(tree);
    if (coin(rng, 0.5)) desc = conjoin(desc, random_pre(rng, atoms));
    Case c = make_case("c" + std::to_string(db.size()), df, desc, std::move(tree),
                       random_court(rng));
    if (!check_appended(db, c).ok()) continue;
    db = db_insert(db, std::move(c));
  }
  return db;
}

bool brute_force_permit(const CaseLawDatabase& db, const Query& q) {
  const auto blocked = db.unwarranted_all();
  std::vector<AssessRef> leaves;
  for (const auto& c : db.cases())
    for_each_node(c.tree, [&](const NodePath& p, const ProofNode& n) {
      if (n.kind == NodeKind::Assess && !blocked.count(NodeRef{c.id, p}))
        leaves.push_back({c.id, p, n.pre, n.fact()});
    });
  const Formula base = conjoin(db.kb_w(), q.case_desc);
  Checker checker(db);
  const std::size_t n = leaves.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    SupportingSet a;
    Formula pres = Formula::top(), facts = Formula::top();
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1) {
        a.members.push_back(leaves[i]);
        pres = conjoin(pres, leaves[i].pre);
        facts = conjoin(facts, leaves[i].fact);
      }
    const Formula context = conjoin(base, facts);
    if (!tt_entails(base, pres) || !tt_entails(context, q.f) || !tt_satisfiable(context)) continue;
    if (checker.check_appended(supporting_probe(q, a)).ok()) return true;
  }
  return false;
}

int count_assess(const CaseLawDatabase& db) {
  int n = 0;
  for (const auto& c : db.cases())
    for_each_node(c.tree, [&](const NodePath&, const ProofNode& node) {
      n += node.kind == NodeKind::Assess ? 1 : 0;
    });
  return n;
}

}  // namespace caselaw::testing
