#include "caselaw/reasoning.hpp"

#include <algorithm>
#include <numeric>

#include "caselaw/errors.hpp"

namespace caselaw {

const char* to_string(Deducibility d) {
  switch (d) {
    case Deducibility::Deducible:
      return "deducible";
    case Deducibility::PermittedButContradicted:
      return "permitted-but-contradicted";
    case Deducibility::NotPermitted:
      return "not-permitted";
  }
  return "?";
}

namespace {

void validate_query(const CaseLawDatabase& db, const Query& q) {
  if (!db.hierarchy().contains(q.crt)) throw UnknownCourtError("unknown court '" + q.crt + "'");
  if (uses_reserved_atoms(q.f) || uses_reserved_atoms(q.case_desc))
    throw ReservedNameError(std::string("query uses the reserved atom prefix '") + kChosenPrefix +
                            "'");
}

void verify(Checker& checker, const PermitOptions& options) {
  if (!options.verify_database) return;
  ConsistencyReport report = checker.check_db();
  if (!report.ok())
    throw InconsistentDatabaseError("database is inconsistent (" +
                                    std::to_string(report.violations.size()) + " violations)");
}

Formula member_facts(const SupportingSet& a) {
  Formula out = Formula::top();
  for (const auto& m : a.members) out = conjoin(out, m.fact);
  return out;
}

Formula member_pres(const SupportingSet& a) {
  Formula out = Formula::top();
  for (const auto& m : a.members) out = conjoin(out, m.pre);
  return out;
}

std::vector<AssessRef> candidates_with(const CaseLawDatabase& db, const Query& q,
                                       Checker& checker) {
  const Oracle& oracle = checker.oracle();
  const Formula base = conjoin(db.kb_w(), q.case_desc);
  std::vector<AssessRef> out;
  for (auto& leaf : citable_leaves(db, checker)) {
    if (oracle.entails(base, leaf.pre) && oracle.is_satisfiable(conjoin(base, leaf.fact)))
      out.push_back(std::move(leaf));
  }
  return out;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Calls `visit(indices)` for the subsets of {0..n-1} by size, then
// lexicographically, whose facts are consistent and entail f. Stops when
// `visit` returns true.
template <typename Visit>
void enumerate_supporting(const Query& q, const Formula& kb_w,
                          const std::vector<AssessRef>& cands, const PermitOptions& options,
                          const Oracle& oracle, Visit visit) {
  const Formula base = conjoin(kb_w, q.case_desc);
  const std::size_t n = cands.size();
  std::vector<std::vector<std::size_t>> contradictory;
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    do {
      if (options.prune_supersets &&
          std::any_of(contradictory.begin(), contradictory.end(), [&](const auto& bad) {
            return std::includes(idx.begin(), idx.end(), bad.begin(), bad.end());
          }))
        continue;
      Formula facts = Formula::top();
      for (std::size_t i : idx) facts = conjoin(facts, cands[i].fact);
      const Formula context = conjoin(base, facts);
      if (oracle.is_inconsistent(context)) {
        contradictory.push_back(idx);
        continue;
      }
      if (!oracle.entails(context, q.f)) continue;
      if (visit(idx)) return;
    } while (k > 0 && next_combination(idx, n));
  }
}

SupportingSet pick(const std::vector<AssessRef>& cands, const std::vector<std::size_t>& idx) {
  SupportingSet a;
  for (std::size_t i : idx) a.members.push_back(cands[i]);
  return a;
}

}  // namespace

std::vector<AssessRef> assess_leaves(const CaseLawDatabase& db) {
  std::vector<AssessRef> out;
  for (const auto& c : db.cases()) {  // cases are in time order, traversal in path order
    for_each_node(c.tree, [&](const NodePath& path, const ProofNode& n) {
      if (n.kind == NodeKind::Assess) out.push_back({c.id, path, n.pre, n.fact()});
    });
  }
  std::stable_sort(out.begin(), out.end(), [&](const AssessRef& a, const AssessRef& b) {
    const auto ta = db.at(a.case_id).time, tb = db.at(b.case_id).time;
    return ta != tb ? ta < tb : a.path < b.path;
  });
  return out;
}

std::vector<AssessRef> citable_leaves(const CaseLawDatabase& db, Checker& checker) {
  const std::set<NodeRef> blocked = db.unwarranted_all();
  std::vector<AssessRef> out;
  for (auto& leaf : assess_leaves(db)) {
    if (blocked.count(leaf.ref())) continue;
    if (checker.warranted(subcase(db.at(leaf.case_id), leaf.path), blocked))
      out.push_back(std::move(leaf));
  }
  return out;
}

std::vector<AssessRef> candidate_nodes(const CaseLawDatabase& db, const Query& q,
                                       const Oracle& oracle) {
  Checker checker(db, oracle);
  return candidates_with(db, q, checker);
}

bool is_supporting(const CaseLawDatabase& db, const Query& q, const SupportingSet& a,
                   const Oracle& oracle) {
  SupportingSet resolved;
  for (const auto& m : a.members) {
    const ProofNode* n = db.node(m.ref());
    if (!n || n->kind != NodeKind::Assess)
      throw ModelError("supporting set member " + m.case_id + " " + path_to_string(m.path) +
                       " is not an assess leaf");
    resolved.members.push_back({m.case_id, m.path, n->pre, n->fact()});
  }
  const Formula base = conjoin(db.kb_w(), q.case_desc);
  const Formula context = conjoin(base, member_facts(resolved));
  return oracle.entails(base, member_pres(resolved)) && oracle.entails(context, q.f) &&
         oracle.is_satisfiable(context);
}

Case supporting_probe(const Query& q, const SupportingSet& a) {
  std::vector<ProofNode> leaves;
  for (const auto& m : a.members)
    leaves.push_back(ProofNode::reference(m.case_id, m.pre, m.fact, m.path));
  if (leaves.empty()) leaves.push_back(ProofNode::axiom(Formula::top()));
  return make_case("probe", Formula::top(), q.case_desc,
                   ProofNode::inner(NodeKind::And, Formula::top(), std::move(leaves)), q.crt);
}

bool is_consistent_with(const CaseLawDatabase& db, const Query& q, const SupportingSet& a,
                        const Oracle& oracle) {
  validate_query(db, q);
  return check_appended(db, supporting_probe(q, a), oracle).ok();
}

Case witness_case(const CaseLawDatabase& db, const Query& q, const SupportingSet& a) {
  std::vector<ProofNode> leaves;
  for (const auto& m : a.members)
    leaves.push_back(ProofNode::reference(m.case_id, m.pre, m.fact, m.path));
  const Formula bridge =
      a.members.empty() ? q.f : Formula::implication(member_facts(a), q.f);
  leaves.push_back(ProofNode::axiom(bridge));
  return make_case("witness", q.f, q.case_desc,
                   ProofNode::inner(NodeKind::And, q.f, std::move(leaves)), q.crt,
                   db.next_time());
}

std::optional<SupportingSet> find_supporting_set(const CaseLawDatabase& db, const Query& q,
                                                 const PermitOptions& options,
                                                 const Oracle& oracle) {
  validate_query(db, q);
  Checker checker(db, oracle);
  verify(checker, options);
  if (oracle.is_inconsistent(conjoin(db.kb_w(), q.case_desc))) return std::nullopt;
  const std::vector<AssessRef> cands = candidates_with(db, q, checker);
  std::optional<SupportingSet> found;
  enumerate_supporting(q, db.kb_w(), cands, options, oracle, [&](const auto& idx) {
    SupportingSet a = pick(cands, idx);
    if (!checker.check_appended(witness_case(db, q, a)).ok()) return false;
    found = std::move(a);
    return true;
  });
  return found;
}

std::optional<Case> permit(const CaseLawDatabase& db, const Query& q,
                           const PermitOptions& options, const Oracle& oracle) {
  auto a = find_supporting_set(db, q, options, oracle);
  if (!a) return std::nullopt;
  return witness_case(db, q, *a);
}

std::optional<std::map<Formula, Case>> permit_set(const CaseLawDatabase& db,
                                                  const std::vector<Formula>& fs,
                                                  const Formula& case_desc, const CourtId& crt,
                                                  const PermitOptions& options,
                                                  const Oracle& oracle) {
  std::vector<Formula> formulas;
  for (const auto& f : fs)
    if (std::find(formulas.begin(), formulas.end(), f) == formulas.end()) formulas.push_back(f);
  std::stable_sort(formulas.begin(), formulas.end(), [](const Formula& a, const Formula& b) {
    return a.to_string() < b.to_string();
  });
  for (const auto& f : formulas) validate_query(db, Query{f, case_desc, crt});
  if (!db.hierarchy().contains(crt)) throw UnknownCourtError("unknown court '" + crt + "'");

  Checker checker(db, oracle);
  verify(checker, options);
  std::map<Formula, Case> result;
  if (formulas.empty()) return result;
  if (oracle.is_inconsistent(conjoin(db.kb_w(), case_desc))) return std::nullopt;

  // Every supporting set that works on its own, per formula.
  std::vector<Query> queries;
  std::vector<std::vector<SupportingSet>> options_per_formula;
  for (const auto& f : formulas) {
    const Query q{f, case_desc, crt};
    const std::vector<AssessRef> cands = candidates_with(db, q, checker);
    std::vector<SupportingSet> valid;
    enumerate_supporting(q, db.kb_w(), cands, options, oracle, [&](const auto& idx) {
      SupportingSet a = pick(cands, idx);
      if (checker.check_appended(witness_case(db, q, a)).ok()) valid.push_back(std::move(a));
      return false;
    });
    if (valid.empty()) return std::nullopt;
    queries.push_back(q);
    options_per_formula.push_back(std::move(valid));
  }

  std::size_t total = 1;
  for (const auto& opts : options_per_formula) {
    if (total > options.max_combinations / opts.size())
      throw SizeLimitError("permit_set: too many supporting-set combinations");
    total *= opts.size();
  }
  // Odometer order is lexicographic; a stable sort by total size keeps it as
  // the tie-break.
  std::vector<std::vector<std::size_t>> tuples;
  tuples.reserve(total);
  std::vector<std::size_t> digits(formulas.size(), 0);
  for (std::size_t t = 0; t < total; ++t) {
    tuples.push_back(digits);
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (++digits[i] < options_per_formula[i].size()) break;
      digits[i] = 0;
    }
  }
  auto weight = [&](const std::vector<std::size_t>& tuple) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i)
      w += options_per_formula[i][tuple[i]].members.size();
    return w;
  };
  std::stable_sort(tuples.begin(), tuples.end(),
                   [&](const auto& a, const auto& b) { return weight(a) < weight(b); });

  for (const auto& tuple : tuples) {
    CaseLawDatabase current = db;
    std::vector<CaseId> ids;
    bool ok = true;
    for (std::size_t i = 0; i < tuple.size() && ok; ++i) {
      Case w = witness_case(current, queries[i], options_per_formula[i][tuple[i]]);
      w.id = "witness_" + std::to_string(i + 1);
      if (i > 0) ok = Checker(current, oracle).check_appended(w).ok();
      if (!ok) break;
      current = db_insert(current, std::move(w));
      ids.push_back(current.cases().back().id);
    }
    if (!ok) continue;
    for (std::size_t i = 0; i < formulas.size(); ++i) result.emplace(formulas[i], current.at(ids[i]));
    return result;
  }
  return std::nullopt;
}

Deducibility deducible(const CaseLawDatabase& db, const Query& q, const PermitOptions& options,
                       const Oracle& oracle) {
  const bool positive = find_supporting_set(db, q, options, oracle).has_value();
  PermitOptions again = options;
  again.verify_database = false;
  const bool negative =
      find_supporting_set(db, Query{negate(q.f), q.case_desc, q.crt}, again, oracle).has_value();
  if (!positive) return Deducibility::NotPermitted;
  return negative ? Deducibility::PermittedButContradicted : Deducibility::Deducible;
}

namespace {

using Alternatives = std::vector<std::vector<AssessRef>>;

constexpr std::size_t kMaxAlternatives = 4096;
constexpr std::size_t kMaxFallbackLeaves = 16;

void add_unique(Alternatives& alts, std::vector<AssessRef> set) {
  std::sort(set.begin(), set.end(),
            [](const AssessRef& a, const AssessRef& b) { return a.ref() < b.ref(); });
  set.erase(std::unique(set.begin(), set.end(),
                        [](const AssessRef& a, const AssessRef& b) { return a.ref() == b.ref(); }),
            set.end());
  if (std::find(alts.begin(), alts.end(), set) == alts.end() && alts.size() < kMaxAlternatives)
    alts.push_back(std::move(set));
}

Alternatives product(const Alternatives& a, const Alternatives& b) {
  Alternatives out;
  for (const auto& x : a)
    for (const auto& y : b) {
      std::vector<AssessRef> merged = x;
      merged.insert(merged.end(), y.begin(), y.end());
      add_unique(out, std::move(merged));
    }
  return out;
}

// Alternative Assess-leaf sets that justify `node` of stored case `owner`.
Alternatives collect(const CaseLawDatabase& db, const Case& owner, const ProofNode& node,
                     NodePath& path) {
  switch (node.kind) {
    case NodeKind::Axiom:
      return {{}};
    case NodeKind::Assess:
      return {{AssessRef{owner.id, path, node.pre, node.fact()}}};
    case NodeKind::Ref: {
      const Case& target = db.at(node.ref_id);
      NodePath target_path = node.target_path;
      return collect(db, target, *node_at(target.tree, target_path), target_path);
    }
    default:
      break;
  }
  std::vector<Alternatives> per_child;
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    path.push_back(static_cast<int>(i));
    per_child.push_back(collect(db, owner, node.children[i], path));
    path.pop_back();
  }
  Alternatives all{{}};
  for (const auto& alts : per_child) all = product(all, alts);
  if (node.kind == NodeKind::And) return all;
  // OR: every branch together first, then each branch on its own.
  Alternatives out;
  for (auto& s : all) add_unique(out, std::move(s));
  for (const auto& alts : per_child)
    for (const auto& s : alts) add_unique(out, s);
  return out;
}

}  // namespace

std::optional<SupportingSet> supports_exists_for_node(const CaseLawDatabase& db, const Case& c,
                                                      const NodePath& path,
                                                      const Oracle& oracle) {
  const ProofNode* node = node_at(c.tree, path);
  if (!node) throw ModelError("case '" + c.id + "' has no node at " + path_to_string(path));
  const Query q{node->formula, pres_of(*node), c.crt};
  NodePath cursor = path;
  for (auto& members : collect(db, c, *node, cursor)) {
    SupportingSet a{std::move(members)};
    if (is_supporting(db, q, a, oracle)) return a;
  }

  // The tree below an OR node need not yield a set (its pres are a
  // disjunction), so fall back to any Assess leaves of the database.
  const Formula base = conjoin(db.kb_w(), q.case_desc);
  const std::set<NodeRef> blocked = db.unwarranted_all();
  std::vector<AssessRef> usable;
  for (auto& leaf : assess_leaves(db))
    if (!blocked.count(leaf.ref()) && oracle.entails(base, leaf.pre) &&
        oracle.is_satisfiable(conjoin(base, leaf.fact)))
      usable.push_back(std::move(leaf));
  std::optional<SupportingSet> found;
  if (usable.size() > kMaxFallbackLeaves) return found;
  PermitOptions options;
  enumerate_supporting(q, db.kb_w(), usable, options, oracle, [&](const auto& idx) {
    found = pick(usable, idx);
    return true;
  });
  return found;
}

}  // namespace caselaw
