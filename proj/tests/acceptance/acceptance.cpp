// Acceptance criteria. Prints one PASS/FAIL line per criterion. Seeds,
// instance counts and time limits are fixed here. The exit status counts
// criteria whose outcome differs from the expectation: a failure of a
// criterion not listed as known red, or a pass of one that is.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "caselaw/consistency.hpp"
#include "caselaw/errors.hpp"
#include "caselaw/norms.hpp"
#include "caselaw/qbf.hpp"
#include "caselaw/reasoning.hpp"
#include "support/cases.hpp"
#include "support/oracles.hpp"

namespace caselaw::testing {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int number;
  const char* name;
  double time_limit_s;  // 0 = none
  std::function<Outcome()> run;
  // Non-null when the criterion is known to fail because the underlying claim
  // does not hold; the reason is printed and a pass is reported as unexpected.
  const char* known_red = nullptr;
};

std::string ratio(int good, int total) {
  return std::to_string(good) + "/" + std::to_string(total);
}

// 1. The four-case fixture, KB_W = true, CaseDesc = A, court H2.
Outcome fixture() {
  const CaseLawDatabase db = precedent_fixture();
  const Formula desc = P("A");
  auto permitted = [&](const char* f) { return permit(db, Query{P(f), desc, "H2"}).has_value(); };
  auto set_permitted = [&](std::vector<Formula> fs) {
    return permit_set(db, fs, desc, "H2").has_value();
  };
  const bool r1 = permitted("p");
  const bool r2 = permitted("!p");
  const bool r3 = set_permitted({P("p"), P("!p")});
  const bool r4 = set_permitted({P("A -> B"), P("B -> !A")});
  const bool r5 = permitted("(A -> B) & (B -> !A)");
  const bool pass = r1 && r2 && !r3 && r4 && !r5;
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  return {pass, std::string("permit(p)=") + yn(r1) + " permit(!p)=" + yn(r2) +
                    " permit_set({p,!p})=" + yn(r3) + " permit_set({A->B,B->!A})=" + yn(r4) +
                    " permit((A->B)&(B->!A))=" + yn(r5)};
}

// 2. false is never permitted; {f, !f} never is either.
Outcome bot_brings_conflicts() {
  constexpr int kInstances = 200;
  Rng rng(20240602);
  DbGenOptions opts;
  opts.max_cases = 6;
  opts.num_atoms = 5;
  const auto atoms = atom_pool(opts.num_atoms);
  const char* courts[] = {"low", "high", "side", kQueryCourt};
  int bot_ok = 0, pair_ok = 0;
  for (int i = 0; i < kInstances; ++i) {
    const CaseLawDatabase db = random_consistent_db(rng, opts);
    const Formula desc = coin(rng) ? Formula::top() : random_satisfiable_formula(rng, atoms, 1);
    const char* crt = courts[uniform_int(rng, 0, 3)];
    if (!permit(db, Query{Formula::bot(), desc, crt})) ++bot_ok;
    const Formula f = random_satisfiable_formula(rng, atoms, 2);
    if (!permit_set(db, {f, negate(f)}, desc, crt)) ++pair_ok;
  }
  return {bot_ok == kInstances && pair_ok == kInstances,
          "permit(false)=no " + ratio(bot_ok, kInstances) + ", permit_set({f,!f})=no " +
              ratio(pair_ok, kInstances)};
}

// 3. The cases C1 (single Ref leaf) and C2 (single Axiom leaf) of the
// construction keep case-wise resp. referential consistency, and both keep
// hierarchical consistency at a court that must agree with nobody.
Outcome consistency_necessary() {
  constexpr int kInstances = 100;
  Rng rng(77031);
  const auto atoms = atom_pool(5);
  int ok1 = 0, ok2 = 0, hier = 0, total = 0;
  while (total < kInstances) {
    const CaseLawDatabase db = random_consistent_db(rng);
    if (db.empty()) continue;
    ++total;
    const Formula f = random_satisfiable_formula(rng, atoms, 2);
    const Case& d = db.cases()[uniform_int(rng, 0, static_cast<int>(db.size()) - 1)];
    Case c1 = make_case("C1", f, Formula::top(),
                        ProofNode::reference(d.id, Formula::top(), f), kQueryCourt);
    Case c2 = make_case("C2", f, Formula::top(), ProofNode::axiom(f), kQueryCourt);
    const CaseLawDatabase db1 = db_insert(db, c1);
    const CaseLawDatabase db2 = db_insert(db, c2);
    ok1 += Checker(db1).check_case_wise().ok() ? 1 : 0;
    ok2 += Checker(db2).check_referential().ok() ? 1 : 0;
    hier += check_hierarchical(db1).ok() && check_hierarchical(db2).ok() ? 1 : 0;
  }
  return {ok1 == total && ok2 == total && hier == total,
          "case-wise(C1) " + ratio(ok1, total) + ", referential(C2) " + ratio(ok2, total) +
              ", hierarchical(C1,C2) " + ratio(hier, total)};
}

// 4. Every warranted node has a supporting set under CaseDesc := its pres.
Outcome all_follows_from_decisions() {
  constexpr int kInstances = 100;
  Rng rng(4242);
  DbGenOptions opts;
  opts.mark_probability = 0.3;
  int nodes = 0, found = 0;
  for (int i = 0; i < kInstances; ++i) {
    const CaseLawDatabase db = random_consistent_db(rng, opts);
    Checker checker(db);
    const auto blocked = db.unwarranted_all();
    for (const auto& c : db.cases()) {
      for_each_node(c.tree, [&](const NodePath& path, const ProofNode&) {
        if (!checker.warranted(subcase(c, path), blocked)) return;
        ++nodes;
        found += supports_exists_for_node(db, c, path).has_value() ? 1 : 0;
      });
    }
  }
  return {found == nodes, "supporting set found for " + ratio(found, nodes) + " warranted nodes"};
}

// 5. permit, subset enumeration and the switch encoding agree.
Outcome oracle_triangle() {
  constexpr int kInstances = 300;
  Rng rng(9001);
  DbGenOptions opts;
  opts.max_assess_total = 8;
  opts.num_atoms = 6;
  opts.mark_probability = 0.2;
  const auto atoms = atom_pool(opts.num_atoms);
  int agree = 0, positives = 0;
  for (int i = 0; i < kInstances; ++i) {
    const CaseLawDatabase db = random_consistent_db(rng, opts);
    const Formula desc = coin(rng, 0.4) ? Formula::top() : random_satisfiable_formula(rng, atoms, 1);
    // bias the query towards formulas the database can decide
    Formula f = random_formula(rng, atoms, 2);
    if (!db.empty() && coin(rng, 0.5)) {
      const Case& c = db.cases()[uniform_int(rng, 0, static_cast<int>(db.size()) - 1)];
      f = coin(rng) ? c.df : disjoin(c.df, random_formula(rng, atoms, 1));
    }
    const Query q{f, desc, kQueryCourt};
    const bool a = permit(db, q).has_value();
    const bool b = brute_force_permit(db, q);
    const bool c = solve_switch(db, q);
    agree += (a == b && b == c) ? 1 : 0;
    positives += a ? 1 : 0;
  }
  return {agree == kInstances, "agreement " + ratio(agree, kInstances) + " (" +
                                   std::to_string(positives) + " permitted)"};
}

// Formula with the given truth table over three atoms (bit i of `table` is
// the value under the assignment whose bits are i).
Formula from_truth_table(unsigned table, const std::vector<Atom>& atoms) {
  Formula out = Formula::bot();
  for (unsigned row = 0; row < 8; ++row) {
    if (!((table >> row) & 1)) continue;
    Formula term = Formula::top();
    for (unsigned v = 0; v < 3; ++v) {
      Formula lit = Formula::atom(atoms[v]);
      term = conjoin(term, (row >> v) & 1 ? lit : negate(lit));
    }
    out = disjoin(out, term);
  }
  return out;
}

// 6. The QBF reduction, over every 3-atom matrix and every split of the atoms
// into a nonempty X and Y with |X|, |Y| <= 2.
Outcome qbf_reduction() {
  const std::vector<Atom> atoms = {Atom("x"), Atom("y"), Atom("z")};
  int agree = 0, total = 0, valid = 0;
  for (unsigned split = 1; split < 7; ++split) {  // bit v: atom v existential
    QbfInstance inst;
    for (unsigned v = 0; v < 3; ++v)
      ((split >> v) & 1 ? inst.exists_vars : inst.forall_vars).push_back(atoms[v]);
    for (unsigned table = 0; table < 256; ++table) {
      inst.matrix = from_truth_table(table, atoms);
      const auto [db, q] = qbf_to_cld(inst);
      const bool expected = brute_force_qbf(inst.exists_vars, inst.forall_vars, inst.matrix);
      const bool got = permit(db, q).has_value();
      agree += expected == got ? 1 : 0;
      valid += expected ? 1 : 0;
      ++total;
    }
  }
  return {agree == total, "agreement " + ratio(agree, total) + " (" + std::to_string(valid) +
                              " valid instances)"};
}

// 7. Norm extraction and normal forms on privacy databases.
Outcome norm_extraction() {
  constexpr int kInstances = 100;
  Rng rng(31337);
  int cases = 0, props = 0, clean = 0, decided = 0, rule_decided = 0, normal = 0;
  for (int i = 0; i < kInstances; ++i) {
    const CaseLawDatabase db = random_privacy_db(rng);
    for (const auto& c : db.cases()) {
      ++cases;
      const NormSplit split = split_facts(c, db);
      props += verify_norm_properties(c, split, db.kb_w()) ? 1 : 0;
      const Norm norm = extract_norm(c, db);
      clean += !mentions_predicate(norm.condition, kLegalActionPredicate) ? 1 : 0;
      decided += entails(conjoin(db.kb_w(), c.case_desc), norm.condition) ? 1 : 0;
      // reading the decision clause on the whole rule condition -> df instead
      rule_decided += entails(conjoin(db.kb_w(), c.case_desc), norm.as_formula()) ? 1 : 0;
      bool ok = false;
      try {
        ok = check_db(normalize(db, c.id)).ok();
      } catch (const Error&) {
      }
      normal += ok ? 1 : 0;
    }
  }
  const bool pass = props == cases && clean == cases && decided == cases && normal == cases;
  return {pass, "properties " + ratio(props, cases) + ", condition is_legal_action-free " +
                    ratio(clean, cases) + ", decided by its case " + ratio(decided, cases) + " (whole rule " +
                    ratio(rule_decided, cases) + ")" +
                    ", N(C) keeps consistency " + ratio(normal, cases)};
}

// 8. check_db stays within its call budget.
Outcome entailment_budget_check() {
  constexpr int kInstances = 200;
  Rng rng(8);
  DbGenOptions opts;
  opts.mark_probability = 0.5;
  int within = 0;
  std::uint64_t worst_used = 0, worst_budget = 0;
  double worst_ratio = 0;
  for (int i = 0; i < kInstances; ++i) {
    const CaseLawDatabase db = random_consistent_db(rng, opts);
    EntailmentCounter counter;
    check_db(db, Oracle(&counter));
    const std::uint64_t budget = entailment_budget(db);
    within += counter.value() <= budget ? 1 : 0;
    const double r = budget ? static_cast<double>(counter.value()) / budget : 0;
    if (r > worst_ratio) {
      worst_ratio = r;
      worst_used = counter.value();
      worst_budget = budget;
    }
  }
  return {within == kInstances, "within budget " + ratio(within, kInstances) + ", tightest " +
                                    std::to_string(worst_used) + "/" +
                                    std::to_string(worst_budget) + " calls"};
}

}  // namespace
}  // namespace caselaw::testing

int main() {
  using namespace caselaw::testing;
  const std::vector<Criterion> criteria = {
      {1, "fixture reproduction", 1.0, fixture},
      {2, "false and {f,!f} are never permitted", 30.0, bot_brings_conflicts},
      {3, "constructed cases preserve consistency", 0, consistency_necessary},
      {4, "warranted nodes have supporting sets", 0, all_follows_from_decisions,
       "below an OR node pres_C is a disjunction, so condition (1) can fail for every "
       "candidate set; see WarrantedOrNodeWithoutSupportingSet in reasoning_tests"},
      {5, "permit == subset enumeration == switch encoding", 120.0, oracle_triangle},
      {6, "QBF reduction matches QBF validity", 0, qbf_reduction},
      {7, "norm extraction and normal forms", 0, norm_extraction,
       "pres_C & phi_S is entailed by CaseDesc only when CaseDesc entails the assessed "
       "trigger facts; see ConditionNotDecidedByCaseDescription in norms_tests"},
      {8, "check_db entailment-call budget", 0, entailment_budget_check},
  };
  int failed = 0, unexpected = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    bool pass = out.pass;
    std::string timing = std::to_string(secs).substr(0, 5) + "s";
    if (c.time_limit_s > 0 && secs > c.time_limit_s) {
      pass = false;
      timing += " > limit " + std::to_string(c.time_limit_s).substr(0, 5) + "s";
    }
    failed += pass ? 0 : 1;
    std::printf("[%s] criterion %d: %s: %s (%s)\n", pass ? "PASS" : "FAIL", c.number, c.name,
                out.detail.c_str(), timing.c_str());
    if (c.known_red && !pass) {
      std::printf("       known red: %s\n", c.known_red);
    } else if (c.known_red) {
      std::printf("       unexpected pass of a criterion listed as known red\n");
      ++unexpected;
    } else if (!pass) {
      ++unexpected;
    }
    std::fflush(stdout);
  }
  std::printf("[INFO] criterion 9: complexity bounds are not measured; criteria 5 and 6 "
              "exercise the constructive reductions only\n");
  std::printf("%d of %zu criteria failed, %d unexpectedly\n", failed, criteria.size(), unexpected);
  return unexpected;
}
