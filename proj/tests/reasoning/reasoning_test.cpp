#include <gtest/gtest.h>

#include "caselaw/errors.hpp"
#include "caselaw/qbf.hpp"
#include "caselaw/reasoning.hpp"
#include "support/cases.hpp"
#include "support/oracles.hpp"

namespace caselaw {
namespace {

using testing::P;

Query fixture_query(const char* f, const char* desc = "A") { return Query{P(f), P(desc), "H2"}; }

TEST(Fixture, CandidateNodes) {
  const auto db = testing::precedent_fixture();
  EXPECT_EQ(candidate_nodes(db, fixture_query("p")).size(), 4u);
  // B -> !A is ruled out once A and B both hold
  const auto narrowed = candidate_nodes(db, fixture_query("p", "A & B"));
  ASSERT_EQ(narrowed.size(), 3u);
  for (const auto& a : narrowed) EXPECT_NE(a.case_id, "C4");
  EXPECT_EQ(assess_leaves(db).front().case_id, "C1");
}

TEST(Fixture, SupportingSets) {
  const auto db = testing::precedent_fixture();
  const auto leaves = assess_leaves(db);
  const SupportingSet c1{{leaves[0]}};
  const SupportingSet c1c2{{leaves[0], leaves[1]}};
  EXPECT_TRUE(is_supporting(db, fixture_query("p"), c1));
  EXPECT_FALSE(is_supporting(db, fixture_query("!p"), c1));
  EXPECT_FALSE(is_supporting(db, fixture_query("p"), c1c2));  // facts contradict
  EXPECT_TRUE(is_supporting(db, fixture_query("A"), SupportingSet{}));
  EXPECT_FALSE(is_supporting(db, fixture_query("B"), SupportingSet{}));
  EXPECT_TRUE(is_supporting(db, fixture_query("B"), SupportingSet{{leaves[2]}}));

  AssessRef bogus = leaves[0];
  bogus.path = {0};
  EXPECT_THROW(is_supporting(db, fixture_query("p"), SupportingSet{{bogus}}), ModelError);
}

TEST(Fixture, Permit) {
  const auto db = testing::precedent_fixture();
  EXPECT_TRUE(permit(db, fixture_query("p")));
  EXPECT_TRUE(permit(db, fixture_query("!p")));
  EXPECT_FALSE(permit(db, fixture_query("(A -> B) & (B -> !A)")));
  EXPECT_FALSE(permit(db, fixture_query("false")));
  EXPECT_FALSE(permit_set(db, {P("p"), P("!p")}, P("A"), "H2"));
  const auto both = permit_set(db, {P("A -> B"), P("B -> !A")}, P("A"), "H2");
  ASSERT_TRUE(both);
  EXPECT_EQ(both->size(), 2u);
  EXPECT_THROW(permit(db, Query{P("p"), P("A"), "nowhere"}), UnknownCourtError);
  EXPECT_THROW(permit(db, fixture_query("__chosen_1")), ReservedNameError);
}

TEST(Fixture, WitnessShape) {
  const auto db = testing::precedent_fixture();
  const auto w = permit(db, fixture_query("p"));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->df, P("p"));
  EXPECT_EQ(w->crt, "H2");
  EXPECT_EQ(w->time, db.next_time());
  ASSERT_EQ(w->tree.kind, NodeKind::And);
  ASSERT_EQ(w->tree.children.size(), 2u);
  const ProofNode& ref = w->tree.children[0];
  EXPECT_EQ(ref.kind, NodeKind::Ref);
  EXPECT_EQ(ref.ref_id, "C1");
  EXPECT_EQ(ref.fact(), P("p"));
  EXPECT_EQ(w->tree.children[1].kind, NodeKind::Axiom);
  EXPECT_TRUE(check_db(db_insert(db, *w)).ok());

  const Case empty = witness_case(db, fixture_query("A"), SupportingSet{});
  EXPECT_EQ(empty.tree, ProofNode::inner(NodeKind::And, P("A"), {ProofNode::axiom(P("A"))}));
  EXPECT_TRUE(check_db(db_insert(db, empty)).ok());

  const Case probe = supporting_probe(fixture_query("p"), SupportingSet{{assess_leaves(db)[0]}});
  EXPECT_TRUE(probe.df.is_top());
}

TEST(Fixture, Deducibility) {
  const auto db = testing::precedent_fixture();
  EXPECT_EQ(deducible(db, fixture_query("p")), Deducibility::PermittedButContradicted);
  EXPECT_EQ(deducible(db, fixture_query("A")), Deducibility::Deducible);
  EXPECT_EQ(deducible(db, fixture_query("A | p")), Deducibility::Deducible);
  EXPECT_EQ(deducible(db, fixture_query("false")), Deducibility::NotPermitted);
  EXPECT_STREQ(to_string(Deducibility::PermittedButContradicted), "permitted-but-contradicted");
}

TEST(Permit, CourtsBoundByEarlierHigherCourtCase) {
  const CaseLawDatabase db(
      Formula::top(), {}, CourtHierarchy({"low", "high", "side"}, {{"low", "high"}}),
      {make_case("h", P("x"), P("true"), ProofNode::assess(P("true"), P("x")), "high", 0),
       make_case("s", P("!x"), P("true"), ProofNode::assess(P("true"), P("!x")), "side", 1)});
  ASSERT_TRUE(check_db(db).ok());
  EXPECT_TRUE(permit(db, Query{P("!x"), P("true"), "side"}));
  EXPECT_FALSE(permit(db, Query{P("!x"), P("true"), "high"}));
  EXPECT_FALSE(permit(db, Query{P("!x"), P("true"), "low"}));
  EXPECT_TRUE(permit(db, Query{P("x"), P("true"), "low"}));
}

TEST(Permit, RefusesInconsistentDatabase) {
  const auto base = testing::precedent_fixture();
  auto cases = base.cases();
  cases.push_back(make_case("X", P("!p"), P("true"), ProofNode::assess(P("true"), P("!p")), "H11", 9));
  const CaseLawDatabase bad(base.kb_w(), {}, base.hierarchy(), cases);
  EXPECT_THROW(permit(bad, fixture_query("p")), InconsistentDatabaseError);
  PermitOptions lax;
  lax.verify_database = false;
  EXPECT_NO_THROW(permit(bad, fixture_query("p"), lax));
}

TEST(Permit, UnwarrantedLeavesAreNotCited) {
  const CaseLawDatabase db(
      Formula::top(), {}, CourtHierarchy({"c"}, {}),
      {make_case("a", P("x"), P("true"), ProofNode::assess(P("true"), P("x")), "c", 0)},
      {{std::nullopt, 0, NodeRef{"a", {}}}});
  EXPECT_FALSE(permit(db, Query{P("x"), P("true"), "c"}));
  EXPECT_TRUE(permit(db, Query{P("x"), P("x"), "c"}));  // via the empty set
}

TEST(PermitSet, SizeLimit) {
  const auto db = testing::precedent_fixture();
  PermitOptions tiny;
  tiny.max_combinations = 1;
  EXPECT_THROW(permit_set(db, {P("p | A"), P("A -> B")}, P("A"), "H2", tiny), SizeLimitError);
}

TEST(SupportsExists, AndNodeCollectsLeaves) {
  const CaseLawDatabase db(
      Formula::top(), {}, CourtHierarchy({"c"}, {}),
      {make_case("a", P("x"), P("p"), ProofNode::assess(P("p"), P("x")), "c", 0),
       make_case("b", P("x & y"), P("p & q"),
                 ProofNode::inner(NodeKind::And, P("x & y"),
                                  {ProofNode::reference("a", P("p"), P("x")),
                                   ProofNode::assess(P("q"), P("y"))}),
                 "c", 1)});
  const auto s = supports_exists_for_node(db, db.at("b"), {});
  ASSERT_TRUE(s);
  ASSERT_EQ(s->members.size(), 2u);
  EXPECT_EQ(s->members[0].ref(), (NodeRef{"a", {}}));
  EXPECT_EQ(s->members[1].ref(), (NodeRef{"b", {1}}));
}

// An OR node whose branches rest on different premises: pres is p | q, and no
// set of leaves has pres entailed by p | q while its facts entail x | y.
TEST(SupportsExists, WarrantedOrNodeWithoutSupportingSet) {
  const CaseLawDatabase db(
      Formula::top(), {}, CourtHierarchy({"c", "query"}, {}),
      {make_case("c", P("x | y"), P("p | q"),
                 ProofNode::inner(NodeKind::Or, P("x | y"),
                                  {ProofNode::assess(P("p"), P("x")),
                                   ProofNode::assess(P("q"), P("y"))}),
                 "c", 0)});
  ASSERT_TRUE(check_db(db).ok());
  Checker checker(db);
  ASSERT_TRUE(checker.warranted(db.at("c"), db.unwarranted_all()));
  EXPECT_FALSE(supports_exists_for_node(db, db.at("c"), {}));
  const Query q{P("x | y"), P("p | q"), "query"};
  EXPECT_FALSE(testing::brute_force_permit(db, q));
  EXPECT_FALSE(permit(db, q));
}

TEST(Permit, PruningDoesNotChangeResults) {
  testing::Rng rng(8080);
  const auto atoms = testing::atom_pool(5);
  PermitOptions unpruned;
  unpruned.prune_supersets = false;
  for (int i = 0; i < 60; ++i) {
    const auto db = testing::random_consistent_db(rng);
    const Query q{testing::random_formula(rng, atoms, 2),
                  testing::random_satisfiable_formula(rng, atoms, 1), testing::kQueryCourt};
    const auto a = find_supporting_set(db, q);
    const auto b = find_supporting_set(db, q, unpruned);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) EXPECT_EQ(*a, *b);
    EXPECT_EQ(find_supporting_set(db, q), a);  // deterministic
  }
}

TEST(Permit, AgreesWithBruteForceAndSwitchEncoding) {
  testing::Rng rng(271828);
  const auto atoms = testing::atom_pool(5);
  int permitted = 0;
  for (int i = 0; i < 80; ++i) {
    const auto db = testing::random_consistent_db(rng, {.mark_probability = 0.2});
    const Query q{testing::random_formula(rng, atoms, 2),
                  testing::coin(rng) ? Formula::top() : testing::random_formula(rng, atoms, 1),
                  testing::kQueryCourt};
    const bool expected = testing::brute_force_permit(db, q);
    permitted += expected;
    ASSERT_EQ(permit(db, q).has_value(), expected) << q.f.to_string();
    ASSERT_EQ(solve_switch(db, q), expected) << q.f.to_string();
  }
  EXPECT_GT(permitted, 0);
  EXPECT_LT(permitted, 80);
}

TEST(Permit, WitnessKeepsDatabaseConsistent) {
  testing::Rng rng(5);
  const auto atoms = testing::atom_pool(5);
  for (int i = 0; i < 40; ++i) {
    const auto db = testing::random_consistent_db(rng);
    const Query q{testing::random_formula(rng, atoms, 1), Formula::top(), "high"};
    if (const auto w = permit(db, q)) EXPECT_TRUE(check_db(db_insert(db, *w)).ok());
  }
}

}  // namespace
}  // namespace caselaw
