#include <gtest/gtest.h>

#include "caselaw/errors.hpp"
#include "caselaw/parser.hpp"

namespace caselaw {
namespace {

const Formula p = Formula::atom("p");
const Formula q = Formula::atom("q");
const Formula r = Formula::atom("r");

TEST(Parser, Keywords) {
  EXPECT_TRUE(parse_formula("true").is_top());
  EXPECT_TRUE(parse_formula(" false ").is_bot());
}

TEST(Parser, PrecedenceShape) {
  EXPECT_EQ(parse_formula("!p & (q -> r)"),
            Formula::conjunction(Formula::negation(p), Formula::implication(q, r)));
  EXPECT_EQ(parse_formula("p | q & r"), Formula::disjunction(p, Formula::conjunction(q, r)));
  EXPECT_EQ(parse_formula("p -> q | r"), Formula::implication(p, Formula::disjunction(q, r)));
  EXPECT_EQ(parse_formula("p <-> q -> r"), Formula::equivalence(p, Formula::implication(q, r)));
  EXPECT_EQ(parse_formula("!!p"), Formula::negation(Formula::negation(p)));
}

TEST(Parser, Associativity) {
  EXPECT_EQ(parse_formula("p -> q -> r"), Formula::implication(p, Formula::implication(q, r)));
  EXPECT_EQ(parse_formula("p <-> q <-> r"), Formula::equivalence(p, Formula::equivalence(q, r)));
  EXPECT_EQ(parse_formula("p & q & r"), Formula::conjunction(Formula::conjunction(p, q), r));
  EXPECT_EQ(parse_formula("p | q | r"), Formula::disjunction(Formula::disjunction(p, q), r));
}

TEST(Parser, GroundAtoms) {
  Formula f = parse_formula("is_legal_action(a1)");
  ASSERT_TRUE(f.is_atom());
  EXPECT_EQ(f.atom_value().name, "is_legal_action");
  EXPECT_EQ(f.atom_value().args, std::vector<std::string>{"a1"});
  EXPECT_EQ(parse_formula("r( a ,b )").atom_value().args, (std::vector<std::string>{"a", "b"}));
}

TEST(Parser, WhitespaceAndNewlinesAreInsignificant) {
  EXPECT_EQ(parse_formula("p\n&\tq"), Formula::conjunction(p, q));
}

TEST(Parser, ErrorsCarryPosition) {
  try {
    parse_formula("p &\n  & q");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(Parser, RejectsMalformedInput) {
  for (const char* bad : {"", "p &", "(p", "p)", "p q", "r(", "r()", "r(a,)", "true(a)",
                          "p -> -> q", "1p", "p # q", "!", "p <- q"}) {
    EXPECT_THROW(parse_formula(bad), ParseError) << bad;
  }
}

}  // namespace
}  // namespace caselaw
