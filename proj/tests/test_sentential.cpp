#include <doctest.h>

#include <random>

#include "gen.hpp"
#include "herbrand/sentential.hpp"
#include "oracles.hpp"

using namespace herbrand;

TEST_CASE("atom identity is syntactic") {
  auto [shape, table] = abstract_atoms(parse("P(c) \\/ (P(c) /\\ P(d))"));
  CHECK(table.size() == 2);  // P(c) interned once, P(d) separately
  CHECK(shape->kind == FKind::Or);
  CHECK(shape->lhs->atom == shape->rhs->lhs->atom);
  CHECK(shape->lhs->atom != shape->rhs->rhs->atom);
}

TEST_CASE("terms distinguish atoms even for the same predicate") {
  // P(f(c)) and P(f(d)) are different propositional variables
  CHECK_FALSE(is_tautology(parse("P(f(c)) \\/ ~P(f(d))")));
  CHECK(is_tautology(parse("P(f(c)) \\/ ~P(f(c))")));
}

TEST_CASE("basic verdicts") {
  CHECK(is_tautology(parse("P \\/ ~P")));
  CHECK(is_tautology(parse("~(P /\\ ~P)")));
  CHECK(is_tautology(parse("P -> (Q -> P)")));
  CHECK(is_tautology(parse("(P -> Q) -> ((Q -> R) -> (P -> R))")));
  CHECK_FALSE(is_tautology(parse("P")));
  CHECK_FALSE(is_tautology(parse("P \\/ Q")));
  CHECK_FALSE(is_tautology(parse("P -> Q")));
  CHECK_FALSE(is_tautology(parse("P /\\ ~P")));
}

TEST_CASE("quantifiers are rejected") {
  CHECK_THROWS_AS(is_tautology(parse("forall x. P(x)")),
                  QuantifierPresentError);
  CHECK_THROWS_AS(abstract_atoms(parse("P \\/ exists x. Q(x)")),
                  QuantifierPresentError);
}

TEST_CASE("property: agreement with the truth-table oracle") {
  std::mt19937 rng(97);
  for (int i = 0; i < 300; i++) {
    FormulaPtr f = gen::random_qf(rng, 6, 6);
    CAPTURE(print(f));
    CHECK(is_tautology(f) == oracle::tt_tautology(f));
  }
}

TEST_CASE("a wide tautology the truth table would struggle with") {
  // (P1 \/ ~P1) /\ ... over many distinct atoms, plus deep nesting
  FormulaPtr f = parse("P0 \\/ ~P0");
  for (int i = 1; i < 40; i++) {
    std::string n = "P" + std::to_string(i);
    f = make_and(f, parse(n + " \\/ ~" + n));
  }
  CHECK(is_tautology(f));
  CHECK_FALSE(is_tautology(make_and(f, parse("Q"))));
}
