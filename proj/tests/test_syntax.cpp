#include <doctest.h>

#include <functional>
#include <random>

#include "corpus.hpp"
#include "herbrand/syntax.hpp"

using namespace herbrand;

TEST_CASE("precedence and sugar") {
  // -> is right-associative sugar for ~A \/ B
  CHECK(print(parse("P -> Q -> R")) == "~P \\/ (~Q \\/ R)");
  // ~ binds tighter than /\ which binds tighter than \/
  CHECK(print(parse("~P /\\ Q \\/ R")) == "(~P /\\ Q) \\/ R");
  // infix < is sugar for lt/2 and prints back as infix
  CHECK(print(parse("(a < b)")) == "(a < b)");
  CHECK(syntactic_equal(parse("(a < b)"), parse("lt(a, b)")));
}

TEST_CASE("minimal quantifier scope") {
  FormulaPtr f = parse("forall x. P(x) \\/ Q");
  REQUIRE(f->kind == FKind::Or);
  CHECK(f->lhs->kind == FKind::Forall);
  // parenthesizing extends the scope
  FormulaPtr g = parse("forall x. (P(x) \\/ Q)");
  CHECK(g->kind == FKind::Forall);
}

TEST_CASE("comments and identifier glue") {
  FormulaPtr f = parse("P # trailing comment\n \\/ Q");
  CHECK(print(f) == "P \\/ Q");
  // '#' glued to an identifier continues it (rectification suffixes)
  FormulaPtr g = parse("P(x#1)");
  CHECK(print(g) == "P(x#1)");
}

TEST_CASE("rectification at parse") {
  FormulaPtr f = parse("(forall x. P(x)) \\/ (forall x. Q(x))");
  CHECK(is_rectified(f));
  CHECK(f->lhs->sym.name != f->rhs->sym.name);
  // a name both free and bound gets the binder renamed
  FormulaPtr g = parse("P(x) \\/ forall x. Q(x)");
  CHECK(is_rectified(g));
  CHECK(free_variables(g).count("x") == 1);
  CHECK(g->rhs->sym.name != "x");
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse("P \\/"), SyntaxError);
  CHECK_THROWS_AS(parse("P(a) /\\ P(a, b)"), SyntaxError);  // arity clash
  CHECK_THROWS_AS(parse("P Q"), SyntaxError);               // trailing input
  CHECK_THROWS_AS(parse(""), SyntaxError);
  CHECK_THROWS_AS(parse_term("f(a,)"), SyntaxError);
  try {
    parse("P \\/\n  @");
    CHECK(false);
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_equal(parse("forall x. P(x)"), parse("forall y. P(y)")));
  CHECK_FALSE(alpha_equal(parse("forall x. P(x)"), parse("exists y. P(y)")));
  CHECK_FALSE(alpha_equal(parse("forall x. P(x)"), parse("forall y. Q(y)")));
  // free variables must match by name
  CHECK_FALSE(alpha_equal(parse("P(a)"), parse("P(b)")));
  CHECK(alpha_equal(parse("forall x. (x < y)"), parse("forall z. (z < y)")));
  CHECK_FALSE(alpha_equal(parse("forall x. (x < y)"), parse("forall z. (y < z)")));
}

TEST_CASE("substitution and capture") {
  FormulaPtr f = parse("forall y. R(x, y)");
  Substitution ok{{"x", parse_term("f(z)")}};
  CHECK(print(substitute(f, ok)) == "forall y. R(f(z), y)");
  Substitution capture{{"x", parse_term("f(y)")}};
  CHECK_THROWS_AS(substitute(f, capture), CaptureError);
  // bound occurrences are untouched
  Substitution bound{{"y", parse_term("c")}};
  CHECK(syntactic_equal(substitute(f, bound), f));
}

TEST_CASE("positions") {
  FormulaPtr f = parse("~P \\/ forall x. Q(x)");
  CHECK(print(subformula_at(f, {0, 0})) == "P");
  CHECK(print(subformula_at(f, {1, 0})) == "Q(x)");
  CHECK_THROWS_AS(subformula_at(f, {2}), PositionError);
  CHECK_THROWS_AS(subformula_at(f, {0, 0, 0}), PositionError);
  FormulaPtr g = replace_at(f, {0, 0}, parse("R"));
  CHECK(print(g) == "~R \\/ forall x. Q(x)");
  // replace_at re-checks rectifiedness
  CHECK_THROWS_AS(replace_at(f, {0, 0}, parse("P(x)")), RectifyError);
}

TEST_CASE("rename_bound validation") {
  FormulaPtr f = parse("forall x. (P(x) \\/ exists y. Q(y))");
  FormulaPtr g = rename_bound(f, {{"x", "u"}, {"y", "w"}});
  CHECK(print(g) == "forall u. (P(u) \\/ exists w. Q(w))");
  CHECK(alpha_equal(f, g));
  CHECK_THROWS_AS(rename_bound(f, {{"z", "u"}}), RectifyError);  // not a binder
  CHECK_THROWS_AS(rename_bound(f, {{"x", "y"}}), RectifyError);  // collision
  FormulaPtr h = parse("forall x. P(x, c)");
  CHECK_THROWS_AS(rename_bound(h, {{"x", "c"}}), RectifyError);  // hits a free name
}

TEST_CASE("fresh_name") {
  std::set<std::string> taken{"x", "x#1"};
  CHECK(fresh_name("x", taken) == "x#2");
  CHECK(fresh_name("y", taken) == "y");
  CHECK(taken.count("y") == 1);
  // repeated freshening strips the old counter instead of stacking
  CHECK(fresh_name("x#1", taken) == "x#3");
}

TEST_CASE("print/parse round trip on the corpus") {
  for (const std::string& text : corpus::all()) {
    FormulaPtr f = parse(text);
    CAPTURE(text);
    CHECK(is_rectified(f));
    CHECK(syntactic_equal(parse(print(f)), f));
  }
}

TEST_CASE("property: alpha_equal is invariant under bound renaming") {
  std::mt19937 rng(20260823);
  for (const std::string& text : corpus::all()) {
    FormulaPtr f = parse(text);
    std::map<std::string, std::string> ren;
    std::set<std::string> taken = all_names(f);
    std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& g) {
      if (g->kind == FKind::Forall || g->kind == FKind::Exists) {
        if (rng() % 2 == 0)
          ren[g->sym.name] = fresh_name("r" + std::to_string(rng() % 100), taken);
        walk(g->lhs);
      } else {
        if (g->lhs) walk(g->lhs);
        if (g->rhs) walk(g->rhs);
      }
    };
    walk(f);
    if (ren.empty()) continue;
    FormulaPtr g = rename_bound(f, ren);
    CHECK(alpha_equal(f, g));
    CHECK(alpha_equal(g, f));
  }
}
