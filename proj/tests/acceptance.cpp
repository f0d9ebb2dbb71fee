// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Everything here goes through the public headers only.

#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "corpus.hpp"
#include "gen.hpp"
#include "herbrand/fundamental.hpp"
#include "herbrand/polarity.hpp"
#include "herbrand/sentential.hpp"
#include "oracles.hpp"

using namespace herbrand;

namespace {

// Returns nullopt on success, a detail string on failure.
using Criterion = std::function<std::optional<std::string>()>;

std::optional<std::string> fail(const std::string& msg) { return msg; }

// --- criterion 1: champ fini of order 1 is empty, corpus-wide

std::optional<std::string> c1() {
  for (const std::string& text : corpus::all()) {
    ChampFini c = champ_fini(1, outer_skolemize(parse(text)));
    if (!c.terms.empty())
      return fail("nonempty order-1 champ fini for: " + text);
  }
  return std::nullopt;
}

// --- criterion 2: the running example, end to end

std::optional<std::string> c2() {
  FormulaPtr f = parse(corpus::kPrec);
  ProveOutcome o = prove(f, 5);
  if (!o.found) return fail("not found within order 5");
  if (o.order != 3) return fail("found at order " + std::to_string(o.order) +
                                ", expected 3");
  if (!o.derivation) return fail("no derivation attached");
  Verdict v = check(*o.derivation);
  if (!v.accepted) return fail("kernel rejected the derivation: " + v.detail);
  FormulaPtr last = o.derivation->steps.empty()
                        ? o.derivation->start
                        : o.derivation->steps.back().result;
  if (!alpha_equal(last, f)) return fail("final formula differs from input");
  std::size_t b = lemma4_bound(*o.derivation);
  if (!check_property_c(f, static_cast<int>(b)).verdict)
    return fail("property C fails at the computed bound " + std::to_string(b));
  return std::nullopt;
}

// --- criterion 3: tautology checker vs exhaustive truth tables

std::optional<std::string> c3() {
  std::mt19937 rng(20260823);
  for (int i = 0; i < 1000; i++) {
    FormulaPtr f = gen::random_qf(rng, 12, 7);
    bool got = is_tautology(f);
    bool want = oracle::tt_tautology(f);
    if (got != want)
      return fail("disagreement on " + print(f) + ": checker says " +
                  (got ? "true" : "false"));
  }
  return std::nullopt;
}

// --- criterion 4: passage involution, normalization, multiset preservation

std::multiset<std::pair<bool, std::string>> quant_profile(const FormulaPtr& f) {
  std::multiset<std::pair<bool, std::string>> out;
  for (auto& occ : classify_quantifiers(f))
    out.insert({occ.gamma, occ.variable.name});
  return out;
}

std::optional<std::string> c4() {
  std::mt19937 rng(4);
  for (int iter = 0; iter < 200; iter++) {
    FormulaPtr f = gen::random_quantified(rng, 6);
    std::optional<std::string> bad;
    std::function<void(const FormulaPtr&, Position&)> walk =
        [&](const FormulaPtr& g, Position& path) {
          if (bad) return;
          for (int i = 1; i <= 6; i++) {
            FormulaPtr fwd;
            try {
              fwd = apply_passage(f, path, i, PassageDirection::Prenex);
            } catch (const RuleError&) {
              continue;
            }
            FormulaPtr back;
            try {
              back = apply_passage(fwd, path, i, PassageDirection::Antiprenex);
            } catch (const RuleError& e) {
              bad = "inverse failed on " + print(f) + ": " +
                    std::string(e.what());
              return;
            }
            if (!alpha_equal(back, f)) {
              bad = "involution broken on " + print(f);
              return;
            }
          }
          if (g->kind == FKind::Atom) return;
          path.push_back(0);
          walk(g->lhs, path);
          if (g->rhs) {
            path.back() = 1;
            walk(g->rhs, path);
          }
          path.pop_back();
        };
    Position path;
    walk(f, path);
    if (bad) return bad;

    size_t quants = classify_quantifiers(f).size();
    PassageTrace trace = passage_normalize(f, PassageDirection::Prenex);
    if (trace.steps.size() > 10 * quants)
      return fail("normalization of " + print(f) + " took " +
                  std::to_string(trace.steps.size()) + " steps");
    FormulaPtr matrix = trace.result;
    while (matrix->kind == FKind::Forall || matrix->kind == FKind::Exists)
      matrix = matrix->lhs;
    if (!quantifier_free(matrix))
      return fail("normal form of " + print(f) + " is not prenex: " +
                  print(trace.result));
    if (quant_profile(trace.result) != quant_profile(f))
      return fail("quantifier multiset changed for " + print(f));
  }
  return std::nullopt;
}

// --- criterion 5: round trip on the valid sub-corpus

std::optional<std::string> c5() {
  for (const std::string& text : corpus::valid()) {
    FormulaPtr f = parse(text);
    ProveOutcome o = prove(f, 5);
    if (!o.found) return fail("not found within order 5: " + text);
    Verdict v = check(*o.derivation);
    if (!v.accepted)
      return fail("kernel rejected derivation for " + text + ": " + v.detail);
    FormulaPtr last = o.derivation->steps.empty()
                          ? o.derivation->start
                          : o.derivation->steps.back().result;
    if (!alpha_equal(last, f))
      return fail("final formula differs from input for " + text);
    std::size_t b = lemma4_bound(*o.derivation);
    if (!check_property_c(f, static_cast<int>(b)).verdict)
      return fail("property C fails at bound " + std::to_string(b) + " for " +
                  text);
  }
  return std::nullopt;
}

// --- criterion 6: monotonicity of property C in the order

std::optional<std::string> c6() {
  for (const std::string& text : corpus::all()) {
    for (int n = 1; n <= 4; n++) {
      bool at_n, at_next;
      try {
        at_n = check_property_c(parse(text), n).verdict;
        at_next = check_property_c(parse(text), n + 1).verdict;
      } catch (const ResourceLimitError&) {
        break;  // outside the budget; nothing to assert
      }
      if (at_n && !at_next)
        return fail(text + " holds at order " + std::to_string(n) +
                    " but not at " + std::to_string(n + 1));
    }
  }
  return std::nullopt;
}

// --- criterion 7: kernel rejection suite, exact reason codes

struct Corrupt {
  const char* label;
  const char* expect;  // machine-readable reason code
  Derivation d;
};

Step quant_step(RuleKind rule, Position pos, FKind q, const std::string& var,
                const char* term, const char* result) {
  Step s;
  s.app.rule = rule;
  s.app.position = std::move(pos);
  s.app.quantifier = q;
  s.app.variable = var;
  if (term) s.app.witness = parse_term(term);
  s.result = parse(result);
  return s;
}

Step simp_step(Position pos,
               std::vector<std::pair<std::string, std::string>> map,
               const char* result) {
  Step s;
  s.app.rule = RuleKind::Simplification;
  s.app.position = std::move(pos);
  s.app.renaming = std::move(map);
  s.result = parse(result);
  return s;
}

Derivation one_step(const char* start, Step s) {
  Derivation d;
  d.start = parse(start);
  d.steps.push_back(std::move(s));
  return d;
}

std::vector<Corrupt> corrupted_suite() {
  using RK = RuleKind;
  std::vector<Corrupt> out;
  // eigenvariable violations: the bound variable is free in the context
  out.push_back({"E1", "eigenvariable",
                 one_step("P(y) \\/ Q(y)",
                          quant_step(RK::UniversaloidQuantification, {0},
                                     FKind::Forall, "y", nullptr,
                                     "(forall y. P(y)) \\/ Q(y)"))});
  out.push_back({"E2", "eigenvariable",
                 one_step("~P(y) \\/ P(y)",
                          quant_step(RK::UniversaloidQuantification, {1},
                                     FKind::Forall, "y", nullptr,
                                     "~P(y) \\/ forall y. P(y)"))});
  out.push_back({"E3", "eigenvariable",
                 one_step("R(y) /\\ S(y)",
                          quant_step(RK::UniversaloidQuantification, {0},
                                     FKind::Forall, "y", nullptr,
                                     "(forall y. R(y)) /\\ S(y)"))});
  out.push_back({"E4", "eigenvariable",
                 one_step("~P(y) \\/ Q(y)",
                          quant_step(RK::UniversaloidQuantification, {0, 0},
                                     FKind::Exists, "y", nullptr,
                                     "~exists y. P(y) \\/ Q(y)"))});
  // capture in H: the witness mentions a variable bound inside H
  out.push_back({"C1", "capture-in-h",
                 one_step("forall w. R(f(w), w)",
                          quant_step(RK::ExistentialoidQuantification, {},
                                     FKind::Exists, "x", "f(w)",
                                     "exists x. forall w. R(x, w)"))});
  out.push_back({"C2", "capture-in-h",
                 one_step("forall w. R(g(w), w)",
                          quant_step(RK::ExistentialoidQuantification, {},
                                     FKind::Exists, "x", "g(w)",
                                     "exists x. forall w. R(x, w)"))});
  out.push_back({"C3", "capture-in-h",
                 one_step("forall v. P(h(v))",
                          quant_step(RK::ExistentialoidQuantification, {},
                                     FKind::Exists, "x", "h(v)",
                                     "exists x. forall v. P(x)"))});
  out.push_back({"C4", "capture-in-h",
                 one_step("forall u. P(u)",
                          quant_step(RK::ExistentialoidQuantification, {},
                                     FKind::Exists, "x", "f(g(u))",
                                     "exists x. forall u. P(u)"))});
  // wrong-polarity simplification: conjunction at even parity and dually
  out.push_back({"W1", "wrong-connective",
                 one_step("P /\\ P", simp_step({}, {}, "P"))});
  out.push_back({"W2", "wrong-connective",
                 one_step("~(P \\/ P)", simp_step({0}, {}, "~P"))});
  out.push_back({"W3", "wrong-connective",
                 one_step("~(Q /\\ (P \\/ P))",
                          simp_step({0, 1}, {}, "~(Q /\\ P)"))});
  out.push_back({"W4", "wrong-connective",
                 one_step("(P /\\ P) \\/ Q", simp_step({0}, {}, "P \\/ Q"))});
  // premise mismatch: H{x -> t} is not the claimed subformula
  out.push_back({"P1", "premise-mismatch",
                 one_step("P(c)",
                          quant_step(RK::ExistentialoidQuantification, {},
                                     FKind::Exists, "x", "d",
                                     "exists x. P(x)"))});
  out.push_back({"P2", "premise-mismatch",
                 one_step("P(c) \\/ Q",
                          quant_step(RK::ExistentialoidQuantification, {0},
                                     FKind::Exists, "x", "c",
                                     "(exists x. R(x)) \\/ Q"))});
  out.push_back({"P3", "premise-mismatch",
                 one_step("R(c, d)",
                          quant_step(RK::ExistentialoidQuantification, {},
                                     FKind::Exists, "x", "c",
                                     "exists x. R(x, x)"))});
  out.push_back({"P4", "premise-mismatch",
                 one_step("~P(c)",
                          quant_step(RK::ExistentialoidQuantification, {0},
                                     FKind::Forall, "x", "e",
                                     "~forall x. P(x)"))});
  // non-variant H': the right branch is not the left one renamed
  out.push_back({"N1", "not-variant", one_step("P \\/ Q", simp_step({}, {}, "P"))});
  out.push_back({"N2", "not-variant",
                 one_step("exists y. P(y) \\/ exists w. Q(w)",
                          simp_step({}, {{"w", "y"}}, "exists y. P(y)"))});
  out.push_back({"N3", "not-variant",
                 one_step("R(c) \\/ R(d)", simp_step({}, {}, "R(c)"))});
  out.push_back({"N4", "not-variant",
                 one_step("exists y. (y < c) \\/ exists w. (w < d)",
                          simp_step({}, {{"w", "y"}}, "exists y. (y < c)"))});
  return out;
}

std::optional<std::string> c7() {
  std::vector<Corrupt> suite = corrupted_suite();
  if (suite.size() != 20) return fail("suite size is not 20");
  for (Corrupt& c : suite) {
    // go through the proof-file format, exactly as `verify` would see it
    Derivation back = read_derivation(write_derivation(c.d));
    Verdict v = check(back);
    if (v.accepted) return fail(std::string(c.label) + ": accepted");
    if (!v.reason)
      return fail(std::string(c.label) + ": rejected without a reason code");
    std::string got = to_string(*v.reason);
    if (got != c.expect)
      return fail(std::string(c.label) + ": got " + got + ", expected " +
                  c.expect);
    if (v.step != 0)
      return fail(std::string(c.label) + ": blamed step " +
                  std::to_string(v.step));
  }
  return std::nullopt;
}

// --- criterion 8: the two inference steps sharing one premise

std::optional<std::string> c8() {
  FormulaPtr premise = parse("(t < t) \\/ ~forall z. (t < z)");
  FormulaPtr c1 = apply_existentialoid_quantification(
      premise, {1}, FKind::Exists, "x", parse_term("t"));
  if (!alpha_equal(c1, parse("(t < t) \\/ exists x. ~forall z. (x < z)")))
    return fail("first conclusion is " + print(c1));
  FormulaPtr c2 = apply_existentialoid_quantification(
      premise, {1, 0}, FKind::Forall, "x", parse_term("t"));
  if (!alpha_equal(c2, parse("(t < t) \\/ ~forall x. forall z. (x < z)")))
    return fail("second conclusion is " + print(c2));
  return std::nullopt;
}

}  // namespace

int main() {
  const std::pair<const char*, Criterion> criteria[] = {
      {"order-1 champ fini is empty corpus-wide", c1},
      {"running example proved at order 3, verified, bound checks", c2},
      {"tautology checker agrees with 1000 truth tables", c3},
      {"passage involution and prenex normalization", c4},
      {"round trip on the valid sub-corpus", c5},
      {"property C is monotone in the order", c6},
      {"kernel rejects 20 corrupted derivations with exact reasons", c7},
      {"two quantification steps from a shared premise", c8},
  };
  int failures = 0;
  int n = 0;
  for (auto& [name, run] : criteria) {
    n++;
    std::optional<std::string> detail;
    try {
      detail = run();
    } catch (const std::exception& e) {
      detail = std::string("unexpected exception: ") + e.what();
    }
    if (detail) {
      failures++;
      std::printf("criterion %d: fail — %s (%s)\n", n, name, detail->c_str());
    } else {
      std::printf("criterion %d: pass — %s\n", n, name);
    }
  }
  return failures == 0 ? 0 : 1;
}
