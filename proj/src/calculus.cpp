#include "herbrand/calculus.hpp"

#include <functional>
#include <sstream>

#include "herbrand/polarity.hpp"

namespace herbrand {

std::string to_string(RuleErrorCode code) {
  switch (code) {
    case RuleErrorCode::NotExistentialoid: return "not-existentialoid";
    case RuleErrorCode::NotUniversaloid: return "not-universaloid";
    case RuleErrorCode::NotAccessible: return "not-accessible";
    case RuleErrorCode::CaptureInH: return "capture-in-h";
    case RuleErrorCode::PremiseMismatch: return "premise-mismatch";
    case RuleErrorCode::Eigenvariable: return "eigenvariable";
    case RuleErrorCode::WrongConnective: return "wrong-connective";
    case RuleErrorCode::NotVariant: return "not-variant";
    case RuleErrorCode::PatternMismatch: return "pattern-mismatch";
    case RuleErrorCode::FreeInB: return "free-in-b";
    case RuleErrorCode::BadPosition: return "bad-position";
    case RuleErrorCode::ResultMismatch: return "result-mismatch";
    case RuleErrorCode::RenameViolation: return "rename-violation";
    case RuleErrorCode::ForeignRule: return "foreign-rule";
    case RuleErrorCode::BadPayload: return "bad-payload";
    case RuleErrorCode::NotRectified: return "not-rectified";
  }
  return "unknown";
}

namespace {

FormulaPtr sub_at(const FormulaPtr& f, const Position& p) {
  try {
    return subformula_at(f, p);
  } catch (const PositionError&) {
    throw RuleError(RuleErrorCode::BadPosition, "position does not resolve");
  }
}

int parity_at(const FormulaPtr& f, const Position& p) {
  try {
    return polarity_at(f, p);
  } catch (const PositionError&) {
    throw RuleError(RuleErrorCode::BadPosition, "position does not resolve");
  }
}

bool quantifier_above(const FormulaPtr& f, const Position& p) {
  FormulaPtr cur = f;
  for (int idx : p) {
    if (cur->kind == FKind::Forall || cur->kind == FKind::Exists) return true;
    switch (cur->kind) {
      case FKind::Not: cur = cur->lhs; break;
      case FKind::And: case FKind::Or: cur = idx == 0 ? cur->lhs : cur->rhs; break;
      default: cur = cur->lhs; break;
    }
  }
  return false;
}

void collect_binders(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case FKind::Atom: return;
    case FKind::Not: collect_binders(f->lhs, out); return;
    case FKind::And: case FKind::Or:
      collect_binders(f->lhs, out);
      collect_binders(f->rhs, out);
      return;
    case FKind::Forall: case FKind::Exists:
      out.insert(f->sym.name);
      collect_binders(f->lhs, out);
      return;
  }
}

TermPtr replace_term(const TermPtr& in, const TermPtr& from, const TermPtr& to) {
  if (syntactic_equal(in, from)) return to;
  std::vector<TermPtr> args;
  args.reserve(in->args.size());
  bool changed = false;
  for (auto& a : in->args) {
    args.push_back(replace_term(a, from, to));
    if (args.back() != a) changed = true;
  }
  return changed ? make_term(in->head, std::move(args)) : in;
}

FormulaPtr replace_term_everywhere(const FormulaPtr& f, const TermPtr& from,
                                   const TermPtr& to) {
  switch (f->kind) {
    case FKind::Atom: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      bool changed = false;
      for (auto& a : f->args) {
        args.push_back(replace_term(a, from, to));
        if (args.back() != a) changed = true;
      }
      return changed ? make_atom(f->sym, std::move(args)) : f;
    }
    case FKind::Not: return make_not(replace_term_everywhere(f->lhs, from, to));
    case FKind::And:
      return make_and(replace_term_everywhere(f->lhs, from, to),
                      replace_term_everywhere(f->rhs, from, to));
    case FKind::Or:
      return make_or(replace_term_everywhere(f->lhs, from, to),
                     replace_term_everywhere(f->rhs, from, to));
    case FKind::Forall: case FKind::Exists:
      return make_quant(f->kind, f->sym,
                        replace_term_everywhere(f->lhs, from, to));
  }
  throw std::logic_error("unreachable");
}

std::set<std::string> context_free_vars(const FormulaPtr& f, const Position& p) {
  FormulaPtr hole = make_atom(Symbol{"$hole", 0, SymbolKind::Predicate});
  return free_variables(replace_at_unchecked(f, p, hole));
}

// Shared gamma validation; H is the body the conclusion binds.
FormulaPtr finish_gamma(const FormulaPtr& premise, const Position& p, FKind q,
                        const std::string& x, const TermPtr& t,
                        const FormulaPtr& h) {
  int parity = parity_at(premise, p);
  if (!is_gamma(q, parity))
    throw RuleError(RuleErrorCode::NotExistentialoid,
                    "quantifier at this polarity is universaloid");
  if (quantifier_above(premise, p))
    throw RuleError(RuleErrorCode::NotAccessible,
                    "introduction point lies in the scope of a quantifier");
  std::set<std::string> h_binders;
  collect_binders(h, h_binders);
  for (auto& v : free_term_vars(t))
    if (h_binders.count(v))
      throw RuleError(RuleErrorCode::CaptureInH,
                      "free variable '" + v + "' of the witness is bound in H");
  FormulaPtr instantiated;
  try {
    instantiated = substitute(h, Substitution{{x, t}});
  } catch (const CaptureError& e) {
    throw RuleError(RuleErrorCode::CaptureInH, e.what());
  }
  if (!syntactic_equal(instantiated, subformula_at(premise, p)))
    throw RuleError(RuleErrorCode::PremiseMismatch,
                    "premise subformula is not H{x->t}");
  FormulaPtr conclusion = replace_at_unchecked(
      premise, p, make_quant(q, Symbol{x, 0, SymbolKind::Variable}, h));
  if (!is_rectified(conclusion))
    throw RuleError(RuleErrorCode::NotRectified,
                    "conclusion is not rectified; pick a fresh bound variable");
  return conclusion;
}

}  // namespace

FormulaPtr apply_existentialoid_quantification(const FormulaPtr& premise,
                                               const Position& p, FKind q,
                                               const std::string& x,
                                               const TermPtr& t) {
  FormulaPtr sub = sub_at(premise, p);
  FormulaPtr h = replace_term_everywhere(sub, t, make_var(x));
  return finish_gamma(premise, p, q, x, t, h);
}

FormulaPtr apply_universaloid_quantification(const FormulaPtr& premise,
                                             const Position& p, FKind q,
                                             const std::string& y) {
  FormulaPtr h = sub_at(premise, p);
  int parity = parity_at(premise, p);
  if (is_gamma(q, parity))
    throw RuleError(RuleErrorCode::NotUniversaloid,
                    "quantifier at this polarity is existentialoid");
  if (quantifier_above(premise, p))
    throw RuleError(RuleErrorCode::NotAccessible,
                    "introduction point lies in the scope of a quantifier");
  if (context_free_vars(premise, p).count(y))
    throw RuleError(RuleErrorCode::Eigenvariable,
                    "'" + y + "' occurs free in the context");
  FormulaPtr conclusion = replace_at_unchecked(
      premise, p, make_quant(q, Symbol{y, 0, SymbolKind::Variable}, h));
  if (!is_rectified(conclusion))
    throw RuleError(RuleErrorCode::NotRectified,
                    "conclusion is not rectified; pick a fresh bound variable");
  return conclusion;
}

namespace {

// Renames binders of f per map (from -> to), propagating to occurrences.
FormulaPtr rename_binders_loose(const FormulaPtr& f,
                                const std::map<std::string, std::string>& m,
                                std::map<std::string, std::string> env) {
  switch (f->kind) {
    case FKind::Atom: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      for (auto& a : f->args) {
        // env-based variable renaming inside terms
        std::function<TermPtr(const TermPtr&)> go = [&](const TermPtr& t) -> TermPtr {
          if (t->head.kind == SymbolKind::Variable) {
            auto it = env.find(t->head.name);
            return it == env.end() ? t : make_var(it->second);
          }
          std::vector<TermPtr> as;
          as.reserve(t->args.size());
          for (auto& x : t->args) as.push_back(go(x));
          return make_term(t->head, std::move(as));
        };
        args.push_back(go(a));
      }
      return make_atom(f->sym, std::move(args));
    }
    case FKind::Not: return make_not(rename_binders_loose(f->lhs, m, env));
    case FKind::And:
      return make_and(rename_binders_loose(f->lhs, m, env),
                      rename_binders_loose(f->rhs, m, env));
    case FKind::Or:
      return make_or(rename_binders_loose(f->lhs, m, env),
                     rename_binders_loose(f->rhs, m, env));
    case FKind::Forall: case FKind::Exists: {
      std::string name = f->sym.name;
      auto it = m.find(name);
      if (it != m.end()) { env[name] = it->second; name = it->second; }
      else env.erase(f->sym.name);
      return make_quant(f->kind, Symbol{name, 0, SymbolKind::Variable},
                        rename_binders_loose(f->lhs, m, env));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

FormulaPtr apply_simplification(
    const FormulaPtr& premise, const Position& p,
    const std::vector<std::pair<std::string, std::string>>& variant_map,
    bool generalized_gamma) {
  FormulaPtr sub = sub_at(premise, p);
  int parity = parity_at(premise, p);
  FKind expected = parity == 0 ? FKind::Or : FKind::And;
  if (sub->kind != expected)
    throw RuleError(RuleErrorCode::WrongConnective,
                    parity == 0 ? "even polarity requires a disjunction"
                                : "odd polarity requires a conjunction");
  FormulaPtr h = sub->lhs, dup = sub->rhs;
  std::map<std::string, std::string> m(variant_map.begin(), variant_map.end());
  FormulaPtr renamed = rename_binders_loose(dup, m, {});
  if (!syntactic_equal(renamed, h))
    throw RuleError(RuleErrorCode::NotVariant,
                    "H' is not a variant of H under the given renaming");
  if (generalized_gamma) {
    if (h->kind != FKind::Forall && h->kind != FKind::Exists)
      throw RuleError(RuleErrorCode::NotExistentialoid,
                      "generalized gamma-simplification needs H = Q y. C");
    if (!is_gamma(h->kind, parity))
      throw RuleError(RuleErrorCode::NotExistentialoid,
                      "Q y. is not existentialoid here");
  }
  return replace_at_unchecked(premise, p, h);
}

FormulaPtr apply_passage(const FormulaPtr& premise, const Position& p,
                         int index, PassageDirection direction) {
  if (index < 1 || index > 6)
    throw RuleError(RuleErrorCode::BadPayload, "passage index must be 1..6");
  FormulaPtr sub = sub_at(premise, p);
  auto mismatch = [&]() -> RuleError {
    return RuleError(RuleErrorCode::PatternMismatch,
                     "subformula does not match passage pattern " +
                         std::to_string(index));
  };
  auto need_not_free = [&](const Symbol& x, const FormulaPtr& b) {
    if (free_variables(b).count(x.name))
      throw RuleError(RuleErrorCode::FreeInB,
                      "'" + x.name + "' occurs free in B");
  };
  FormulaPtr replacement;
  if (direction == PassageDirection::Prenex) {
    switch (index) {
      case 1: case 2: {
        FKind q = index == 1 ? FKind::Forall : FKind::Exists;
        FKind dual = index == 1 ? FKind::Exists : FKind::Forall;
        if (sub->kind != FKind::Not || sub->lhs->kind != q) throw mismatch();
        replacement = make_quant(dual, sub->lhs->sym, make_not(sub->lhs->lhs));
        break;
      }
      case 3: case 5: {
        FKind q = index == 3 ? FKind::Forall : FKind::Exists;
        if (sub->kind != FKind::Or || sub->lhs->kind != q) throw mismatch();
        need_not_free(sub->lhs->sym, sub->rhs);
        replacement = make_quant(q, sub->lhs->sym,
                                 make_or(sub->lhs->lhs, sub->rhs));
        break;
      }
      case 4: case 6: {
        FKind q = index == 4 ? FKind::Forall : FKind::Exists;
        if (sub->kind != FKind::Or || sub->rhs->kind != q) throw mismatch();
        need_not_free(sub->rhs->sym, sub->lhs);
        replacement = make_quant(q, sub->rhs->sym,
                                 make_or(sub->lhs, sub->rhs->lhs));
        break;
      }
    }
  } else {
    switch (index) {
      case 1: case 2: {
        FKind dual = index == 1 ? FKind::Exists : FKind::Forall;
        FKind q = index == 1 ? FKind::Forall : FKind::Exists;
        if (sub->kind != dual || sub->lhs->kind != FKind::Not) throw mismatch();
        replacement = make_not(make_quant(q, sub->sym, sub->lhs->lhs));
        break;
      }
      case 3: case 5: {
        FKind q = index == 3 ? FKind::Forall : FKind::Exists;
        if (sub->kind != q || sub->lhs->kind != FKind::Or) throw mismatch();
        need_not_free(sub->sym, sub->lhs->rhs);
        replacement = make_or(make_quant(q, sub->sym, sub->lhs->lhs),
                              sub->lhs->rhs);
        break;
      }
      case 4: case 6: {
        FKind q = index == 4 ? FKind::Forall : FKind::Exists;
        if (sub->kind != q || sub->lhs->kind != FKind::Or) throw mismatch();
        need_not_free(sub->sym, sub->lhs->lhs);
        replacement = make_or(sub->lhs->lhs,
                              make_quant(q, sub->sym, sub->lhs->rhs));
        break;
      }
    }
  }
  FormulaPtr conclusion = replace_at_unchecked(premise, p, replacement);
  if (!is_rectified(conclusion))
    throw RuleError(RuleErrorCode::NotRectified, "conclusion is not rectified");
  return conclusion;
}

FormulaPtr apply_shallow_gamma(const FormulaPtr& premise, FKind q,
                               const std::string& x, const TermPtr& t) {
  return apply_existentialoid_quantification(premise, {}, q, x, t);
}

FormulaPtr apply_shallow_delta(const FormulaPtr& premise, FKind q,
                               const std::string& y) {
  return apply_universaloid_quantification(premise, {}, q, y);
}

FormulaPtr apply_rename_bound(
    const FormulaPtr& premise,
    const std::vector<std::pair<std::string, std::string>>& renaming) {
  std::map<std::string, std::string> m(renaming.begin(), renaming.end());
  try {
    return rename_bound(premise, m);
  } catch (const RectifyError& e) {
    throw RuleError(RuleErrorCode::RenameViolation, e.what());
  }
}

// ---------------------------------------------------------------------------
// Checker

namespace {

bool contains_and(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Atom: return false;
    case FKind::And: return true;
    case FKind::Not: case FKind::Forall: case FKind::Exists:
      return contains_and(f->lhs);
    case FKind::Or: return contains_and(f->lhs) || contains_and(f->rhs);
  }
  return false;
}

// Gamma steps: the recorded result only pins down H (which occurrences of the
// witness were abstracted); everything is re-validated from the premise.
FormulaPtr check_gamma_step(const FormulaPtr& premise, const Step& step) {
  const RuleApplication& app = step.app;
  if (!app.witness)
    throw RuleError(RuleErrorCode::BadPayload, "gamma step needs a witness term");
  FormulaPtr at_result;
  try {
    at_result = subformula_at(step.result, app.position);
  } catch (const PositionError&) {
    throw RuleError(RuleErrorCode::BadPosition,
                    "position does not resolve in the result");
  }
  if (at_result->kind != app.quantifier || at_result->sym.name != app.variable)
    throw RuleError(RuleErrorCode::ResultMismatch,
                    "result does not introduce the recorded quantifier");
  return finish_gamma(premise, app.position, app.quantifier, app.variable,
                      app.witness, at_result->lhs);
}

}  // namespace

FormulaPtr check_step(const FormulaPtr& premise, const Step& step,
                      bool historic_strict) {
  const RuleApplication& app = step.app;
  if (historic_strict &&
      (contains_and(premise) || contains_and(step.result)))
    throw RuleError(RuleErrorCode::WrongConnective,
                    "conjunction is not part of the historic calculus");
  switch (app.rule) {
    case RuleKind::ExistentialoidQuantification:
      return check_gamma_step(premise, step);
    case RuleKind::ShallowGammaQuantification:
      if (!app.position.empty())
        throw RuleError(RuleErrorCode::BadPosition,
                        "shallow rule requires the empty context");
      return check_gamma_step(premise, step);
    case RuleKind::UniversaloidQuantification:
      return apply_universaloid_quantification(premise, app.position,
                                               app.quantifier, app.variable);
    case RuleKind::ShallowDeltaQuantification:
      if (!app.position.empty())
        throw RuleError(RuleErrorCode::BadPosition,
                        "shallow rule requires the empty context");
      return apply_universaloid_quantification(premise, {}, app.quantifier,
                                               app.variable);
    case RuleKind::Simplification:
      return apply_simplification(premise, app.position, app.renaming, false);
    case RuleKind::GammaSimplificationGeneralized:
      return apply_simplification(premise, app.position, app.renaming, true);
    case RuleKind::PassageLR:
      return apply_passage(premise, app.position, app.passage_index,
                           PassageDirection::Prenex);
    case RuleKind::PassageRL:
      return apply_passage(premise, app.position, app.passage_index,
                           PassageDirection::Antiprenex);
    case RuleKind::RenameBound:
      return apply_rename_bound(premise, app.renaming);
  }
  throw RuleError(RuleErrorCode::ForeignRule, "unknown rule");
}

Verdict check(const Derivation& d, bool historic_strict) {
  Verdict v;
  if (!d.start || !is_rectified(d.start)) {
    v.step = -1;
    v.reason = RuleErrorCode::NotRectified;
    v.detail = "start formula is not rectified";
    return v;
  }
  FormulaPtr premise = d.start;
  for (size_t i = 0; i < d.steps.size(); i++) {
    FormulaPtr conclusion;
    try {
      conclusion = check_step(premise, d.steps[i], historic_strict);
    } catch (const RuleError& e) {
      v.step = static_cast<int>(i);
      v.reason = e.code;
      v.detail = e.what();
      return v;
    }
    if (!d.steps[i].result || !alpha_equal(conclusion, d.steps[i].result)) {
      v.step = static_cast<int>(i);
      v.reason = RuleErrorCode::ResultMismatch;
      v.detail = "stored result differs from the recomputed conclusion";
      return v;
    }
    premise = d.steps[i].result;
  }
  v.accepted = true;
  return v;
}

// ---------------------------------------------------------------------------
// Prenex normalization

std::optional<std::pair<Position, int>> find_passage_redex(
    const FormulaPtr& f, PassageDirection direction) {
  struct Walker {
    PassageDirection dir;
    const FormulaPtr& root;
    std::optional<std::pair<Position, int>> found;

    bool matches(const FormulaPtr& sub, int index) {
      // structural match only; reuse apply_passage for the full check
      try {
        apply_passage(sub, {}, index, dir);
        return true;
      } catch (const RuleError&) {
        return false;
      }
    }
    void walk(const FormulaPtr& f, Position& path) {
      if (found) return;
      for (int i = 1; i <= 6; i++) {
        if (matches(f, i)) { found = {{path, i}}; return; }
      }
      switch (f->kind) {
        case FKind::Atom: return;
        case FKind::Not: case FKind::Forall: case FKind::Exists:
          path.push_back(0);
          walk(f->lhs, path);
          path.pop_back();
          return;
        case FKind::And: case FKind::Or:
          path.push_back(0);
          walk(f->lhs, path);
          path.back() = 1;
          walk(f->rhs, path);
          path.pop_back();
          return;
      }
    }
  } w{direction, f, std::nullopt};
  Position path;
  w.walk(f, path);
  return w.found;
}

PassageTrace passage_normalize(const FormulaPtr& f, PassageDirection direction) {
  PassageTrace trace;
  trace.result = f;
  constexpr int kMaxSteps = 100000;
  for (int i = 0; i < kMaxSteps; i++) {
    auto redex = find_passage_redex(trace.result, direction);
    if (!redex) return trace;
    auto [pos, index] = *redex;
    FormulaPtr next = apply_passage(trace.result, pos, index, direction);
    Step step;
    step.app.rule = direction == PassageDirection::Prenex ? RuleKind::PassageLR
                                                          : RuleKind::PassageRL;
    step.app.position = pos;
    step.app.passage_index = index;
    step.result = next;
    trace.steps.push_back(std::move(step));
    trace.result = next;
  }
  throw std::runtime_error("passage normalization did not terminate");
}

// ---------------------------------------------------------------------------
// Serialization

std::string rule_name(const RuleApplication& app) {
  switch (app.rule) {
    case RuleKind::ExistentialoidQuantification:
      return "existentialoid-quantification";
    case RuleKind::UniversaloidQuantification:
      return "universaloid-quantification";
    case RuleKind::Simplification: return "simplification";
    case RuleKind::GammaSimplificationGeneralized: return "gamma-simplification";
    case RuleKind::ShallowGammaQuantification:
      return "shallow-gamma-quantification";
    case RuleKind::ShallowDeltaQuantification:
      return "shallow-delta-quantification";
    case RuleKind::PassageLR:
      return "passage-lr-" + std::to_string(app.passage_index);
    case RuleKind::PassageRL:
      return "passage-rl-" + std::to_string(app.passage_index);
    case RuleKind::RenameBound: return "rename-bound";
  }
  return "?";
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

bool is_quant_rule(RuleKind r) {
  return r == RuleKind::ExistentialoidQuantification ||
         r == RuleKind::UniversaloidQuantification ||
         r == RuleKind::ShallowGammaQuantification ||
         r == RuleKind::ShallowDeltaQuantification;
}

bool is_gamma_rule(RuleKind r) {
  return r == RuleKind::ExistentialoidQuantification ||
         r == RuleKind::ShallowGammaQuantification;
}

bool has_map_payload(RuleKind r) {
  return r == RuleKind::Simplification ||
         r == RuleKind::GammaSimplificationGeneralized ||
         r == RuleKind::RenameBound;
}

}  // namespace

std::string write_derivation(const Derivation& d) {
  std::ostringstream out;
  out << "(derivation (start " << quoted(print(d.start)) << "))\n";
  for (const Step& s : d.steps) {
    out << "(step (rule " << rule_name(s.app) << ") (pos";
    for (int i : s.app.position) out << ' ' << i;
    out << ") (payload";
    if (is_quant_rule(s.app.rule)) {
      out << " (quant "
          << (s.app.quantifier == FKind::Forall ? "forall" : "exists") << ")"
          << " (var " << s.app.variable << ")";
      if (is_gamma_rule(s.app.rule))
        out << " (term " << quoted(print(s.app.witness)) << ")";
    } else if (has_map_payload(s.app.rule)) {
      out << " (map";
      for (auto& [from, to] : s.app.renaming)
        out << " (" << from << ' ' << to << ")";
      out << ")";
    }
    out << ") (result " << quoted(print(s.result)) << "))\n";
  }
  return out.str();
}

namespace {

// Minimal s-expression reader.
struct Sexp {
  bool is_atom = false;
  std::string atom;  // unquoted text
  std::vector<Sexp> kids;
};

struct SexpReader {
  const std::string& s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' ||
                            s[i] == '\r'))
      i++;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw std::runtime_error("proof file: " + msg + " near offset " +
                             std::to_string(i));
  }
  Sexp read() {
    skip_ws();
    if (i >= s.size()) fail("unexpected end of input");
    if (s[i] == '(') {
      i++;
      Sexp e;
      while (true) {
        skip_ws();
        if (i >= s.size()) fail("unterminated list");
        if (s[i] == ')') { i++; return e; }
        e.kids.push_back(read());
      }
    }
    if (s[i] == '"') {
      i++;
      Sexp e;
      e.is_atom = true;
      while (i < s.size() && s[i] != '"') {
        if (s[i] == '\\' && i + 1 < s.size()) i++;
        e.atom += s[i++];
      }
      if (i >= s.size()) fail("unterminated string");
      i++;
      return e;
    }
    Sexp e;
    e.is_atom = true;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\n' &&
           s[i] != '\r' && s[i] != '(' && s[i] != ')')
      e.atom += s[i++];
    if (e.atom.empty()) fail("empty atom");
    return e;
  }
  bool at_end() {
    skip_ws();
    return i >= s.size();
  }
};

const Sexp* find_field(const Sexp& e, const std::string& name) {
  for (auto& k : e.kids)
    if (!k.is_atom && !k.kids.empty() && k.kids[0].is_atom &&
        k.kids[0].atom == name)
      return &k;
  return nullptr;
}

[[noreturn]] void bad(const std::string& msg) {
  throw std::runtime_error("proof file: " + msg);
}

RuleApplication parse_rule(const Sexp& step) {
  const Sexp* rule = find_field(step, "rule");
  if (!rule || rule->kids.size() != 2 || !rule->kids[1].is_atom)
    bad("step without rule");
  std::string name = rule->kids[1].atom;
  RuleApplication app;
  if (name == "existentialoid-quantification")
    app.rule = RuleKind::ExistentialoidQuantification;
  else if (name == "universaloid-quantification")
    app.rule = RuleKind::UniversaloidQuantification;
  else if (name == "simplification") app.rule = RuleKind::Simplification;
  else if (name == "gamma-simplification")
    app.rule = RuleKind::GammaSimplificationGeneralized;
  else if (name == "shallow-gamma-quantification")
    app.rule = RuleKind::ShallowGammaQuantification;
  else if (name == "shallow-delta-quantification")
    app.rule = RuleKind::ShallowDeltaQuantification;
  else if (name == "rename-bound") app.rule = RuleKind::RenameBound;
  else if (name.rfind("passage-lr-", 0) == 0) {
    app.rule = RuleKind::PassageLR;
    app.passage_index = std::stoi(name.substr(11));
  } else if (name.rfind("passage-rl-", 0) == 0) {
    app.rule = RuleKind::PassageRL;
    app.passage_index = std::stoi(name.substr(11));
  } else bad("unknown rule '" + name + "'");

  const Sexp* pos = find_field(step, "pos");
  if (!pos) bad("step without pos");
  for (size_t i = 1; i < pos->kids.size(); i++) {
    if (!pos->kids[i].is_atom) bad("bad position");
    app.position.push_back(std::stoi(pos->kids[i].atom));
  }

  const Sexp* payload = find_field(step, "payload");
  if (!payload) bad("step without payload");
  if (is_quant_rule(app.rule)) {
    const Sexp* quant = find_field(*payload, "quant");
    const Sexp* var = find_field(*payload, "var");
    if (!quant || quant->kids.size() != 2 || !var || var->kids.size() != 2)
      bad("quantification payload needs quant and var");
    app.quantifier =
        quant->kids[1].atom == "forall" ? FKind::Forall : FKind::Exists;
    app.variable = var->kids[1].atom;
    if (is_gamma_rule(app.rule)) {
      const Sexp* term = find_field(*payload, "term");
      if (!term || term->kids.size() != 2) bad("gamma payload needs a term");
      app.witness = parse_term(term->kids[1].atom);
    }
  } else if (has_map_payload(app.rule)) {
    const Sexp* m = find_field(*payload, "map");
    if (m) {
      for (size_t i = 1; i < m->kids.size(); i++) {
        const Sexp& pair = m->kids[i];
        if (pair.is_atom || pair.kids.size() != 2) bad("bad map entry");
        app.renaming.emplace_back(pair.kids[0].atom, pair.kids[1].atom);
      }
    }
  }
  return app;
}

}  // namespace

Derivation read_derivation(const std::string& text) {
  SexpReader reader{text};
  Derivation d;
  bool have_header = false;
  while (!reader.at_end()) {
    Sexp record = reader.read();
    if (record.is_atom || record.kids.empty() || !record.kids[0].is_atom)
      bad("expected (derivation ...) or (step ...)");
    const std::string& tag = record.kids[0].atom;
    if (tag == "derivation") {
      if (have_header) bad("duplicate derivation header");
      const Sexp* start = find_field(record, "start");
      if (!start || start->kids.size() != 2 || !start->kids[1].is_atom)
        bad("derivation header needs (start \"...\")");
      d.start = parse(start->kids[1].atom);
      have_header = true;
    } else if (tag == "step") {
      if (!have_header) bad("step before derivation header");
      Step s;
      s.app = parse_rule(record);
      const Sexp* result = find_field(record, "result");
      if (!result || result->kids.size() != 2 || !result->kids[1].is_atom)
        bad("step needs (result \"...\")");
      s.result = parse(result->kids[1].atom);
      d.steps.push_back(std::move(s));
    } else {
      bad("unknown record '" + tag + "'");
    }
  }
  if (!have_header) bad("missing derivation header");
  return d;
}

}  // namespace herbrand
