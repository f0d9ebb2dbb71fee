#include "herbrand/skolem.hpp"

#include "herbrand/polarity.hpp"

namespace herbrand {

namespace {

void collect_function_names_term(const TermPtr& t, std::set<std::string>& out) {
  if (t->head.kind != SymbolKind::Variable) out.insert(t->head.name);
  for (auto& a : t->args) collect_function_names_term(a, out);
}

void collect_function_names(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case FKind::Atom:
      for (auto& a : f->args) collect_function_names_term(a, out);
      break;
    case FKind::Not: collect_function_names(f->lhs, out); break;
    case FKind::And: case FKind::Or:
      collect_function_names(f->lhs, out);
      collect_function_names(f->rhs, out);
      break;
    case FKind::Forall: case FKind::Exists:
      collect_function_names(f->lhs, out);
      break;
  }
}

struct Skolemizer {
  std::set<std::string> taken;  // function/skolem names already in use
  SkolemResult result;

  Symbol fresh_skolem(const std::string& var, int arity) {
    std::string base = std::string(kSkolemPrefix) + var;
    std::string name = base;
    for (int k = 1; taken.count(name); k++)
      name = base + "$" + std::to_string(k);
    taken.insert(name);
    return Symbol{name, arity, SymbolKind::Skolem};
  }

  FormulaPtr walk(const FormulaPtr& f, int parity,
                  const std::vector<Symbol>& gamma_vars, Substitution& sigma) {
    switch (f->kind) {
      case FKind::Atom: {
        std::vector<TermPtr> args;
        args.reserve(f->args.size());
        for (auto& a : f->args) args.push_back(substitute(a, sigma));
        return make_atom(f->sym, std::move(args));
      }
      case FKind::Not:
        return make_not(walk(f->lhs, parity + 1, gamma_vars, sigma));
      case FKind::And:
        return make_and(walk(f->lhs, parity, gamma_vars, sigma),
                        walk(f->rhs, parity, gamma_vars, sigma));
      case FKind::Or:
        return make_or(walk(f->lhs, parity, gamma_vars, sigma),
                       walk(f->rhs, parity, gamma_vars, sigma));
      case FKind::Forall: case FKind::Exists: {
        if (is_gamma(f->kind, parity)) {
          auto inner = gamma_vars;
          inner.push_back(f->sym);
          return make_quant(f->kind, f->sym, walk(f->lhs, parity, inner, sigma));
        }
        // delta: drop the quantifier, bind the variable to a Skolem term over
        // the enclosing gamma variables, outside-in
        Symbol sk = fresh_skolem(f->sym.name, static_cast<int>(gamma_vars.size()));
        result.symbol_for_var[f->sym.name] = sk;
        std::vector<TermPtr> args;
        args.reserve(gamma_vars.size());
        for (auto& g : gamma_vars) args.push_back(make_term(g));
        sigma[f->sym.name] = make_term(sk, std::move(args));
        FormulaPtr body = walk(f->lhs, parity, gamma_vars, sigma);
        sigma.erase(f->sym.name);
        return body;
      }
    }
    throw std::logic_error("unreachable");
  }
};

}  // namespace

SkolemResult outer_skolemize_tracked(const FormulaPtr& a) {
  Skolemizer sk;
  collect_function_names(a, sk.taken);
  Substitution sigma;
  sk.result.formula = sk.walk(a, 0, {}, sigma);
  return std::move(sk.result);
}

FormulaPtr outer_skolemize(const FormulaPtr& a) {
  return outer_skolemize_tracked(a).formula;
}

}  // namespace herbrand
