#pragma once

// Deterministic random formula generators for property tests.

#include <random>
#include <string>
#include <vector>

#include "herbrand/syntax.hpp"

namespace gen {

using herbrand::FKind;
using herbrand::FormulaPtr;
using herbrand::Symbol;
using herbrand::SymbolKind;
using herbrand::TermPtr;

// Quantifier-free formula over nullary predicates P0..P{atom_pool-1}.
inline FormulaPtr random_qf(std::mt19937& rng, int atom_pool, int depth) {
  std::uniform_int_distribution<int> pick_atom(0, atom_pool - 1);
  std::uniform_int_distribution<int> pick_node(0, 3);
  if (depth <= 0 || pick_node(rng) == 0) {
    std::string name = "P" + std::to_string(pick_atom(rng));
    return herbrand::make_atom(Symbol{name, 0, SymbolKind::Predicate});
  }
  switch (pick_node(rng)) {
    case 1: return herbrand::make_not(random_qf(rng, atom_pool, depth - 1));
    case 2:
      return herbrand::make_and(random_qf(rng, atom_pool, depth - 1),
                                random_qf(rng, atom_pool, depth - 1));
    default:
      return herbrand::make_or(random_qf(rng, atom_pool, depth - 1),
                               random_qf(rng, atom_pool, depth - 1));
  }
}

// Rectified quantified formula in the {~, \/, forall, exists} fragment (the
// fragment the rules of passage normalize). Binders are v1, v2, ...; atoms
// use the bound variables in scope, or the constant c.
struct QuantGen {
  std::mt19937& rng;
  int next_var = 1;

  TermPtr leaf_term(const std::vector<std::string>& scope) {
    if (!scope.empty()) {
      std::uniform_int_distribution<size_t> pick(0, scope.size());
      size_t i = pick(rng);
      if (i < scope.size()) return herbrand::make_var(scope[i]);
    }
    return herbrand::make_var("c");
  }

  FormulaPtr atom(const std::vector<std::string>& scope) {
    std::uniform_int_distribution<int> arity(0, 2);
    int k = arity(rng);
    std::vector<TermPtr> args;
    for (int i = 0; i < k; i++) args.push_back(leaf_term(scope));
    return herbrand::make_atom(
        Symbol{"R" + std::to_string(k), k, SymbolKind::Predicate},
        std::move(args));
  }

  FormulaPtr build(int depth, std::vector<std::string>& scope) {
    std::uniform_int_distribution<int> pick(0, 4);
    int n = pick(rng);
    if (depth <= 0 || n == 0) return atom(scope);
    switch (n) {
      case 1: return herbrand::make_not(build(depth - 1, scope));
      case 2:
        return herbrand::make_or(build(depth - 1, scope),
                                 build(depth - 1, scope));
      default: {
        std::string v = "v" + std::to_string(next_var++);
        FKind q = n == 3 ? FKind::Forall : FKind::Exists;
        scope.push_back(v);
        FormulaPtr body = build(depth - 1, scope);
        scope.pop_back();
        return herbrand::make_quant(q, Symbol{v, 0, SymbolKind::Variable},
                                    body);
      }
    }
  }
};

inline FormulaPtr random_quantified(std::mt19937& rng, int depth) {
  QuantGen g{rng};
  std::vector<std::string> scope;
  return g.build(depth, scope);
}

}  // namespace gen
