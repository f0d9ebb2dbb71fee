#pragma once

// Independent test oracles, deliberately written against the public syntax
// API only: an exhaustive truth-table tautology check and a straightforward
// recursive expander. Both avoid the engine's sentential / universe code
// paths so they can arbitrate disagreements.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "herbrand/syntax.hpp"

namespace oracle {

using herbrand::FKind;
using herbrand::FormulaPtr;
using herbrand::TermPtr;

inline void collect_atoms(const FormulaPtr& f, std::map<std::string, int>& idx) {
  switch (f->kind) {
    case FKind::Atom: {
      std::string key = herbrand::print(f);
      if (!idx.count(key)) {
        int next = static_cast<int>(idx.size());
        idx.emplace(std::move(key), next);
      }
      return;
    }
    case FKind::Not: collect_atoms(f->lhs, idx); return;
    case FKind::And: case FKind::Or:
      collect_atoms(f->lhs, idx);
      collect_atoms(f->rhs, idx);
      return;
    default:
      throw std::runtime_error("oracle: formula is not quantifier-free");
  }
}

inline bool eval(const FormulaPtr& f, const std::map<std::string, int>& idx,
                 unsigned long mask) {
  switch (f->kind) {
    case FKind::Atom: return (mask >> idx.at(herbrand::print(f))) & 1u;
    case FKind::Not: return !eval(f->lhs, idx, mask);
    case FKind::And: return eval(f->lhs, idx, mask) && eval(f->rhs, idx, mask);
    case FKind::Or: return eval(f->lhs, idx, mask) || eval(f->rhs, idx, mask);
    default: throw std::runtime_error("oracle: formula is not quantifier-free");
  }
}

// Exhaustive truth-table check; practical up to ~22 distinct atoms.
inline bool tt_tautology(const FormulaPtr& f) {
  std::map<std::string, int> idx;
  collect_atoms(f, idx);
  if (idx.size() > 22)
    throw std::runtime_error("oracle: too many atoms for a truth table");
  unsigned long limit = 1ul << idx.size();
  for (unsigned long m = 0; m < limit; m++)
    if (!eval(f, idx, m)) return false;
  return true;
}

// --- naive expansion ---

inline TermPtr subst_term(const TermPtr& t, const std::string& x,
                          const TermPtr& v) {
  if (t->head.kind == herbrand::SymbolKind::Variable && t->head.name == x)
    return v;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (auto& a : t->args) args.push_back(subst_term(a, x, v));
  return herbrand::make_term(t->head, std::move(args));
}

// Substitution on a quantifier-free formula (no capture possible).
inline FormulaPtr subst_qf(const FormulaPtr& f, const std::string& x,
                           const TermPtr& v) {
  switch (f->kind) {
    case FKind::Atom: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      for (auto& a : f->args) args.push_back(subst_term(a, x, v));
      return herbrand::make_atom(f->sym, std::move(args));
    }
    case FKind::Not: return herbrand::make_not(subst_qf(f->lhs, x, v));
    case FKind::And:
      return herbrand::make_and(subst_qf(f->lhs, x, v), subst_qf(f->rhs, x, v));
    case FKind::Or:
      return herbrand::make_or(subst_qf(f->lhs, x, v), subst_qf(f->rhs, x, v));
    default: throw std::runtime_error("oracle: unexpected quantifier");
  }
}

// Innermost-first expansion: exists -> left-fold disjunction, forall ->
// left-fold conjunction, in the order of `terms`.
inline FormulaPtr naive_expand(const FormulaPtr& f,
                               const std::vector<TermPtr>& terms) {
  switch (f->kind) {
    case FKind::Atom: return f;
    case FKind::Not: return herbrand::make_not(naive_expand(f->lhs, terms));
    case FKind::And:
      return herbrand::make_and(naive_expand(f->lhs, terms),
                                naive_expand(f->rhs, terms));
    case FKind::Or:
      return herbrand::make_or(naive_expand(f->lhs, terms),
                               naive_expand(f->rhs, terms));
    case FKind::Forall: case FKind::Exists: break;
  }
  if (terms.empty())
    throw std::runtime_error("oracle: cannot expand over an empty term set");
  FormulaPtr body = naive_expand(f->lhs, terms);
  FormulaPtr acc;
  for (auto& t : terms) {
    FormulaPtr inst = subst_qf(body, f->sym.name, t);
    if (!acc) acc = inst;
    else acc = f->kind == FKind::Exists ? herbrand::make_or(acc, inst)
                                        : herbrand::make_and(acc, inst);
  }
  return acc;
}

}  // namespace oracle
