#pragma once

// Sentential validity of quantifier-free formulas: atoms (predicate plus
// exact argument terms) are names for propositional variables.

#include <memory>
#include <vector>

#include "herbrand/syntax.hpp"

namespace herbrand {

struct QuantifierPresentError : std::runtime_error {
  QuantifierPresentError()
      : std::runtime_error("formula is not quantifier-free") {}
};

// Bijection between distinct atomic formulas and dense indices. Two atoms
// share an index iff they are syntactically identical.
struct AtomTable {
  std::vector<FormulaPtr> atoms;
  std::map<std::string, int> index;  // print(atom) -> id

  int intern(const FormulaPtr& atom);
  int size() const { return static_cast<int>(atoms.size()); }
};

// Sentential structure over atom indices, same connective shape as the input.
struct Sentential {
  FKind kind;  // Atom, Not, And, Or
  int atom = -1;
  std::shared_ptr<const Sentential> lhs, rhs;
};
using SententialPtr = std::shared_ptr<const Sentential>;

std::pair<SententialPtr, AtomTable> abstract_atoms(const FormulaPtr& a);

// True iff every assignment of truth values to atoms satisfies A. DPLL-style
// search for a falsifying assignment over the NNF of the negation.
bool is_tautology(const FormulaPtr& a);

}  // namespace herbrand
