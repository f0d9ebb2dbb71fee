#pragma once

// Term height, champ fini generation, and the expansion A^T.

#include <vector>

#include "herbrand/syntax.hpp"

namespace herbrand {

// |f(t1..tm)| = 1 + max{0, |t1|, ..., |tm|}; variables and constants have
// height 1.
int height(const TermPtr& t);

struct ChampFini {
  int order = 0;
  // function symbols (incl. Skolem), constants, free variables as constants,
  // possibly the bullet
  std::vector<Symbol> signature;
  // ground terms with height < order, duplicate-free, sorted by
  // (height, lexicographic print)
  std::vector<TermPtr> terms;
};

struct ExpansionError : std::runtime_error {
  explicit ExpansionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ResourceLimitError : std::runtime_error {
  explicit ResourceLimitError(const std::string& msg)
      : std::runtime_error(msg) {}
};

// Signature comes from the symbols of F: functions, constants, free
// variables; the bullet is added exactly when the height-1 layer would
// otherwise be empty. `term_limit`, when positive, caps enumeration.
ChampFini champ_fini(int n, const FormulaPtr& f, std::size_t term_limit = 0);

// Quantifier-free expansion: exists becomes a disjunction over T (left fold,
// in T's order), forall a conjunction; connectives distribute. Bound
// variables of A are renamed apart from T first. Throws ExpansionError when
// T is empty but a quantifier is present ("order too small").
FormulaPtr expand(const FormulaPtr& a, const std::vector<TermPtr>& terms);

// Number of atom instances expand(a, T) would produce, saturating at cap.
std::size_t expansion_atom_count(const FormulaPtr& a, std::size_t t_size,
                                 std::size_t cap);

}  // namespace herbrand
