#pragma once

// Outer Skolemization: delete every universaloid quantifier and replace its
// variable by a fresh Skolem term over the enclosing gamma variables.

#include <map>
#include <string>

#include "herbrand/syntax.hpp"

namespace herbrand {

struct SkolemResult {
  FormulaPtr formula;
  // original delta-variable name -> generated Skolem symbol
  std::map<std::string, Symbol> symbol_for_var;
};

// Requires A rectified. The result has only gamma quantifier occurrences;
// each deleted delta variable x becomes sk$x(y1,...,ym) with y1..ym the
// variables of the gamma quantifiers properly enclosing the occurrence, in
// outside-in order. Free variables are left unchanged (they never feed the
// argument lists).
SkolemResult outer_skolemize_tracked(const FormulaPtr& a);

FormulaPtr outer_skolemize(const FormulaPtr& a);

}  // namespace herbrand
