#pragma once

// Negation-parity bookkeeping: existentialoid (gamma) vs universaloid (delta)
// classification of quantifier occurrences, and accessibility.

#include <vector>

#include "herbrand/syntax.hpp"

namespace herbrand {

struct QuantifierOccurrence {
  Position position;
  FKind quantifier;      // Forall or Exists
  Symbol variable;
  int negation_parity;   // 0 = even, 1 = odd; counts ~ strictly above
  bool gamma;            // existentialoid; delta otherwise
  bool accessible;       // not in the scope of any other quantifier
};

// gamma iff (exists with even parity) or (forall with odd parity).
inline bool is_gamma(FKind q, int parity) {
  return (q == FKind::Exists) == (parity % 2 == 0);
}

// One entry per quantifier occurrence, in pre-order. Requires A rectified.
std::vector<QuantifierOccurrence> classify_quantifiers(const FormulaPtr& a);

// Parity of negation nodes strictly above p. Throws PositionError.
int polarity_at(const FormulaPtr& a, const Position& p);

}  // namespace herbrand
