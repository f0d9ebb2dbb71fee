#pragma once

// Property C of order n, the semi-decision loop, the derivation builder
// (from a tautologous expansion to a linear proof of the original formula),
// and the order bound read off a derivation.

#include <optional>

#include "herbrand/calculus.hpp"
#include "herbrand/skolem.hpp"
#include "herbrand/universe.hpp"

namespace herbrand {

inline constexpr std::size_t kDefaultAtomBudget = std::size_t{1} << 20;

struct PropertyCReport {
  FormulaPtr formula;     // the input, rectified
  int order = 0;
  FormulaPtr skolemized;  // outer Skolemized form
  ChampFini champ;
  FormulaPtr expansion;   // null when order 1 blocks expansion
  bool verdict = false;
  std::size_t atom_count = 0;  // atom instances in the expansion
};

// Order 1 tests the outer Skolemized form directly and is false whenever it
// still contains quantifiers; order n > 1 expands over champ_fini(n, .) and
// tests sentential validity. Throws ResourceLimitError when the expansion
// would exceed atom_budget.
PropertyCReport check_property_c(const FormulaPtr& a, int order,
                                 std::size_t atom_budget = kDefaultAtomBudget);

struct ProveOutcome {
  bool found = false;
  int order = 0;  // witnessing order when found; last order tried otherwise
  std::optional<Derivation> derivation;
  std::vector<PropertyCReport> reports;  // one per order tried, ascending
  bool resource_limited = false;
  std::string limit_detail;
};

// Tests orders 1, 2, ..., max_order in sequence; on the first true verdict
// builds the derivation. A blown atom budget is reported as resource_limited,
// distinct from exhaustion.
ProveOutcome prove(const FormulaPtr& a, int max_order,
                   std::size_t atom_budget = kDefaultAtomBudget);

// Requires check_property_c(a, order).verdict. Starts from the expansion with
// Skolem-headed terms read as pseudo-variables, refolds it by generalized
// quantification and gamma-simplification, and ends (after one bound-variable
// renaming) at a formula syntactically equal to `a`. Every emitted step is
// re-validated through the kernel checker.
Derivation build_derivation(const FormulaPtr& a, int order);

// 1 + sum of witness heights over the gamma-quantification steps. Throws
// RuleError(ForeignRule) on passage or shallow rules, which lie outside the
// bound's statement.
std::size_t lemma4_bound(const Derivation& d);

// Structured text record of a report (s-expression, one field per line).
std::string report_record(const PropertyCReport& r);

}  // namespace herbrand
