#pragma once

// Proof objects and the trusted checker for the modus-ponens-free calculus:
// the generalized (deep) rules, the historic shallow rules, and the twelve
// rules of passage. The checker re-validates every step; it never trusts a
// producer-supplied result.

#include <optional>
#include <string>
#include <vector>

#include "herbrand/syntax.hpp"

namespace herbrand {

enum class RuleKind {
  ExistentialoidQuantification,
  UniversaloidQuantification,
  Simplification,
  GammaSimplificationGeneralized,
  ShallowGammaQuantification,
  ShallowDeltaQuantification,
  PassageLR,   // prenex direction, index 1..6
  PassageRL,   // anti-prenex direction, index 1..6
  RenameBound,
};

enum class PassageDirection { Prenex, Antiprenex };

// Closed, machine-readable failure taxonomy.
enum class RuleErrorCode {
  NotExistentialoid,
  NotUniversaloid,
  NotAccessible,
  CaptureInH,
  PremiseMismatch,
  Eigenvariable,
  WrongConnective,
  NotVariant,
  PatternMismatch,
  FreeInB,
  BadPosition,
  ResultMismatch,
  RenameViolation,
  ForeignRule,
  BadPayload,
  NotRectified,
};

std::string to_string(RuleErrorCode code);

struct RuleError : std::runtime_error {
  RuleErrorCode code;
  RuleError(RuleErrorCode c, const std::string& detail)
      : std::runtime_error(to_string(c) + ": " + detail), code(c) {}
};

struct RuleApplication {
  RuleKind rule;
  Position position;
  // payload, shape depends on rule:
  FKind quantifier = FKind::Forall;  // quantification rules
  std::string variable;              // bound variable being introduced
  TermPtr witness;                   // gamma witness term
  int passage_index = 0;             // 1..6
  // Simplification: bound-variable renaming carrying H' onto H.
  // RenameBound: the bound renaming itself.
  std::vector<std::pair<std::string, std::string>> renaming;
};

struct Step {
  RuleApplication app;
  FormulaPtr result;
};

// Linear derivation, recorded in deduction direction: the start formula
// first, the theorem last.
struct Derivation {
  FormulaPtr start;
  std::vector<Step> steps;
};

// --- Rule application (producer side). Each throws RuleError.

// Replaces all occurrences of t in the subformula at p by x and wraps Q x.
FormulaPtr apply_existentialoid_quantification(const FormulaPtr& premise,
                                               const Position& p, FKind q,
                                               const std::string& x,
                                               const TermPtr& t);

FormulaPtr apply_universaloid_quantification(const FormulaPtr& premise,
                                             const Position& p, FKind q,
                                             const std::string& y);

// Premise at p must be H o H' (o = \/ at even polarity, /\ at odd); H' must
// equal H after renaming its bound variables per `variant_map` (from -> to).
// With `generalized_gamma`, additionally H = Q y. C with Q y existentialoid.
FormulaPtr apply_simplification(const FormulaPtr& premise, const Position& p,
                                const std::vector<std::pair<std::string, std::string>>& variant_map,
                                bool generalized_gamma);

FormulaPtr apply_passage(const FormulaPtr& premise, const Position& p,
                         int index, PassageDirection direction);

// Shallow historic rules: the generalized rules restricted to the root.
FormulaPtr apply_shallow_gamma(const FormulaPtr& premise, FKind q,
                               const std::string& x, const TermPtr& t);
FormulaPtr apply_shallow_delta(const FormulaPtr& premise, FKind q,
                               const std::string& y);

FormulaPtr apply_rename_bound(const FormulaPtr& premise,
                              const std::vector<std::pair<std::string, std::string>>& renaming);

// --- Kernel checker.

struct Verdict {
  bool accepted = false;
  int step = -1;                      // failing step index when rejected
  std::optional<RuleErrorCode> reason;
  std::string detail;
};

// Re-validates every step from its recorded premise, position, and payload;
// the stored result must match the recomputed conclusion up to alpha
// equivalence. With `historic_strict`, conjunction is rejected.
Verdict check(const Derivation& d, bool historic_strict = false);

// Re-validates a single step against an explicit premise and returns the
// recomputed conclusion. Gamma steps use the recorded result only as the
// witness for H. Throws RuleError.
FormulaPtr check_step(const FormulaPtr& premise, const Step& step,
                      bool historic_strict = false);

// --- Prenex normalization via rules of passage.

// Finds the leftmost-outermost applicable passage redex, or nullopt.
std::optional<std::pair<Position, int>> find_passage_redex(
    const FormulaPtr& f, PassageDirection direction);

struct PassageTrace {
  FormulaPtr result;
  std::vector<Step> steps;
};

// Repeated leftmost-outermost application until no redex remains.
PassageTrace passage_normalize(const FormulaPtr& f, PassageDirection direction);

// --- Serialization: line-oriented s-expression records.

std::string write_derivation(const Derivation& d);
Derivation read_derivation(const std::string& text);

std::string rule_name(const RuleApplication& app);

}  // namespace herbrand
