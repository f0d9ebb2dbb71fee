#pragma once

// Terms, formulas, substitutions, positions, alpha-equivalence, and the
// concrete text grammar (parser + printer).
//
// All values are immutable after construction; sharing subtrees is safe.
// Every public operation requires and preserves rectifiedness: each bound
// variable is bound by exactly one quantifier and no name occurs both free
// and bound.

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace herbrand {

enum class SymbolKind { Function, Predicate, Variable, Skolem, Bullet };

// Reserved prefix for Skolem symbols; user input may mention them (proof
// files do), but fresh ones are minted only by the skolem module.
inline constexpr const char* kSkolemPrefix = "sk$";
// ASCII spelling of the fresh constant added to a champ fini when the
// signature has no constants at all.
inline constexpr const char* kBulletName = "_dot";

struct Symbol {
  std::string name;
  int arity = 0;
  SymbolKind kind = SymbolKind::Variable;

  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.name == b.name && a.arity == b.arity && a.kind == b.kind;
  }
  friend bool operator<(const Symbol& a, const Symbol& b) {
    if (a.name != b.name) return a.name < b.name;
    if (a.arity != b.arity) return a.arity < b.arity;
    return a.kind < b.kind;
  }
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  Symbol head;            // variable, function, skolem, or bullet
  std::vector<TermPtr> args;  // length == head.arity
};

TermPtr make_term(Symbol head, std::vector<TermPtr> args = {});
TermPtr make_var(const std::string& name);

enum class FKind { Atom, Not, And, Or, Forall, Exists };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FKind kind;
  Symbol sym;                 // Atom: predicate; Forall/Exists: bound variable
  std::vector<TermPtr> args;  // Atom only
  FormulaPtr lhs;             // Not/Forall/Exists: child; And/Or: left
  FormulaPtr rhs;             // And/Or: right
};

FormulaPtr make_atom(Symbol pred, std::vector<TermPtr> args = {});
FormulaPtr make_not(FormulaPtr a);
FormulaPtr make_and(FormulaPtr a, FormulaPtr b);
FormulaPtr make_or(FormulaPtr a, FormulaPtr b);
FormulaPtr make_quant(FKind q, Symbol var, FormulaPtr body);

// Child-index paths: Not has child 0; And/Or children 0,1; quantifier body
// is child 0. Atoms have no children.
using Position = std::vector<int>;

// Parallel substitution, keyed by variable name. Domains are distinct by
// construction of std::map.
using Substitution = std::map<std::string, TermPtr>;

struct SyntaxError : std::runtime_error {
  int line = 0, col = 0;
  SyntaxError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at " + std::to_string(line_) + ":" +
                           std::to_string(col_)),
        line(line_), col(col_) {}
};

struct CaptureError : std::runtime_error {
  std::string quantifier;  // the offending binder
  std::string variable;    // the substituted variable
  CaptureError(const std::string& q, const std::string& v)
      : std::runtime_error("substitution for " + v +
                           " captured by quantifier binding " + q),
        quantifier(q), variable(v) {}
};

struct PositionError : std::runtime_error {
  PositionError() : std::runtime_error("unresolvable position") {}
};

struct RectifyError : std::runtime_error {
  explicit RectifyError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parses the ASCII grammar and returns a rectified formula (binders are
// renamed apart with a counter suffix x#1, x#2, ...).
FormulaPtr parse(const std::string& text);
TermPtr parse_term(const std::string& text);

std::string print(const FormulaPtr& f);
std::string print(const TermPtr& t);

bool syntactic_equal(const TermPtr& a, const TermPtr& b);
bool syntactic_equal(const FormulaPtr& a, const FormulaPtr& b);

// Equality up to renaming of bound variables (locally-nameless comparison).
bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b);

// Applies sigma in parallel to all free occurrences of its domain variables.
// Throws CaptureError if a free variable of a placed term would be captured.
FormulaPtr substitute(const FormulaPtr& a, const Substitution& sigma);
TermPtr substitute(const TermPtr& t, const Substitution& sigma);

FormulaPtr subformula_at(const FormulaPtr& a, const Position& p);
// Replaces the subformula at p and re-checks rectifiedness of the result.
FormulaPtr replace_at(const FormulaPtr& a, const Position& p, const FormulaPtr& c);
// Same but without the rectifiedness re-check (internal stepping stone for
// code that validates the whole result afterwards).
FormulaPtr replace_at_unchecked(const FormulaPtr& a, const Position& p,
                                const FormulaPtr& c);

std::set<std::string> free_variables(const FormulaPtr& a);
std::set<std::string> free_term_vars(const TermPtr& t);

// All symbol names occurring anywhere (binders, variables, functions,
// predicates); used for freshness.
std::set<std::string> all_names(const FormulaPtr& a);

bool is_rectified(const FormulaPtr& a);
bool quantifier_free(const FormulaPtr& a);

// Renames apart so the result is rectified; free names are never touched.
FormulaPtr rectify(const FormulaPtr& a);

// Renames bound variables per the given map (old name -> new name).
// Throws RectifyError if a mapped name is not a binder, or the result would
// not be rectified / not alpha-equal to the input.
FormulaPtr rename_bound(const FormulaPtr& a,
                        const std::map<std::string, std::string>& renaming);

// Picks a name based on `base` that is not in `taken`; inserts it.
std::string fresh_name(const std::string& base, std::set<std::string>& taken);

}  // namespace herbrand
