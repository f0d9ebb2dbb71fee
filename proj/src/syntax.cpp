#include "herbrand/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace herbrand {

namespace {

bool starts_with(const std::string& s, const char* pre) {
  return s.rfind(pre, 0) == 0;
}

SymbolKind term_head_kind(const std::string& name, int arity) {
  if (name == kBulletName) return SymbolKind::Bullet;
  if (starts_with(name, kSkolemPrefix)) return SymbolKind::Skolem;
  return arity == 0 ? SymbolKind::Variable : SymbolKind::Function;
}

}  // namespace

TermPtr make_term(Symbol head, std::vector<TermPtr> args) {
  assert(static_cast<int>(args.size()) == head.arity);
  auto t = std::make_shared<Term>();
  t->head = std::move(head);
  t->args = std::move(args);
  return t;
}

TermPtr make_var(const std::string& name) {
  return make_term(Symbol{name, 0, term_head_kind(name, 0)});
}

FormulaPtr make_atom(Symbol pred, std::vector<TermPtr> args) {
  assert(static_cast<int>(args.size()) == pred.arity);
  auto f = std::make_shared<Formula>();
  f->kind = FKind::Atom;
  f->sym = std::move(pred);
  f->args = std::move(args);
  return f;
}

FormulaPtr make_not(FormulaPtr a) {
  auto f = std::make_shared<Formula>();
  f->kind = FKind::Not;
  f->lhs = std::move(a);
  return f;
}

FormulaPtr make_and(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = FKind::And;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}

FormulaPtr make_or(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = FKind::Or;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}

FormulaPtr make_quant(FKind q, Symbol var, FormulaPtr body) {
  assert(q == FKind::Forall || q == FKind::Exists);
  assert(var.arity == 0);
  auto f = std::make_shared<Formula>();
  f->kind = q;
  f->sym = std::move(var);
  f->lhs = std::move(body);
  return f;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  Ident, LParen, RParen, Comma, Dot, Tilde, AndOp, OrOp, Arrow, Lt,
  Forall, Exists, End
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
// '#' and '$' continue an identifier when glued to it; a standalone '#'
// starts a comment instead.
bool ident_cont(char c) {
  return ident_start(c) || (c >= '0' && c <= '9') || c == '#' || c == '$' ||
         c == '\'';
}

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t k) {
    for (size_t j = 0; j < k; j++) {
      if (i + j < s.size() && s[i + j] == '\n') { line++; col = 1; } else col++;
    }
    i += k;
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { advance(1); continue; }
    if (c == '#') {  // comment to end of line
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    int tl = line, tc = col;
    // UTF-8 bullet
    if ((unsigned char)c == 0xE2 && i + 2 < s.size() &&
        (unsigned char)s[i + 1] == 0x80 && (unsigned char)s[i + 2] == 0xA2) {
      out.push_back({Tok::Ident, kBulletName, tl, tc});
      advance(3);
      continue;
    }
    if (ident_start(c)) {
      size_t j = i;
      while (j < s.size() && ident_cont(s[j])) j++;
      std::string word = s.substr(i, j - i);
      advance(j - i);
      if (word == "forall") out.push_back({Tok::Forall, word, tl, tc});
      else if (word == "exists") out.push_back({Tok::Exists, word, tl, tc});
      else out.push_back({Tok::Ident, word, tl, tc});
      continue;
    }
    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", tl, tc}); advance(1); break;
      case ')': out.push_back({Tok::RParen, ")", tl, tc}); advance(1); break;
      case ',': out.push_back({Tok::Comma, ",", tl, tc}); advance(1); break;
      case '.': out.push_back({Tok::Dot, ".", tl, tc}); advance(1); break;
      case '~': out.push_back({Tok::Tilde, "~", tl, tc}); advance(1); break;
      case '<': out.push_back({Tok::Lt, "<", tl, tc}); advance(1); break;
      case '/':
        if (i + 1 < s.size() && s[i + 1] == '\\') {
          out.push_back({Tok::AndOp, "/\\", tl, tc}); advance(2);
        } else throw SyntaxError("unexpected '/'", tl, tc);
        break;
      case '\\':
        if (i + 1 < s.size() && s[i + 1] == '/') {
          out.push_back({Tok::OrOp, "\\/", tl, tc}); advance(2);
        } else throw SyntaxError("unexpected '\\'", tl, tc);
        break;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          out.push_back({Tok::Arrow, "->", tl, tc}); advance(2);
        } else throw SyntaxError("unexpected '-'", tl, tc);
        break;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", tl, tc);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Parser
//
//   formula := or ('->' formula)?          (-> is sugar for ~A \/ B)
//   or      := and ('\/' and)*
//   and     := unary ('/\' unary)*
//   unary   := '~' unary | ('forall'|'exists') IDENT '.' unary | primary
//   primary := '(' formula ')' | atom
//   atom    := term ('<' term)?            (infix '<' is sugar for lt/2)
//   term    := IDENT ('(' term (',' term)* ')')?

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;
  // arity consistency, tracked separately for predicate and function roles
  std::map<std::string, int> pred_arity;
  std::map<std::string, int> fun_arity;

  const Token& peek() const { return toks[pos]; }
  Token take() { return toks[pos++]; }
  bool at(Tok k) const { return toks[pos].kind == k; }
  Token expect(Tok k, const char* what) {
    if (!at(k)) {
      throw SyntaxError(std::string("expected ") + what + ", got '" +
                        peek().text + "'", peek().line, peek().col);
    }
    return take();
  }

  void check_arity(std::map<std::string, int>& table, const std::string& name,
                   int arity, const Token& tok, const char* role) {
    auto it = table.find(name);
    if (it == table.end()) { table[name] = arity; return; }
    if (it->second != arity) {
      throw SyntaxError("arity mismatch for " + std::string(role) + " '" + name +
                        "': earlier use had arity " + std::to_string(it->second) +
                        ", now " + std::to_string(arity), tok.line, tok.col);
    }
  }

  TermPtr parse_term() {
    Token id = expect(Tok::Ident, "identifier");
    std::vector<TermPtr> args;
    if (at(Tok::LParen)) {
      take();
      args.push_back(parse_term());
      while (at(Tok::Comma)) { take(); args.push_back(parse_term()); }
      expect(Tok::RParen, "')'");
    }
    int arity = static_cast<int>(args.size());
    if (id.text == kBulletName && arity != 0)
      throw SyntaxError("bullet takes no arguments", id.line, id.col);
    if (arity > 0 || starts_with(id.text, kSkolemPrefix) ||
        id.text == kBulletName)
      check_arity(fun_arity, id.text, arity, id, "function");
    return make_term(Symbol{id.text, arity, term_head_kind(id.text, arity)},
                     std::move(args));
  }

  FormulaPtr parse_atom() {
    TermPtr t = parse_term();
    if (at(Tok::Lt)) {
      take();
      TermPtr u = parse_term();
      check_arity(pred_arity, "lt", 2, peek(), "predicate");
      return make_atom(Symbol{"lt", 2, SymbolKind::Predicate}, {t, u});
    }
    // reinterpret the term's head as a predicate
    Token here = peek();
    if (t->head.kind == SymbolKind::Bullet ||
        t->head.kind == SymbolKind::Skolem)
      throw SyntaxError("'" + t->head.name + "' cannot be used as a predicate",
                        here.line, here.col);
    check_arity(pred_arity, t->head.name, t->head.arity, here, "predicate");
    if (fun_arity.count(t->head.name) && t->head.arity == 0) {
      // a lone identifier previously used as a function: reject ambiguity
      throw SyntaxError("'" + t->head.name +
                        "' used both as function and as nullary predicate",
                        here.line, here.col);
    }
    return make_atom(Symbol{t->head.name, t->head.arity, SymbolKind::Predicate},
                     t->args);
  }

  FormulaPtr parse_primary() {
    if (at(Tok::LParen)) {
      take();
      FormulaPtr f = parse_formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    return parse_atom();
  }

  FormulaPtr parse_unary() {
    if (at(Tok::Tilde)) { take(); return make_not(parse_unary()); }
    if (at(Tok::Forall) || at(Tok::Exists)) {
      FKind q = at(Tok::Forall) ? FKind::Forall : FKind::Exists;
      take();
      Token v = expect(Tok::Ident, "bound variable");
      expect(Tok::Dot, "'.'");
      return make_quant(q, Symbol{v.text, 0, SymbolKind::Variable},
                        parse_unary());
    }
    return parse_primary();
  }

  FormulaPtr parse_and() {
    FormulaPtr f = parse_unary();
    while (at(Tok::AndOp)) { take(); f = make_and(f, parse_unary()); }
    return f;
  }

  FormulaPtr parse_or() {
    FormulaPtr f = parse_and();
    while (at(Tok::OrOp)) { take(); f = make_or(f, parse_and()); }
    return f;
  }

  FormulaPtr parse_formula() {
    FormulaPtr f = parse_or();
    if (at(Tok::Arrow)) {  // right-assoc; A -> B is ~A \/ B
      take();
      return make_or(make_not(f), parse_formula());
    }
    return f;
  }
};

// Occurrence resolution: in the raw tree every nullary leaf is a Variable.
// Nothing further to do; scoping is by name, rectification sorts out clashes.

void collect_names_term(const TermPtr& t, std::set<std::string>& out) {
  out.insert(t->head.name);
  for (auto& a : t->args) collect_names_term(a, out);
}

void collect_names(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case FKind::Atom:
      out.insert(f->sym.name);
      for (auto& a : f->args) collect_names_term(a, out);
      break;
    case FKind::Not: collect_names(f->lhs, out); break;
    case FKind::And: case FKind::Or:
      collect_names(f->lhs, out); collect_names(f->rhs, out); break;
    case FKind::Forall: case FKind::Exists:
      out.insert(f->sym.name);
      collect_names(f->lhs, out);
      break;
  }
}

TermPtr rename_in_term(const TermPtr& t,
                       const std::map<std::string, std::string>& env) {
  if (t->head.kind == SymbolKind::Variable) {
    auto it = env.find(t->head.name);
    if (it != env.end()) return make_var(it->second);
    return t;
  }
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  bool changed = false;
  for (auto& a : t->args) {
    args.push_back(rename_in_term(a, env));
    if (args.back() != a) changed = true;
  }
  return changed ? make_term(t->head, std::move(args)) : t;
}

FormulaPtr rectify_walk(const FormulaPtr& f, std::map<std::string, std::string> env,
                        std::set<std::string>& taken) {
  switch (f->kind) {
    case FKind::Atom: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      for (auto& a : f->args) args.push_back(rename_in_term(a, env));
      return make_atom(f->sym, std::move(args));
    }
    case FKind::Not: return make_not(rectify_walk(f->lhs, env, taken));
    case FKind::And:
      return make_and(rectify_walk(f->lhs, env, taken),
                      rectify_walk(f->rhs, env, taken));
    case FKind::Or:
      return make_or(rectify_walk(f->lhs, env, taken),
                     rectify_walk(f->rhs, env, taken));
    case FKind::Forall: case FKind::Exists: {
      std::string name = fresh_name(f->sym.name, taken);
      env[f->sym.name] = name;
      return make_quant(f->kind, Symbol{name, 0, SymbolKind::Variable},
                        rectify_walk(f->lhs, env, taken));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::string fresh_name(const std::string& base, std::set<std::string>& taken) {
  if (!taken.count(base)) { taken.insert(base); return base; }
  // strip an existing #k suffix so repeated freshening stays readable
  std::string stem = base;
  auto hash = stem.rfind('#');
  if (hash != std::string::npos &&
      stem.find_first_not_of("0123456789", hash + 1) == std::string::npos)
    stem = stem.substr(0, hash);
  for (int k = 1;; k++) {
    std::string cand = stem + "#" + std::to_string(k);
    if (!taken.count(cand)) { taken.insert(cand); return cand; }
  }
}

FormulaPtr rectify(const FormulaPtr& a) {
  // Seed the taken set with every name in the formula, then un-claim binder
  // names that are unambiguous (bound exactly once, never free) so they keep
  // their spelling. Everything else gets a counter suffix via fresh_name.
  std::set<std::string> taken;
  collect_names(a, taken);
  std::set<std::string> free = free_variables(a);
  struct Counter {
    std::map<std::string, int> binder_count;
    void walk(const FormulaPtr& f) {
      switch (f->kind) {
        case FKind::Atom: break;
        case FKind::Not: walk(f->lhs); break;
        case FKind::And: case FKind::Or: walk(f->lhs); walk(f->rhs); break;
        case FKind::Forall: case FKind::Exists:
          binder_count[f->sym.name]++;
          walk(f->lhs);
          break;
      }
    }
  } counter;
  counter.walk(a);
  for (auto& [name, cnt] : counter.binder_count)
    if (cnt == 1 && !free.count(name)) taken.erase(name);
  return rectify_walk(a, {}, taken);
}

FormulaPtr parse(const std::string& text) {
  Parser p{lex(text), {}, {}, {}};
  FormulaPtr raw = p.parse_formula();
  if (!p.at(Tok::End))
    throw SyntaxError("trailing input '" + p.peek().text + "'",
                      p.peek().line, p.peek().col);
  return rectify(raw);
}

TermPtr parse_term(const std::string& text) {
  Parser p{lex(text), {}, {}, {}};
  TermPtr t = p.parse_term();
  if (!p.at(Tok::End))
    throw SyntaxError("trailing input '" + p.peek().text + "'",
                      p.peek().line, p.peek().col);
  return t;
}

// ---------------------------------------------------------------------------
// Printer

namespace {

void print_term(const TermPtr& t, std::string& out) {
  out += t->head.name;
  if (!t->args.empty()) {
    out += '(';
    for (size_t i = 0; i < t->args.size(); i++) {
      if (i) out += ", ";
      print_term(t->args[i], out);
    }
    out += ')';
  }
}

void print_formula(const FormulaPtr& f, std::string& out, bool top) {
  switch (f->kind) {
    case FKind::Atom:
      if (f->sym.name == "lt" && f->sym.arity == 2) {
        out += '(';
        print_term(f->args[0], out);
        out += " < ";
        print_term(f->args[1], out);
        out += ')';
      } else {
        out += f->sym.name;
        if (!f->args.empty()) {
          out += '(';
          for (size_t i = 0; i < f->args.size(); i++) {
            if (i) out += ", ";
            print_term(f->args[i], out);
          }
          out += ')';
        }
      }
      break;
    case FKind::Not:
      out += '~';
      print_formula(f->lhs, out, false);
      break;
    case FKind::And: case FKind::Or:
      if (!top) out += '(';
      print_formula(f->lhs, out, false);
      out += f->kind == FKind::And ? " /\\ " : " \\/ ";
      print_formula(f->rhs, out, false);
      if (!top) out += ')';
      break;
    case FKind::Forall: case FKind::Exists:
      out += f->kind == FKind::Forall ? "forall " : "exists ";
      out += f->sym.name;
      out += ". ";
      print_formula(f->lhs, out, false);
      break;
  }
}

}  // namespace

std::string print(const TermPtr& t) {
  std::string out;
  print_term(t, out);
  return out;
}

std::string print(const FormulaPtr& f) {
  std::string out;
  print_formula(f, out, true);
  return out;
}

// ---------------------------------------------------------------------------
// Structural operations

bool syntactic_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!(a->head == b->head)) return false;
  for (size_t i = 0; i < a->args.size(); i++)
    if (!syntactic_equal(a->args[i], b->args[i])) return false;
  return true;
}

bool syntactic_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FKind::Atom:
      if (!(a->sym == b->sym)) return false;
      for (size_t i = 0; i < a->args.size(); i++)
        if (!syntactic_equal(a->args[i], b->args[i])) return false;
      return true;
    case FKind::Not: return syntactic_equal(a->lhs, b->lhs);
    case FKind::And: case FKind::Or:
      return syntactic_equal(a->lhs, b->lhs) && syntactic_equal(a->rhs, b->rhs);
    case FKind::Forall: case FKind::Exists:
      return a->sym == b->sym && syntactic_equal(a->lhs, b->lhs);
  }
  return false;
}

namespace {

bool alpha_term(const TermPtr& a, const TermPtr& b,
                const std::map<std::string, int>& la,
                const std::map<std::string, int>& lb) {
  if (a->head.kind == SymbolKind::Variable &&
      b->head.kind == SymbolKind::Variable) {
    auto ia = la.find(a->head.name);
    auto ib = lb.find(b->head.name);
    if ((ia == la.end()) != (ib == lb.end())) return false;
    if (ia != la.end()) return ia->second == ib->second;
    return a->head.name == b->head.name;  // both free
  }
  if (!(a->head == b->head)) return false;
  for (size_t i = 0; i < a->args.size(); i++)
    if (!alpha_term(a->args[i], b->args[i], la, lb)) return false;
  return true;
}

bool alpha_walk(const FormulaPtr& a, const FormulaPtr& b,
                std::map<std::string, int> la, std::map<std::string, int> lb,
                int depth) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FKind::Atom:
      if (a->sym.name != b->sym.name || a->sym.arity != b->sym.arity)
        return false;
      for (size_t i = 0; i < a->args.size(); i++)
        if (!alpha_term(a->args[i], b->args[i], la, lb)) return false;
      return true;
    case FKind::Not: return alpha_walk(a->lhs, b->lhs, la, lb, depth);
    case FKind::And: case FKind::Or:
      return alpha_walk(a->lhs, b->lhs, la, lb, depth) &&
             alpha_walk(a->rhs, b->rhs, la, lb, depth);
    case FKind::Forall: case FKind::Exists:
      la[a->sym.name] = depth;
      lb[b->sym.name] = depth;
      return alpha_walk(a->lhs, b->lhs, std::move(la), std::move(lb), depth + 1);
  }
  return false;
}

}  // namespace

bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b) {
  return alpha_walk(a, b, {}, {}, 0);
}

std::set<std::string> free_term_vars(const TermPtr& t) {
  std::set<std::string> out;
  std::vector<const Term*> stack{t.get()};
  while (!stack.empty()) {
    const Term* cur = stack.back();
    stack.pop_back();
    if (cur->head.kind == SymbolKind::Variable) out.insert(cur->head.name);
    for (auto& a : cur->args) stack.push_back(a.get());
  }
  return out;
}

namespace {

void free_vars_walk(const FormulaPtr& f, std::set<std::string>& bound,
                    std::set<std::string>& out) {
  switch (f->kind) {
    case FKind::Atom:
      for (auto& a : f->args)
        for (auto& v : free_term_vars(a))
          if (!bound.count(v)) out.insert(v);
      break;
    case FKind::Not: free_vars_walk(f->lhs, bound, out); break;
    case FKind::And: case FKind::Or:
      free_vars_walk(f->lhs, bound, out);
      free_vars_walk(f->rhs, bound, out);
      break;
    case FKind::Forall: case FKind::Exists: {
      bool added = bound.insert(f->sym.name).second;
      free_vars_walk(f->lhs, bound, out);
      if (added) bound.erase(f->sym.name);
      break;
    }
  }
}

}  // namespace

std::set<std::string> free_variables(const FormulaPtr& a) {
  std::set<std::string> bound, out;
  free_vars_walk(a, bound, out);
  return out;
}

std::set<std::string> all_names(const FormulaPtr& a) {
  std::set<std::string> out;
  collect_names(a, out);
  return out;
}

namespace {

TermPtr subst_term(const TermPtr& t, const Substitution& sigma,
                   const std::vector<std::string>& binders) {
  if (t->head.kind == SymbolKind::Variable) {
    auto it = sigma.find(t->head.name);
    if (it == sigma.end()) return t;
    // capture check: no binder on the path may bind a free var of the image
    auto fv = free_term_vars(it->second);
    for (auto& b : binders)
      if (fv.count(b)) throw CaptureError(b, t->head.name);
    return it->second;
  }
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  bool changed = false;
  for (auto& a : t->args) {
    args.push_back(subst_term(a, sigma, binders));
    if (args.back() != a) changed = true;
  }
  return changed ? make_term(t->head, std::move(args)) : t;
}

FormulaPtr subst_walk(const FormulaPtr& f, Substitution sigma,
                      std::vector<std::string>& binders) {
  switch (f->kind) {
    case FKind::Atom: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      bool changed = false;
      for (auto& a : f->args) {
        args.push_back(subst_term(a, sigma, binders));
        if (args.back() != a) changed = true;
      }
      return changed ? make_atom(f->sym, std::move(args)) : f;
    }
    case FKind::Not: {
      auto c = subst_walk(f->lhs, sigma, binders);
      return c == f->lhs ? f : make_not(c);
    }
    case FKind::And: case FKind::Or: {
      auto l = subst_walk(f->lhs, sigma, binders);
      auto r = subst_walk(f->rhs, sigma, binders);
      if (l == f->lhs && r == f->rhs) return f;
      return f->kind == FKind::And ? make_and(l, r) : make_or(l, r);
    }
    case FKind::Forall: case FKind::Exists: {
      sigma.erase(f->sym.name);  // binder shadows
      if (sigma.empty()) return f;
      binders.push_back(f->sym.name);
      auto c = subst_walk(f->lhs, sigma, binders);
      binders.pop_back();
      return c == f->lhs ? f : make_quant(f->kind, f->sym, c);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

TermPtr substitute(const TermPtr& t, const Substitution& sigma) {
  std::vector<std::string> binders;
  return subst_term(t, sigma, binders);
}

FormulaPtr substitute(const FormulaPtr& a, const Substitution& sigma) {
  if (sigma.empty()) return a;
  std::vector<std::string> binders;
  return subst_walk(a, sigma, binders);
}

FormulaPtr subformula_at(const FormulaPtr& a, const Position& p) {
  FormulaPtr cur = a;
  for (int idx : p) {
    switch (cur->kind) {
      case FKind::Atom: throw PositionError();
      case FKind::Not: case FKind::Forall: case FKind::Exists:
        if (idx != 0) throw PositionError();
        cur = cur->lhs;
        break;
      case FKind::And: case FKind::Or:
        if (idx == 0) cur = cur->lhs;
        else if (idx == 1) cur = cur->rhs;
        else throw PositionError();
        break;
    }
  }
  return cur;
}

FormulaPtr replace_at_unchecked(const FormulaPtr& a, const Position& p,
                                const FormulaPtr& c) {
  if (p.empty()) return c;
  int idx = p.front();
  Position rest(p.begin() + 1, p.end());
  switch (a->kind) {
    case FKind::Atom: throw PositionError();
    case FKind::Not:
      if (idx != 0) throw PositionError();
      return make_not(replace_at_unchecked(a->lhs, rest, c));
    case FKind::Forall: case FKind::Exists:
      if (idx != 0) throw PositionError();
      return make_quant(a->kind, a->sym, replace_at_unchecked(a->lhs, rest, c));
    case FKind::And: case FKind::Or: {
      FormulaPtr l = a->lhs, r = a->rhs;
      if (idx == 0) l = replace_at_unchecked(a->lhs, rest, c);
      else if (idx == 1) r = replace_at_unchecked(a->rhs, rest, c);
      else throw PositionError();
      return a->kind == FKind::And ? make_and(l, r) : make_or(l, r);
    }
  }
  throw std::logic_error("unreachable");
}

FormulaPtr replace_at(const FormulaPtr& a, const Position& p, const FormulaPtr& c) {
  FormulaPtr result = replace_at_unchecked(a, p, c);
  if (!is_rectified(result))
    throw RectifyError("replacement violates rectifiedness");
  return result;
}

namespace {

bool rect_walk(const FormulaPtr& f, std::set<std::string>& binders) {
  switch (f->kind) {
    case FKind::Atom: return true;
    case FKind::Not: return rect_walk(f->lhs, binders);
    case FKind::And: case FKind::Or:
      return rect_walk(f->lhs, binders) && rect_walk(f->rhs, binders);
    case FKind::Forall: case FKind::Exists:
      if (!binders.insert(f->sym.name).second) return false;  // duplicate binder
      return rect_walk(f->lhs, binders);
  }
  return false;
}

}  // namespace

bool is_rectified(const FormulaPtr& a) {
  std::set<std::string> binders;
  if (!rect_walk(a, binders)) return false;
  auto free = free_variables(a);
  for (auto& b : binders)
    if (free.count(b)) return false;  // name both free and bound
  return true;
}

bool quantifier_free(const FormulaPtr& a) {
  switch (a->kind) {
    case FKind::Atom: return true;
    case FKind::Not: return quantifier_free(a->lhs);
    case FKind::And: case FKind::Or:
      return quantifier_free(a->lhs) && quantifier_free(a->rhs);
    case FKind::Forall: case FKind::Exists: return false;
  }
  return false;
}

namespace {

FormulaPtr rename_walk(const FormulaPtr& f,
                       const std::map<std::string, std::string>& renaming,
                       std::map<std::string, std::string> env,
                       std::set<std::string>& hit) {
  switch (f->kind) {
    case FKind::Atom: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      for (auto& a : f->args) args.push_back(rename_in_term(a, env));
      return make_atom(f->sym, std::move(args));
    }
    case FKind::Not: return make_not(rename_walk(f->lhs, renaming, env, hit));
    case FKind::And:
      return make_and(rename_walk(f->lhs, renaming, env, hit),
                      rename_walk(f->rhs, renaming, env, hit));
    case FKind::Or:
      return make_or(rename_walk(f->lhs, renaming, env, hit),
                     rename_walk(f->rhs, renaming, env, hit));
    case FKind::Forall: case FKind::Exists: {
      std::string name = f->sym.name;
      auto it = renaming.find(name);
      if (it != renaming.end()) {
        hit.insert(name);
        name = it->second;
        env[f->sym.name] = name;
      } else {
        env.erase(f->sym.name);
      }
      return make_quant(f->kind, Symbol{name, 0, SymbolKind::Variable},
                        rename_walk(f->lhs, renaming, env, hit));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

FormulaPtr rename_bound(const FormulaPtr& a,
                        const std::map<std::string, std::string>& renaming) {
  std::set<std::string> hit;
  FormulaPtr result = rename_walk(a, renaming, {}, hit);
  for (auto& [from, to] : renaming)
    if (!hit.count(from))
      throw RectifyError("'" + from + "' is not a bound variable");
  if (!is_rectified(result))
    throw RectifyError("renaming breaks rectifiedness");
  if (!alpha_equal(result, a))
    throw RectifyError("renaming is not a pure bound-variable renaming");
  return result;
}

}  // namespace herbrand
