#include "herbrand/universe.hpp"

#include <algorithm>
#include <map>

namespace herbrand {

int height(const TermPtr& t) {
  int m = 0;
  for (auto& a : t->args) m = std::max(m, height(a));
  return 1 + m;
}

namespace {

void signature_from_term(const TermPtr& t, const std::set<std::string>& bound,
                         std::map<std::string, Symbol>& out) {
  if (t->head.kind == SymbolKind::Variable) {
    if (!bound.count(t->head.name)) out.emplace(t->head.name, t->head);
  } else {
    out.emplace(t->head.name, t->head);
  }
  for (auto& a : t->args) signature_from_term(a, bound, out);
}

void signature_walk(const FormulaPtr& f, std::set<std::string>& bound,
                    std::map<std::string, Symbol>& out) {
  switch (f->kind) {
    case FKind::Atom:
      for (auto& a : f->args) signature_from_term(a, bound, out);
      break;
    case FKind::Not: signature_walk(f->lhs, bound, out); break;
    case FKind::And: case FKind::Or:
      signature_walk(f->lhs, bound, out);
      signature_walk(f->rhs, bound, out);
      break;
    case FKind::Forall: case FKind::Exists: {
      bool added = bound.insert(f->sym.name).second;
      signature_walk(f->lhs, bound, out);
      if (added) bound.erase(f->sym.name);
      break;
    }
  }
}

}  // namespace

ChampFini champ_fini(int n, const FormulaPtr& f, std::size_t term_limit) {
  ChampFini champ;
  champ.order = n;

  std::set<std::string> bound;
  std::map<std::string, Symbol> sig;
  signature_walk(f, bound, sig);

  bool has_nullary = false;
  for (auto& [name, sym] : sig)
    if (sym.arity == 0) has_nullary = true;
  if (!has_nullary)
    sig.emplace(kBulletName, Symbol{kBulletName, 0, SymbolKind::Bullet});

  for (auto& [name, sym] : sig) champ.signature.push_back(sym);

  // layers[h] = terms of height exactly h+1, each sorted by print
  std::vector<std::vector<std::pair<std::string, TermPtr>>> layers;
  std::set<std::string> seen;
  std::size_t total = 0;
  for (int h = 1; h < n; h++) {
    std::vector<std::pair<std::string, TermPtr>> layer;
    if (h == 1) {
      for (auto& sym : champ.signature)
        if (sym.arity == 0) layer.emplace_back(sym.name, make_term(sym));
    } else {
      // f(t1..tm) has height h iff max arg height == h-1
      std::vector<TermPtr> below;  // height < h-1
      std::vector<TermPtr> at;     // height == h-1
      for (int j = 0; j + 2 < h; j++)
        for (auto& [_, t] : layers[j]) below.push_back(t);
      for (auto& [_, t] : layers[h - 2]) at.push_back(t);
      std::vector<TermPtr> any = below;
      any.insert(any.end(), at.begin(), at.end());
      for (auto& sym : champ.signature) {
        if (sym.arity == 0) continue;
        // enumerate argument tuples over `any` requiring at least one from `at`
        std::vector<std::size_t> idx(sym.arity, 0);
        if (any.empty()) continue;
        while (true) {
          bool touches_at = false;
          for (int i = 0; i < sym.arity; i++)
            if (idx[i] >= below.size()) touches_at = true;
          if (touches_at) {
            std::vector<TermPtr> args;
            args.reserve(sym.arity);
            for (int i = 0; i < sym.arity; i++) args.push_back(any[idx[i]]);
            TermPtr t = make_term(sym, std::move(args));
            layer.emplace_back(print(t), t);
            if (term_limit && ++total > term_limit)
              throw ResourceLimitError("champ fini exceeds term limit");
          }
          int i = sym.arity - 1;
          while (i >= 0 && ++idx[i] == any.size()) idx[i--] = 0;
          if (i < 0) break;
        }
      }
    }
    std::sort(layer.begin(), layer.end(),
              [](auto& a, auto& b) { return a.first < b.first; });
    std::vector<std::pair<std::string, TermPtr>> dedup;
    for (auto& e : layer) {
      if (seen.insert(e.first).second) dedup.push_back(e);
    }
    layers.push_back(std::move(dedup));
  }
  for (auto& layer : layers)
    for (auto& [_, t] : layer) champ.terms.push_back(t);
  return champ;
}

namespace {

FormulaPtr expand_walk(const FormulaPtr& f, const std::vector<TermPtr>& terms) {
  switch (f->kind) {
    case FKind::Atom: return f;
    case FKind::Not: return make_not(expand_walk(f->lhs, terms));
    case FKind::And:
      return make_and(expand_walk(f->lhs, terms), expand_walk(f->rhs, terms));
    case FKind::Or:
      return make_or(expand_walk(f->lhs, terms), expand_walk(f->rhs, terms));
    case FKind::Forall: case FKind::Exists: {
      if (terms.empty())
        throw ExpansionError("order too small: empty term set with quantifier "
                             "'" + f->sym.name + "' present");
      FormulaPtr body = expand_walk(f->lhs, terms);
      FormulaPtr acc;
      for (auto& t : terms) {
        FormulaPtr inst = substitute(body, Substitution{{f->sym.name, t}});
        if (!acc) acc = inst;
        else acc = f->kind == FKind::Exists ? make_or(acc, inst)
                                            : make_and(acc, inst);
      }
      return acc;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

FormulaPtr expand(const FormulaPtr& a, const std::vector<TermPtr>& terms) {
  // bound variables must not occur in T; rename A's binders apart
  std::set<std::string> in_terms;
  for (auto& t : terms)
    for (auto& v : free_term_vars(t)) in_terms.insert(v);
  FormulaPtr prepared = a;
  std::map<std::string, std::string> ren;
  std::set<std::string> taken = all_names(a);
  taken.insert(in_terms.begin(), in_terms.end());
  // collect clashing binders
  {
    std::vector<FormulaPtr> stack{a};
    while (!stack.empty()) {
      FormulaPtr cur = stack.back();
      stack.pop_back();
      switch (cur->kind) {
        case FKind::Atom: break;
        case FKind::Not: stack.push_back(cur->lhs); break;
        case FKind::And: case FKind::Or:
          stack.push_back(cur->lhs);
          stack.push_back(cur->rhs);
          break;
        case FKind::Forall: case FKind::Exists:
          if (in_terms.count(cur->sym.name) && !ren.count(cur->sym.name))
            ren[cur->sym.name] = fresh_name(cur->sym.name, taken);
          stack.push_back(cur->lhs);
          break;
      }
    }
  }
  if (!ren.empty()) prepared = rename_bound(a, ren);
  return expand_walk(prepared, terms);
}

std::size_t expansion_atom_count(const FormulaPtr& a, std::size_t t_size,
                                 std::size_t cap) {
  switch (a->kind) {
    case FKind::Atom: return 1;
    case FKind::Not: return expansion_atom_count(a->lhs, t_size, cap);
    case FKind::And: case FKind::Or: {
      std::size_t l = expansion_atom_count(a->lhs, t_size, cap);
      std::size_t r = expansion_atom_count(a->rhs, t_size, cap);
      return l >= cap - r ? cap : l + r;
    }
    case FKind::Forall: case FKind::Exists: {
      std::size_t c = expansion_atom_count(a->lhs, t_size, cap);
      if (t_size == 0) return cap;
      if (c >= cap / t_size) return cap;
      return c * t_size;
    }
  }
  return 0;
}

}  // namespace herbrand
