#include "herbrand/sentential.hpp"

#include <algorithm>
#include <map>

namespace herbrand {

int AtomTable::intern(const FormulaPtr& atom) {
  std::string key = print(atom);
  auto it = index.find(key);
  if (it != index.end()) return it->second;
  int id = static_cast<int>(atoms.size());
  atoms.push_back(atom);
  index.emplace(std::move(key), id);
  return id;
}

namespace {

SententialPtr abstract_walk(const FormulaPtr& f, AtomTable& table) {
  auto node = std::make_shared<Sentential>();
  switch (f->kind) {
    case FKind::Atom:
      node->kind = FKind::Atom;
      node->atom = table.intern(f);
      break;
    case FKind::Not:
      node->kind = FKind::Not;
      node->lhs = abstract_walk(f->lhs, table);
      break;
    case FKind::And: case FKind::Or:
      node->kind = f->kind;
      node->lhs = abstract_walk(f->lhs, table);
      node->rhs = abstract_walk(f->rhs, table);
      break;
    case FKind::Forall: case FKind::Exists:
      throw QuantifierPresentError();
  }
  return node;
}

// NNF over literals; And/Or nodes keep child lists flat.
struct Nnf;
using NnfPtr = std::shared_ptr<const Nnf>;
struct Nnf {
  enum K { Lit, Conj, Disj, True, False } k;
  int var = -1;
  bool sign = true;  // Lit: sign=true means positive literal
  std::vector<NnfPtr> kids;
};

NnfPtr nnf_const(bool b) {
  auto n = std::make_shared<Nnf>();
  n->k = b ? Nnf::True : Nnf::False;
  return n;
}

NnfPtr nnf_lit(int var, bool sign) {
  auto n = std::make_shared<Nnf>();
  n->k = Nnf::Lit;
  n->var = var;
  n->sign = sign;
  return n;
}

NnfPtr nnf_node(bool conj, std::vector<NnfPtr> kids) {
  // constant folding keeps the search trees small; literal children are
  // deduplicated and a complementary pair collapses the whole node
  std::vector<NnfPtr> flat;
  std::map<int, bool> lits;  // var -> sign seen among direct literal children
  for (size_t i = 0; i < kids.size(); i++) {
    NnfPtr c = kids[i];  // copy: the loop appends to kids while flattening
    if (conj) {
      if (c->k == Nnf::False) return nnf_const(false);
      if (c->k == Nnf::True) continue;
      if (c->k == Nnf::Conj) {
        kids.insert(kids.end(), c->kids.begin(), c->kids.end());
        continue;
      }
    } else {
      if (c->k == Nnf::True) return nnf_const(true);
      if (c->k == Nnf::False) continue;
      if (c->k == Nnf::Disj) {
        kids.insert(kids.end(), c->kids.begin(), c->kids.end());
        continue;
      }
    }
    if (c->k == Nnf::Lit) {
      auto [it, fresh] = lits.emplace(c->var, c->sign);
      if (!fresh) {
        if (it->second == c->sign) continue;        // duplicate literal
        return nnf_const(!conj);                    // complementary pair
      }
    }
    flat.push_back(c);
  }
  if (flat.empty()) return nnf_const(conj);
  if (flat.size() == 1) return flat[0];
  auto n = std::make_shared<Nnf>();
  n->k = conj ? Nnf::Conj : Nnf::Disj;
  n->kids = std::move(flat);
  return n;
}

NnfPtr to_nnf(const SententialPtr& s, bool positive) {
  switch (s->kind) {
    case FKind::Atom: return nnf_lit(s->atom, positive);
    case FKind::Not: return to_nnf(s->lhs, !positive);
    case FKind::And:
      return nnf_node(positive, {to_nnf(s->lhs, positive), to_nnf(s->rhs, positive)});
    case FKind::Or:
      return nnf_node(!positive, {to_nnf(s->lhs, positive), to_nnf(s->rhs, positive)});
    default: throw QuantifierPresentError();
  }
}

NnfPtr assign(const NnfPtr& n, int var, bool value) {
  switch (n->k) {
    case Nnf::True: case Nnf::False: return n;
    case Nnf::Lit:
      if (n->var != var) return n;
      return nnf_const(n->sign == value);
    case Nnf::Conj: case Nnf::Disj: {
      std::vector<NnfPtr> kids;
      kids.reserve(n->kids.size());
      bool changed = false;
      for (auto& c : n->kids) {
        kids.push_back(assign(c, var, value));
        if (kids.back() != c) changed = true;
      }
      if (!changed) return n;
      return nnf_node(n->k == Nnf::Conj, std::move(kids));
    }
  }
  throw std::logic_error("unreachable");
}

int pick_var(const NnfPtr& n) {
  switch (n->k) {
    case Nnf::Lit: return n->var;
    case Nnf::Conj: case Nnf::Disj: return pick_var(n->kids.front());
    default: return -1;
  }
}

// Unit-ish propagation: in a conjunction, a bare literal child forces its
// value; in a disjunction, it may be assumed false on the remaining search.
bool satisfiable(NnfPtr n) {
  while (true) {
    if (n->k == Nnf::True) return true;
    if (n->k == Nnf::False) return false;
    if (n->k == Nnf::Lit) return true;
    if (n->k == Nnf::Conj) {
      const Nnf* unit = nullptr;
      for (auto& c : n->kids)
        if (c->k == Nnf::Lit) { unit = c.get(); break; }
      if (unit) { n = assign(n, unit->var, unit->sign); continue; }
    }
    if (n->k == Nnf::Disj) {
      // a disjunction with a bare literal child is satisfied outright
      for (auto& c : n->kids)
        if (c->k == Nnf::Lit) return true;
    }
    break;
  }
  int var = pick_var(n);
  if (satisfiable(assign(n, var, true))) return true;
  return satisfiable(assign(n, var, false));
}

}  // namespace

std::pair<SententialPtr, AtomTable> abstract_atoms(const FormulaPtr& a) {
  AtomTable table;
  SententialPtr s = abstract_walk(a, table);
  return {std::move(s), std::move(table)};
}

bool is_tautology(const FormulaPtr& a) {
  auto [shape, table] = abstract_atoms(a);
  // A is a tautology iff ~A is unsatisfiable
  NnfPtr negated = to_nnf(shape, false);
  return !satisfiable(negated);
}

}  // namespace herbrand
