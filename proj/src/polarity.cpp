#include "herbrand/polarity.hpp"

namespace herbrand {

namespace {

void classify_walk(const FormulaPtr& f, Position& path, int parity,
                   int quants_above, std::vector<QuantifierOccurrence>& out) {
  switch (f->kind) {
    case FKind::Atom:
      break;
    case FKind::Not:
      path.push_back(0);
      classify_walk(f->lhs, path, parity + 1, quants_above, out);
      path.pop_back();
      break;
    case FKind::And: case FKind::Or:
      path.push_back(0);
      classify_walk(f->lhs, path, parity, quants_above, out);
      path.back() = 1;
      classify_walk(f->rhs, path, parity, quants_above, out);
      path.pop_back();
      break;
    case FKind::Forall: case FKind::Exists: {
      QuantifierOccurrence occ;
      occ.position = path;
      occ.quantifier = f->kind;
      occ.variable = f->sym;
      occ.negation_parity = parity % 2;
      occ.gamma = is_gamma(f->kind, parity);
      occ.accessible = quants_above == 0;
      out.push_back(std::move(occ));
      path.push_back(0);
      classify_walk(f->lhs, path, parity, quants_above + 1, out);
      path.pop_back();
      break;
    }
  }
}

}  // namespace

std::vector<QuantifierOccurrence> classify_quantifiers(const FormulaPtr& a) {
  std::vector<QuantifierOccurrence> out;
  Position path;
  classify_walk(a, path, 0, 0, out);
  return out;
}

int polarity_at(const FormulaPtr& a, const Position& p) {
  FormulaPtr cur = a;
  int parity = 0;
  for (int idx : p) {
    switch (cur->kind) {
      case FKind::Atom: throw PositionError();
      case FKind::Not:
        if (idx != 0) throw PositionError();
        parity++;
        cur = cur->lhs;
        break;
      case FKind::Forall: case FKind::Exists:
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
  return parity % 2;
}

}  // namespace herbrand
