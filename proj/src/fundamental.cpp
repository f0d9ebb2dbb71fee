#include "herbrand/fundamental.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "herbrand/polarity.hpp"
#include "herbrand/sentential.hpp"

namespace herbrand {

PropertyCReport check_property_c(const FormulaPtr& a, int order,
                                 std::size_t atom_budget) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  PropertyCReport r;
  r.formula = is_rectified(a) ? a : rectify(a);
  r.order = order;
  r.skolemized = outer_skolemize(r.formula);
  if (order == 1) {
    r.champ = champ_fini(1, r.skolemized);
    if (quantifier_free(r.skolemized)) {
      r.expansion = r.skolemized;
      r.atom_count = expansion_atom_count(r.skolemized, 0, atom_budget);
      r.verdict = is_tautology(r.expansion);
    }
    return r;
  }
  r.champ = champ_fini(order, r.skolemized, atom_budget);
  r.atom_count =
      expansion_atom_count(r.skolemized, r.champ.terms.size(), atom_budget);
  if (r.atom_count >= atom_budget)
    throw ResourceLimitError("expansion at order " + std::to_string(order) +
                             " exceeds the atom budget of " +
                             std::to_string(atom_budget));
  r.expansion = expand(r.skolemized, r.champ.terms);
  r.verdict = is_tautology(r.expansion);
  return r;
}

ProveOutcome prove(const FormulaPtr& a, int max_order,
                   std::size_t atom_budget) {
  if (max_order < 1) throw std::invalid_argument("max order must be >= 1");
  ProveOutcome out;
  for (int n = 1; n <= max_order; n++) {
    out.order = n;
    PropertyCReport r;
    try {
      r = check_property_c(a, n, atom_budget);
    } catch (const ResourceLimitError& e) {
      out.resource_limited = true;
      out.limit_detail = e.what();
      return out;
    }
    out.reports.push_back(r);
    if (r.verdict) {
      out.found = true;
      out.derivation = build_derivation(a, n);
      return out;
    }
  }
  return out;
}

std::size_t lemma4_bound(const Derivation& d) {
  std::size_t sum = 0;
  for (const Step& s : d.steps) {
    switch (s.app.rule) {
      case RuleKind::ExistentialoidQuantification:
        if (!s.app.witness)
          throw RuleError(RuleErrorCode::BadPayload, "gamma step lacks a witness");
        sum += static_cast<std::size_t>(height(s.app.witness));
        break;
      case RuleKind::UniversaloidQuantification:
      case RuleKind::Simplification:
      case RuleKind::GammaSimplificationGeneralized:
      case RuleKind::RenameBound:
        break;
      default:
        throw RuleError(RuleErrorCode::ForeignRule,
                        "'" + rule_name(s.app) +
                            "' lies outside the order-bound statement");
    }
  }
  return 1 + sum;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string report_record(const PropertyCReport& r) {
  std::ostringstream out;
  out << "(report (order " << r.order << ")\n"
      << "  (formula " << quoted(print(r.formula)) << ")\n"
      << "  (skolemized " << quoted(print(r.skolemized)) << ")\n"
      << "  (champ";
  for (auto& t : r.champ.terms) out << ' ' << quoted(print(t));
  out << ")\n  (atom-count " << r.atom_count << ")\n";
  if (r.expansion)
    out << "  (expansion " << quoted(print(r.expansion)) << ")\n";
  out << "  (verdict " << (r.verdict ? "true" : "false") << "))\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Derivation builder.
//
// The expansion of the outer Skolemized form, with every maximal Skolem-headed
// ground term read as a fresh pseudo-variable, is the start formula. Each
// quantifier of the target is then re-introduced instance by instance:
//  - a gamma quantifier was expanded into a left-fold comb over the champ
//    fini; each leaf gets its own quantification step whose witness is the
//    (pseudo-variable image of the) champ term, and the comb is afterwards
//    collapsed by gamma-simplification steps that keep the leftmost branch;
//  - a delta quantifier was Skolemized away; its instance is re-bound by a
//    universaloid step whose eigenvariable is the pseudo-variable standing
//    for the instance's Skolem term.
// Order matters: inside an instance, inner quantifiers go first; across
// branches, a pseudo-variable must disappear from every gamma witness image
// before the delta step that binds it. A topological sort over those
// constraints yields the schedule. A single closing RenameBound step maps the
// surviving binder names back to the target's original ones.

namespace {

struct Builder {
  std::vector<TermPtr> T;  // champ fini terms, fixed order
  std::map<std::string, Symbol> sk_for_var;        // delta var -> Skolem symbol
  std::map<std::string, std::string> var_for_sk;   // Skolem name -> delta var
  std::set<std::string> taken;                     // names in use
  std::map<std::string, std::string> psi;          // print(ground) -> pseudo
  std::map<std::string, std::string> binder_of;    // gamma instance -> binder

  struct Task {
    enum Kind { Gamma, Delta, Merge } kind;
    Position pos;            // updated as earlier steps reshape the formula
    std::vector<int> deps;
    FKind quant = FKind::Exists;
    std::string binder;      // gamma: fresh binder; delta: the pseudo-variable
    TermPtr witness;         // gamma only, pseudo-variable image
    FormulaPtr h;            // gamma only, the body being bound
    int k = 0;               // merge only, comb width
    bool done = false;
  };
  std::vector<Task> tasks;

  using Sigma = std::map<std::string, TermPtr>;  // gamma var -> ground term
  using Scope = std::vector<std::string>;        // gamma vars, outside-in

  std::string sigma_key(const Sigma& s) const {
    std::string k;
    for (auto& [v, t] : s) {
      k += v;
      k += '=';
      k += print(t);
      k += ';';
    }
    return k;
  }
  std::string instance_key(const Formula* node, const Sigma& s) const {
    std::ostringstream o;
    o << node << '|' << sigma_key(s);
    return o.str();
  }

  std::string pseudo_for(const TermPtr& ground) {
    std::string key = print(ground);
    auto it = psi.find(key);
    if (it != psi.end()) return it->second;
    std::string name = fresh_name(var_for_sk.at(ground->head.name), taken);
    psi.emplace(std::move(key), name);
    return name;
  }

  // Maximal Skolem-headed subterms become pseudo-variables.
  TermPtr image(const TermPtr& ground) {
    if (ground->head.kind == SymbolKind::Skolem)
      return make_var(pseudo_for(ground));
    std::vector<TermPtr> args;
    args.reserve(ground->args.size());
    for (auto& x : ground->args) args.push_back(image(x));
    return make_term(ground->head, std::move(args));
  }

  TermPtr delta_ground(const std::string& y, const Sigma& sigma,
                       const Scope& scope) const {
    std::vector<TermPtr> args;
    args.reserve(scope.size());
    for (auto& v : scope) args.push_back(sigma.at(v));
    return make_term(sk_for_var.at(y), std::move(args));
  }

  // Path to leaf i of the left-fold comb ((I0 o I1) o I2) ...
  static Position comb_path(int i, int k) {
    Position p;
    if (k <= 1) return p;
    p.assign(k - 1 - i, 0);
    if (i > 0) p.push_back(1);
    return p;
  }

  static FormulaPtr subst_atom(const FormulaPtr& atom, const Substitution& rho) {
    std::vector<TermPtr> args;
    args.reserve(atom->args.size());
    for (auto& t : atom->args) args.push_back(substitute(t, rho));
    return make_atom(atom->sym, std::move(args));
  }

  // The start formula: the expansion with pseudo-variable images baked in.
  FormulaPtr estar(const FormulaPtr& node, Sigma& sigma, Scope& scope,
                   const Substitution& rho, int parity) {
    switch (node->kind) {
      case FKind::Atom: return subst_atom(node, rho);
      case FKind::Not:
        return make_not(estar(node->lhs, sigma, scope, rho, 1 - parity));
      case FKind::And:
        return make_and(estar(node->lhs, sigma, scope, rho, parity),
                        estar(node->rhs, sigma, scope, rho, parity));
      case FKind::Or:
        return make_or(estar(node->lhs, sigma, scope, rho, parity),
                       estar(node->rhs, sigma, scope, rho, parity));
      case FKind::Forall: case FKind::Exists: break;
    }
    const std::string& x = node->sym.name;
    if (is_gamma(node->kind, parity)) {
      FormulaPtr acc;
      scope.push_back(x);
      for (const TermPtr& t : T) {
        sigma[x] = t;
        Substitution rho2 = rho;
        rho2[x] = image(t);
        FormulaPtr inst = estar(node->lhs, sigma, scope, rho2, parity);
        if (!acc) acc = inst;
        else acc = node->kind == FKind::Exists ? make_or(acc, inst)
                                               : make_and(acc, inst);
      }
      scope.pop_back();
      sigma.erase(x);
      return acc;
    }
    Substitution rho2 = rho;
    rho2[x] = make_var(pseudo_for(delta_ground(x, sigma, scope)));
    return estar(node->lhs, sigma, scope, rho2, parity);
  }

  // The fully refolded form of a subtree (all of its tasks done): gamma
  // combs collapsed to their leftmost instance, deltas bound by their
  // pseudo-variables.
  FormulaPtr final_form(const FormulaPtr& node, Sigma& sigma, Scope& scope,
                        const Substitution& rho, int parity) {
    switch (node->kind) {
      case FKind::Atom: return subst_atom(node, rho);
      case FKind::Not:
        return make_not(final_form(node->lhs, sigma, scope, rho, 1 - parity));
      case FKind::And:
        return make_and(final_form(node->lhs, sigma, scope, rho, parity),
                        final_form(node->rhs, sigma, scope, rho, parity));
      case FKind::Or:
        return make_or(final_form(node->lhs, sigma, scope, rho, parity),
                       final_form(node->rhs, sigma, scope, rho, parity));
      case FKind::Forall: case FKind::Exists: break;
    }
    const std::string& x = node->sym.name;
    std::string binder;
    Substitution rho2 = rho;
    if (is_gamma(node->kind, parity)) {
      sigma[x] = T.at(0);
      binder = binder_of.at(instance_key(node.get(), sigma));
      rho2[x] = make_var(binder);
      scope.push_back(x);
      FormulaPtr body = final_form(node->lhs, sigma, scope, rho2, parity);
      scope.pop_back();
      sigma.erase(x);
      return make_quant(node->kind, Symbol{binder, 0, SymbolKind::Variable},
                        body);
    }
    binder = pseudo_for(delta_ground(x, sigma, scope));
    rho2[x] = make_var(binder);
    return make_quant(node->kind, Symbol{binder, 0, SymbolKind::Variable},
                      final_form(node->lhs, sigma, scope, rho2, parity));
  }

  // Plans the tasks of a subtree; returns the ids completing it.
  std::vector<int> plan(const FormulaPtr& node, Sigma& sigma, Scope& scope,
                        const Substitution& rho, int parity, const Position& pos) {
    switch (node->kind) {
      case FKind::Atom: return {};
      case FKind::Not: {
        Position p = pos;
        p.push_back(0);
        return plan(node->lhs, sigma, scope, rho, 1 - parity, p);
      }
      case FKind::And: case FKind::Or: {
        Position pl = pos, pr = pos;
        pl.push_back(0);
        pr.push_back(1);
        auto l = plan(node->lhs, sigma, scope, rho, parity, pl);
        auto r = plan(node->rhs, sigma, scope, rho, parity, pr);
        l.insert(l.end(), r.begin(), r.end());
        return l;
      }
      case FKind::Forall: case FKind::Exists: break;
    }
    const std::string& x = node->sym.name;
    if (is_gamma(node->kind, parity)) {
      int k = static_cast<int>(T.size());
      if (k == 0)
        throw std::logic_error("no ground terms available to instantiate '" +
                               x + "'");
      std::vector<int> gammas;
      scope.push_back(x);
      for (int i = 0; i < k; i++) {
        sigma[x] = T[i];
        std::string b = fresh_name(x, taken);
        binder_of[instance_key(node.get(), sigma)] = b;
        Substitution rho_in = rho;
        rho_in[x] = image(T[i]);
        Position ipos = pos;
        Position cp = comb_path(i, k);
        ipos.insert(ipos.end(), cp.begin(), cp.end());
        auto inner = plan(node->lhs, sigma, scope, rho_in, parity, ipos);
        Substitution rho_h = rho;
        rho_h[x] = make_var(b);
        Task g;
        g.kind = Task::Gamma;
        g.pos = ipos;
        g.deps = std::move(inner);
        g.quant = node->kind;
        g.binder = b;
        g.witness = image(T[i]);
        g.h = final_form(node->lhs, sigma, scope, rho_h, parity);
        tasks.push_back(std::move(g));
        gammas.push_back(static_cast<int>(tasks.size()) - 1);
      }
      sigma.erase(x);
      scope.pop_back();
      if (k == 1) return {gammas[0]};
      Task m;
      m.kind = Task::Merge;
      m.pos = pos;
      m.deps = gammas;
      m.k = k;
      tasks.push_back(std::move(m));
      return {static_cast<int>(tasks.size()) - 1};
    }
    std::string v = pseudo_for(delta_ground(x, sigma, scope));
    Substitution rho_in = rho;
    rho_in[x] = make_var(v);
    auto inner = plan(node->lhs, sigma, scope, rho_in, parity, pos);
    Task d;
    d.kind = Task::Delta;
    d.pos = pos;
    d.deps = std::move(inner);
    d.quant = node->kind;
    d.binder = v;
    tasks.push_back(std::move(d));
    return {static_cast<int>(tasks.size()) - 1};
  }
};

// Binder-name pairs (from -> to) of two formulas of identical shape.
void collect_renaming_walk(const FormulaPtr& from, const FormulaPtr& to,
                           std::vector<std::pair<std::string, std::string>>& out) {
  if (from->kind != to->kind)
    throw std::logic_error("shape mismatch while aligning variants");
  switch (from->kind) {
    case FKind::Atom: return;
    case FKind::Not:
      collect_renaming_walk(from->lhs, to->lhs, out);
      return;
    case FKind::And: case FKind::Or:
      collect_renaming_walk(from->lhs, to->lhs, out);
      collect_renaming_walk(from->rhs, to->rhs, out);
      return;
    case FKind::Forall: case FKind::Exists:
      if (from->sym.name != to->sym.name)
        out.emplace_back(from->sym.name, to->sym.name);
      collect_renaming_walk(from->lhs, to->lhs, out);
      return;
  }
}

std::vector<std::pair<std::string, std::string>> collect_renaming(
    const FormulaPtr& from, const FormulaPtr& to) {
  std::vector<std::pair<std::string, std::string>> out;
  collect_renaming_walk(from, to, out);
  return out;
}

bool proper_prefix(const Position& p, const Position& q) {
  return p.size() < q.size() && std::equal(p.begin(), p.end(), q.begin());
}

}  // namespace

Derivation build_derivation(const FormulaPtr& a0, int order) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  FormulaPtr a = is_rectified(a0) ? a0 : rectify(a0);

  SkolemResult sk = outer_skolemize_tracked(a);
  if (order == 1 && !quantifier_free(sk.formula))
    throw std::logic_error(
        "an order-1 derivation needs a quantifier-free outer form");

  Builder b;
  b.sk_for_var = sk.symbol_for_var;
  for (auto& [v, s] : sk.symbol_for_var) b.var_for_sk[s.name] = v;
  b.taken = all_names(a);
  ChampFini champ;
  if (order > 1) {
    champ = champ_fini(order, sk.formula);
    for (auto& s : champ.signature) b.taken.insert(s.name);
  }
  for (auto& [v, s] : sk.symbol_for_var) b.taken.insert(s.name);
  b.T = champ.terms;

  Builder::Sigma sigma;
  Builder::Scope scope;
  b.plan(a, sigma, scope, {}, 0, {});

  // Cross-branch constraint: a gamma step whose witness image mentions a
  // pseudo-variable must run before the delta step binding it.
  for (auto& d : b.tasks) {
    if (d.kind != Builder::Task::Delta) continue;
    for (size_t gi = 0; gi < b.tasks.size(); gi++) {
      const auto& g = b.tasks[gi];
      if (g.kind == Builder::Task::Gamma &&
          free_term_vars(g.witness).count(d.binder))
        d.deps.push_back(static_cast<int>(gi));
    }
  }

  // Deterministic topological order (smallest planning id first).
  const int n = static_cast<int>(b.tasks.size());
  std::vector<std::vector<int>> adj(n);
  std::vector<int> indeg(n, 0);
  for (int i = 0; i < n; i++) {
    std::set<int> deps(b.tasks[i].deps.begin(), b.tasks[i].deps.end());
    for (int dep : deps) {
      adj[dep].push_back(i);
      indeg[i]++;
    }
  }
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int i = 0; i < n; i++)
    if (indeg[i] == 0) ready.push(i);
  std::vector<int> schedule;
  while (!ready.empty()) {
    int i = ready.top();
    ready.pop();
    schedule.push_back(i);
    for (int j : adj[i])
      if (--indeg[j] == 0) ready.push(j);
  }
  if (static_cast<int>(schedule.size()) != n) {
    for (int i = 0; i < n; i++)
      if (indeg[i] > 0)
        throw std::logic_error(
            "unable to schedule the quantifier introduction for '" +
            b.tasks[i].binder + "'");
  }

  Derivation der;
  sigma.clear();
  scope.clear();
  der.start = b.estar(a, sigma, scope, {}, 0);
  FormulaPtr current = der.start;

  auto emit = [&](Step s) {
    FormulaPtr recomputed = check_step(current, s);
    if (!alpha_equal(recomputed, s.result))
      throw std::logic_error(
          "builder emitted a step the kernel recomputes differently");
    current = s.result;
    der.steps.push_back(std::move(s));
  };
  auto shift_introduce = [&](const Position& p) {
    for (auto& t : b.tasks)
      if (!t.done && proper_prefix(p, t.pos))
        t.pos.insert(t.pos.begin() + static_cast<long>(p.size()), 0);
  };
  auto shift_contract = [&](const Position& p) {
    for (auto& t : b.tasks)
      if (!t.done && proper_prefix(p, t.pos))
        t.pos.erase(t.pos.begin() + static_cast<long>(p.size()));
  };

  for (int id : schedule) {
    Builder::Task& t = b.tasks[id];
    t.done = true;
    switch (t.kind) {
      case Builder::Task::Gamma: {
        FormulaPtr concl = replace_at_unchecked(
            current, t.pos,
            make_quant(t.quant, Symbol{t.binder, 0, SymbolKind::Variable},
                       t.h));
        Step s;
        s.app.rule = RuleKind::ExistentialoidQuantification;
        s.app.position = t.pos;
        s.app.quantifier = t.quant;
        s.app.variable = t.binder;
        s.app.witness = t.witness;
        s.result = concl;
        emit(std::move(s));
        shift_introduce(t.pos);
        break;
      }
      case Builder::Task::Delta: {
        FormulaPtr concl =
            apply_universaloid_quantification(current, t.pos, t.quant, t.binder);
        Step s;
        s.app.rule = RuleKind::UniversaloidQuantification;
        s.app.position = t.pos;
        s.app.quantifier = t.quant;
        s.app.variable = t.binder;
        s.result = concl;
        emit(std::move(s));
        shift_introduce(t.pos);
        break;
      }
      case Builder::Task::Merge: {
        for (int i = 1; i < t.k; i++) {
          Position p = t.pos;
          p.insert(p.end(), static_cast<size_t>(t.k - 1 - i), 0);
          FormulaPtr sub = subformula_at(current, p);
          auto ren = collect_renaming(sub->rhs, sub->lhs);
          FormulaPtr concl = apply_simplification(current, p, ren, true);
          Step s;
          s.app.rule = RuleKind::GammaSimplificationGeneralized;
          s.app.position = p;
          s.app.renaming = ren;
          s.result = concl;
          emit(std::move(s));
          shift_contract(p);
        }
        break;
      }
    }
  }

  auto ren = collect_renaming(current, a);
  if (!ren.empty()) {
    FormulaPtr fin = apply_rename_bound(current, ren);
    Step s;
    s.app.rule = RuleKind::RenameBound;
    s.app.renaming = ren;
    s.result = fin;
    emit(std::move(s));
  }
  if (!syntactic_equal(current, a))
    throw std::logic_error("builder did not reconstruct the target formula");
  return der;
}

}  // namespace herbrand
