#include "lj/isn.hpp"

namespace lj {

namespace {

IsnNodePtr node(std::string rule, TermPtr subject, std::vector<IsnNodePtr> kids = {}) {
  auto n = std::make_shared<IsnNode>();
  n->rule = std::move(rule);
  n->subject = std::move(subject);
  n->children = std::move(kids);
  return n;
}

struct Budget {
  long left;
  int depth = 0;
  static constexpr int kMaxDepth = 2000;
  bool out() { return --left < 0 || depth > kMaxDepth; }
};

// Keeps the C++ stack bounded independently of the fuel budget.
struct DepthGuard {
  Budget& b;
  explicit DepthGuard(Budget& bb) : b(bb) { ++b.depth; }
  ~DepthGuard() { --b.depth; }
};

// --- ISN for dbeta (Def. 4) -----------------------------------------------

IsnNodePtr dbeta_rec(const TermPtr& t, Budget& fuel) {
  if (fuel.out()) return nullptr;
  DepthGuard guard(fuel);
  switch (t->kind) {
    case Term::Kind::Var: return node("snvar", t);
    case Term::Kind::Abs: {
      auto k = dbeta_rec(t->a, fuel);
      return k ? node("snabs", t, {k}) : nullptr;
    }
    case Term::Kind::GApp: break;
  }
  auto ws = wh_step(t);
  if (!ws) {
    auto kn = dbeta_rec(t->a, fuel);
    if (!kn) return nullptr;
    auto ku = dbeta_rec(t->b, fuel);
    if (!ku) return nullptr;
    auto kr = dbeta_rec(t->c, fuel);
    if (!kr) return nullptr;
    return node("snapp", t, {kn, ku, kr});
  }
  auto k0 = dbeta_rec(ws->result, fuel);
  if (!k0) return nullptr;
  auto k1 = dbeta_rec(ws->dns, fuel);
  if (!k1) return nullptr;
  auto k2 = dbeta_rec(ws->redex_arg, fuel);
  if (!k2) return nullptr;
  return node("snbeta", t, {k0, k1, k2});
}

// --- ISN for (beta,pi) (Fig. SN) ------------------------------------------

struct SArg {
  TermPtr u;
  std::string binder;
  TermPtr r;
};

// t = h S1 ... Sk with h a variable or an abstraction.
void peel_spine(const TermPtr& t, TermPtr& h, std::vector<SArg>& spine) {
  TermPtr cur = t;
  std::vector<SArg> rev;
  while (cur->kind == Term::Kind::GApp) {
    rev.push_back({cur->b, cur->name, cur->c});
    cur = cur->a;
  }
  h = cur;
  spine.assign(rev.rbegin(), rev.rend());
}

TermPtr apply_spine(TermPtr h, const std::vector<SArg>& spine, size_t from) {
  for (size_t i = from; i < spine.size(); ++i)
    h = gapp(h, spine[i].u, spine[i].binder, spine[i].r);
  return h;
}

IsnNodePtr betapi_rec(const TermPtr& t, Budget& fuel) {
  if (fuel.out()) return nullptr;
  DepthGuard guard(fuel);
  TermPtr h;
  std::vector<SArg> spine;
  peel_spine(t, h, spine);
  if (h->kind == Term::Kind::Var) {
    if (spine.empty()) return node("var", t);
    if (spine.size() == 1) {
      auto ku = betapi_rec(spine[0].u, fuel);
      if (!ku) return nullptr;
      auto kr = betapi_rec(spine[0].r, fuel);
      if (!kr) return nullptr;
      return node("hvar", t, {ku, kr});
    }
    // (pi): push S2 into the continuation of the innermost application
    TermPtr inner = gapp(h, spine[0].u, spine[0].binder, spine[0].r);
    TermPtr red = gapp(inner, spine[1].u, spine[1].binder, spine[1].r);
    TermPtr premise = apply_spine(*step_root(Rule::Pi, red), spine, 2);
    auto k = betapi_rec(premise, fuel);
    return k ? node("pi", t, {k}) : nullptr;
  }
  // h is an abstraction
  if (spine.empty()) {
    auto k = betapi_rec(h->a, fuel);
    return k ? node("lambda", t, {k}) : nullptr;
  }
  TermPtr contractum =
      substitute(substitute(spine[0].u, h->name, h->a), spine[0].binder, spine[0].r);
  TermPtr premise = apply_spine(contractum, spine, 1);
  auto k0 = betapi_rec(premise, fuel);
  if (!k0) return nullptr;
  auto k1 = betapi_rec(h->a, fuel);
  if (!k1) return nullptr;
  auto k2 = betapi_rec(spine[0].u, fuel);
  if (!k2) return nullptr;
  return node("beta", t, {k0, k1, k2});
}

// --- new ISN for Lambda-J ---------------------------------------------------

IsnNodePtr newisn_rec(const TermPtr& t, Budget& fuel) {
  if (fuel.out()) return nullptr;
  DepthGuard guard(fuel);
  switch (t->kind) {
    case Term::Kind::Var: return node("snvar", t);
    case Term::Kind::Abs: {
      auto k = newisn_rec(t->a, fuel);
      return k ? node("snabs", t, {k}) : nullptr;
    }
    case Term::Kind::GApp: break;
  }
  auto ws = wh_step(t);
  if (!ws) {
    auto kn = newisn_rec(t->a, fuel);
    if (!kn) return nullptr;
    auto ku = newisn_rec(t->b, fuel);
    if (!ku) return nullptr;
    auto kr = newisn_rec(t->c, fuel);
    if (!kr) return nullptr;
    return node("snapp", t, {kn, ku, kr});
  }
  if (ws->dn.empty()) {
    TermPtr contractum =
        substitute(substitute(ws->redex_arg, ws->lam_binder, ws->lam_body),
                   ws->cont_binder, ws->redex_cont);
    TermPtr premise = replace_at(t, ws->W.hole, contractum);
    auto k0 = newisn_rec(premise, fuel);
    if (!k0) return nullptr;
    auto k1 = newisn_rec(ws->lam_body, fuel);
    if (!k1) return nullptr;
    auto k2 = newisn_rec(ws->redex_arg, fuel);
    if (!k2) return nullptr;
    return node("isnredex2", t, {k0, k1, k2});
  }
  // redex is n(u0, x0.a)S: one pi step pushes S into the continuation
  TermPtr premise = replace_at(t, ws->W.hole, *step_root(Rule::Pi, ws->redex));
  auto k = newisn_rec(premise, fuel);
  return k ? node("isnredex1", t, {k}) : nullptr;
}

IsnVerdict run(IsnNodePtr (*rec)(const TermPtr&, Budget&), const TermPtr& t, long fuel) {
  Budget b{fuel};
  IsnVerdict v;
  v.witness = rec(t, b);
  v.fuel_spent = fuel - b.left;
  v.kind = v.witness ? IsnVerdict::Kind::Holds : IsnVerdict::Kind::Unknown;
  if (!v.witness) v.reason = "fuel exhausted";
  return v;
}

}  // namespace

IsnVerdict isn_dbeta(const TermPtr& t, long fuel) { return run(dbeta_rec, t, fuel); }
IsnVerdict isn_betapi(const TermPtr& t, long fuel) { return run(betapi_rec, t, fuel); }
IsnVerdict isn_lambdaj_new(const TermPtr& t, long fuel) { return run(newisn_rec, t, fuel); }

std::string witness_to_text(const IsnNodePtr& w, int indent) {
  std::string out(static_cast<size_t>(indent) * 2, ' ');
  out += "(" + w->rule + ") " + print_term(w->subject) + "\n";
  for (const auto& k : w->children) out += witness_to_text(k, indent + 1);
  return out;
}

namespace {

bool replay_fail(std::string* err, const std::string& msg) {
  if (err) *err = msg;
  return false;
}

}  // namespace

bool replay_witness(const IsnNodePtr& w, const std::string& flavor, std::string* err) {
  const TermPtr& t = w->subject;
  auto child_is = [&](size_t i, const TermPtr& expect) {
    return i < w->children.size() && alpha_eq(w->children[i]->subject, expect);
  };
  if (w->rule == "snvar" || w->rule == "var") {
    if (!is_var(t)) return replay_fail(err, "variable rule on non-variable");
    if (!w->children.empty()) return replay_fail(err, "variable rule with premises");
  } else if (w->rule == "snabs" || w->rule == "lambda") {
    if (!is_abs(t) || w->children.size() != 1 || !child_is(0, body(t)))
      return replay_fail(err, "abstraction rule mismatch");
  } else if (w->rule == "snapp") {
    auto f = classify(t);
    if (!is_gapp(t) || !f.is_whnf) return replay_fail(err, "snapp on non-whnf");
    if (!classify(cont(t)).is_whnf) return replay_fail(err, "snapp: continuation not whnf");
    if (w->children.size() != 3 || !child_is(0, head(t)) || !child_is(1, arg(t)) ||
        !child_is(2, cont(t)))
      return replay_fail(err, "snapp premises mismatch");
  } else if (w->rule == "snbeta") {
    auto ws = wh_step(t);
    if (!ws) return replay_fail(err, "snbeta on wh-normal term");
    if (w->children.size() != 3 || !child_is(0, ws->result) || !child_is(1, ws->dns) ||
        !child_is(2, ws->redex_arg))
      return replay_fail(err, "snbeta premises mismatch");
  } else if (w->rule == "hvar") {
    if (!is_gapp(t) || !is_var(head(t)) || w->children.size() != 2 ||
        !child_is(0, arg(t)) || !child_is(1, cont(t)))
      return replay_fail(err, "hvar mismatch");
  } else if (w->rule == "pi") {
    if (!is_gapp(t) || !is_gapp(head(t)) || !is_var(head(head(t))) ||
        w->children.size() != 1)
      return replay_fail(err, "pi rule shape mismatch");
  } else if (w->rule == "beta") {
    if (w->children.size() != 3) return replay_fail(err, "beta premises mismatch");
  } else if (w->rule == "isnredex1") {
    auto ws = wh_step(t);
    if (!ws || ws->dn.empty()) return replay_fail(err, "isnredex1 needs a distant redex");
    if (w->children.size() != 1 ||
        !child_is(0, replace_at(t, ws->W.hole, *step_root(Rule::Pi, ws->redex))))
      return replay_fail(err, "isnredex1 premise mismatch");
  } else if (w->rule == "isnredex2") {
    auto ws = wh_step(t);
    if (!ws || !ws->dn.empty()) return replay_fail(err, "isnredex2 needs a root beta redex");
    TermPtr contractum =
        substitute(substitute(ws->redex_arg, ws->lam_binder, ws->lam_body),
                   ws->cont_binder, ws->redex_cont);
    if (w->children.size() != 3 ||
        !child_is(0, replace_at(t, ws->W.hole, contractum)) ||
        !child_is(1, ws->lam_body) || !child_is(2, ws->redex_arg))
      return replay_fail(err, "isnredex2 premises mismatch");
  } else {
    return replay_fail(err, "unknown rule " + w->rule);
  }
  for (const auto& k : w->children)
    if (!replay_witness(k, flavor, err)) return false;
  return true;
}

namespace {

bool resolved_holds(const IsnVerdict& v) { return v.kind == IsnVerdict::Kind::Holds; }

}  // namespace

AdmissibleReport admissible_rule_check_I(const std::vector<RuleInstanceI>& instances,
                                         long fuel) {
  AdmissibleReport rep;
  for (const auto& inst : instances) {
    ++rep.instances;
    auto pu = isn_betapi(inst.u, fuel);
    auto ph = isn_betapi(inst.host, fuel);
    if (!resolved_holds(pu) || !resolved_holds(ph)) {
      ++rep.unknown;
      continue;
    }
    TermPtr built = gapp(var(inst.head_var), inst.u, "z", var("z"));
    TermPtr concl = substitute(built, inst.target_var, inst.host);
    ++rep.resolved;
    if (!resolved_holds(isn_betapi(concl, fuel)))
      rep.violations.push_back(print_term(concl));
  }
  return rep;
}

AdmissibleReport admissible_rule_check_II(const std::vector<RuleInstanceII>& instances,
                                          long fuel) {
  AdmissibleReport rep;
  for (const auto& inst : instances) {
    ++rep.instances;
    if (is_free_in(inst.target_var, inst.t) || is_free_in(inst.target_var, inst.u) ||
        is_free_in(inst.target_var, inst.r))
      continue;  // side condition violated; not an instance
    TermPtr contractum = substitute(substitute(inst.u, inst.lam_binder, inst.t),
                                    inst.cont_binder, inst.r);
    TermPtr premise1 = substitute(contractum, inst.target_var, inst.host);
    auto p1 = isn_betapi(premise1, fuel);
    auto pt = isn_betapi(inst.t, fuel);
    auto pu = isn_betapi(inst.u, fuel);
    if (!resolved_holds(p1) || !resolved_holds(pt) || !resolved_holds(pu)) {
      ++rep.unknown;
      continue;
    }
    TermPtr redex = gapp(abs(inst.lam_binder, inst.t), inst.u, inst.cont_binder, inst.r);
    TermPtr concl = substitute(redex, inst.target_var, inst.host);
    ++rep.resolved;
    if (!resolved_holds(isn_betapi(concl, fuel)))
      rep.violations.push_back(print_term(concl));
  }
  return rep;
}

AdmissibleReport admissible_rule_check_prefix_pi(const std::vector<TermPtr>& terms,
                                                 long fuel) {
  AdmissibleReport rep;
  for (const auto& t : terms) {
    for (auto& st : reducts(RuleSet{Rule::Pi}, t)) {
      ++rep.instances;
      auto after = isn_betapi(st.result, fuel);
      if (!resolved_holds(after)) {
        ++rep.unknown;
        continue;
      }
      ++rep.resolved;
      if (!resolved_holds(isn_betapi(t, fuel))) rep.violations.push_back(print_term(t));
    }
  }
  return rep;
}

}  // namespace lj
