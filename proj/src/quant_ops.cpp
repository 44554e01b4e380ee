#include "lj/quant_ops.hpp"

#include <algorithm>
#include <functional>

namespace lj {

namespace {

// Consumes one derivation per element of `need`, matched by type.
std::vector<DerivJPtr> take_by_types(std::vector<DerivJPtr>& pool, const MultiType& need) {
  std::vector<DerivJPtr> out;
  for (const auto& ty : need.elems) {
    auto it = std::find_if(pool.begin(), pool.end(),
                           [&](const DerivJPtr& d) { return qequal(d->type, ty); });
    if (it == pool.end()) throw DerivError("no premise derivation for " + print_qtype(ty));
    out.push_back(*it);
    pool.erase(it);
  }
  return out;
}

DerivJPtr take_one(std::vector<DerivJPtr>& pool, const QTypePtr& ty) {
  auto got = take_by_types(pool, msingle(ty));
  return got[0];
}

std::string fresh_for_deriv(const std::string& base, const DerivJPtr& d,
                            const std::set<std::string>& extra) {
  std::set<std::string> avoid = all_names(d->subject);
  avoid.insert(extra.begin(), extra.end());
  for (auto& [k, v] : d->env.m) avoid.insert(k);
  return fresh_name(base, avoid);
}

}  // namespace

DerivJPtr deriv_rename_free(const DerivJPtr& d, const std::string& x,
                            const std::string& y) {
  if (x == y) return d;
  if (d->env.get(x).empty() && !is_free_in(x, d->subject)) return d;
  auto n = std::make_shared<DerivJ>(*d);
  n->subject = rename_free(d->subject, x, y);
  if (!d->env.get(x).empty()) {
    n->env.set(y, munion(n->env.get(y), d->env.get(x)));
    n->env.m.erase(x);
  }
  switch (d->rule) {
    case DerivJ::Rule::Var: break;
    case DerivJ::Rule::Abs:
      if (d->subject->name != x) n->children = {deriv_rename_free(d->children[0], x, y)};
      break;
    case DerivJ::Rule::Many: {
      std::vector<DerivJPtr> kids;
      for (const auto& k : d->children) kids.push_back(deriv_rename_free(k, x, y));
      n->children = std::move(kids);
      break;
    }
    case DerivJ::Rule::App: {
      std::vector<DerivJPtr> kids;
      kids.push_back(deriv_rename_free(d->children[0], x, y));
      kids.push_back(deriv_rename_free(d->children[1], x, y));
      kids.push_back(d->subject->name == x ? d->children[2]
                                           : deriv_rename_free(d->children[2], x, y));
      n->children = std::move(kids);
      break;
    }
  }
  return n;
}

// --- substitution lemma ------------------------------------------------------

namespace {

DerivJPtr subst_rec(const DerivJPtr& d, const std::string& x, const TermPtr& u,
                    std::vector<DerivJPtr>& pool);

DerivJPtr subst_many(const DerivJPtr& m, const std::string& x, const TermPtr& u,
                     std::vector<DerivJPtr>& pool) {
  if (m->env.get(x).empty()) return m;
  std::vector<DerivJPtr> elems;
  for (const auto& e : m->children) elems.push_back(subst_rec(e, x, u, pool));
  return dmany(std::move(elems));
}

DerivJPtr subst_rec(const DerivJPtr& d, const std::string& x, const TermPtr& u,
                    std::vector<DerivJPtr>& pool) {
  if (d->env.get(x).empty()) return d;
  switch (d->rule) {
    case DerivJ::Rule::Var:
      // subject is x itself; swap the axiom for the matching u premise
      return take_one(pool, d->type);
    case DerivJ::Rule::Abs: {
      DerivJPtr kid = d->children[0];
      std::string b = d->subject->name;
      if (is_free_in(b, u)) {
        std::string nb = fresh_for_deriv(b, kid, free_vars(u));
        kid = deriv_rename_free(kid, b, nb);
        b = nb;
      }
      DerivJPtr kid2 = subst_rec(kid, x, u, pool);
      return dabs(abs(b, kid2->subject), kid2);
    }
    case DerivJ::Rule::App: {
      DerivJPtr hm = d->children[0], um = d->children[1], kr = d->children[2];
      std::string b = d->subject->name;
      if (is_free_in(b, u)) {
        std::string nb = fresh_for_deriv(b, kr, free_vars(u));
        kr = deriv_rename_free(kr, b, nb);
        b = nb;
      }
      DerivJPtr hm2 = subst_many(hm, x, u, pool);
      DerivJPtr um2 = subst_many(um, x, u, pool);
      DerivJPtr kr2 = kr->env.get(x).empty() ? kr : subst_rec(kr, x, u, pool);
      return dapp(gapp(hm2->subject, um2->subject, b, kr2->subject), hm2, um2, kr2,
                  d->pairs, d->fun_witness, d->arg_witness);
    }
    case DerivJ::Rule::Many: return subst_many(d, x, u, pool);
  }
  throw DerivError("substitute_derivation: unreachable");
}

}  // namespace

DerivJPtr substitute_derivation(const DerivJPtr& d_t, const std::string& x,
                                const DerivJPtr& d_u_many) {
  MultiType m = d_t->env.get(x);
  if (m.empty()) throw DerivError("substitute_derivation: x is not free in the subject");
  if (d_u_many->rule != DerivJ::Rule::Many)
    throw DerivError("substitute_derivation: argument derivation must be a many node");
  if (!mequal(d_u_many->mtype, m))
    throw DerivError("substitute_derivation: multiset mismatch between x and u");
  std::vector<DerivJPtr> pool = d_u_many->children;
  DerivJPtr out = subst_rec(d_t, x, d_u_many->subject, pool);
  if (!pool.empty()) throw DerivError("substitute_derivation: unused argument premises");
  return out;
}

// --- anti-substitution --------------------------------------------------------

namespace {

struct AntiParts {
  DerivJPtr dt;
  std::vector<DerivJPtr> uparts;
};

AntiParts anti_rec(const DerivJPtr& d, const TermPtr& host, const std::string& x,
                   const TermPtr& u);

AntiParts anti_many(const DerivJPtr& m, const TermPtr& host, const std::string& x,
                    const TermPtr& u) {
  AntiParts out;
  std::vector<DerivJPtr> elems;
  for (const auto& e : m->children) {
    AntiParts p = anti_rec(e, host, x, u);
    elems.push_back(p.dt);
    out.uparts.insert(out.uparts.end(), p.uparts.begin(), p.uparts.end());
  }
  out.dt = dmany(std::move(elems));
  return out;
}

AntiParts anti_rec(const DerivJPtr& d, const TermPtr& host, const std::string& x,
                   const TermPtr& u) {
  if (!is_free_in(x, host)) return {d, {}};
  switch (host->kind) {
    case Term::Kind::Var:
      // host is x; d types (an alpha-variant of) u
      return {dvar(x, d->type), {d}};
    case Term::Kind::Abs: {
      if (d->rule != DerivJ::Rule::Abs)
        throw DerivError("anti_substitute: abs shape mismatch");
      DerivJPtr kid = d->children[0];
      std::string b = d->subject->name;
      // guard against the subject binder clashing with x or fv(u)
      if (b == x || is_free_in(b, u)) {
        std::string nb = fresh_for_deriv(b, kid, free_vars(u));
        kid = deriv_rename_free(kid, b, nb);
        b = nb;
      }
      AntiParts p = anti_rec(kid, body(host), x, u);
      return {dabs(abs(b, p.dt->subject), p.dt), std::move(p.uparts)};
    }
    case Term::Kind::GApp: {
      if (d->rule != DerivJ::Rule::App)
        throw DerivError("anti_substitute: app shape mismatch");
      DerivJPtr hm = d->children[0], um = d->children[1], kr = d->children[2];
      std::string b = d->subject->name;
      if (b == x || is_free_in(b, u)) {
        std::string nb = fresh_for_deriv(b, kr, free_vars(u));
        kr = deriv_rename_free(kr, b, nb);
        b = nb;
      }
      AntiParts out;
      AntiParts ph = is_free_in(x, head(host)) ? anti_many(hm, head(host), x, u)
                                               : AntiParts{hm, {}};
      AntiParts pu = is_free_in(x, arg(host)) ? anti_many(um, arg(host), x, u)
                                              : AntiParts{um, {}};
      AntiParts pr = (host->name != x && is_free_in(x, cont(host)))
                         ? anti_rec(kr, cont(host), x, u)
                         : AntiParts{kr, {}};
      out.dt = dapp(gapp(ph.dt->subject, pu.dt->subject, b, pr.dt->subject), ph.dt,
                    pu.dt, pr.dt, d->pairs, d->fun_witness, d->arg_witness);
      out.uparts = std::move(ph.uparts);
      out.uparts.insert(out.uparts.end(), pu.uparts.begin(), pu.uparts.end());
      out.uparts.insert(out.uparts.end(), pr.uparts.begin(), pr.uparts.end());
      return out;
    }
  }
  throw DerivError("anti_substitute: unreachable");
}

}  // namespace

AntiSubst anti_substitute_derivation(const DerivJPtr& d, const TermPtr& t,
                                     const std::string& x, const TermPtr& u) {
  if (!is_free_in(x, t))
    throw DerivError("anti_substitute_derivation: x is not free in t");
  AntiParts p = anti_rec(d, t, x, u);
  AntiSubst out;
  out.d_t = p.dt;
  out.d_u_many = dmany(std::move(p.uparts));
  out.m = out.d_u_many->mtype;
  return out;
}

// --- perml ---------------------------------------------------------------------

DerivJPtr perml_pull(const DerivJPtr& d) {
  auto shape = abstraction_shape(d->subject);
  if (!shape) throw DerivError("perml_pull: subject has no abstraction shape");
  if (shape->layers.empty()) {
    if (d->rule != DerivJ::Rule::Abs) throw DerivError("perml_pull: not an abs node");
    return d;
  }
  if (d->rule != DerivJ::Rule::App) throw DerivError("perml_pull: not an app node");
  DerivJPtr hm = d->children[0], um = d->children[1];
  DerivJPtr pulled = perml_pull(d->children[2]);
  std::string x = pulled->subject->name;
  DerivJPtr kb = pulled->children[0];
  std::string b = d->subject->name;
  std::set<std::string> avoid = free_vars(hm->subject);
  auto fu = free_vars(um->subject);
  avoid.insert(fu.begin(), fu.end());
  avoid.insert(b);
  if (avoid.count(x)) {
    std::string nx = fresh_for_deriv(x, kb, avoid);
    kb = deriv_rename_free(kb, x, nx);
    x = nx;
  }
  DerivJPtr app2 = dapp(gapp(hm->subject, um->subject, b, kb->subject), hm, um, kb,
                        d->pairs, d->fun_witness, d->arg_witness);
  return dabs(abs(x, app2->subject), app2);
}

namespace {

DerivJPtr push_rec(const std::string& x, const DerivJPtr& kd, int depth) {
  if (depth == 0) return dabs(abs(x, kd->subject), kd);
  if (kd->rule != DerivJ::Rule::App)
    throw DerivError("perml_push: continuation spine shorter than depth");
  const DerivJPtr& hm = kd->children[0];
  const DerivJPtr& um = kd->children[1];
  if (!hm->env.get(x).empty() || !um->env.get(x).empty())
    throw DerivError("perml_push: binder occurs outside the core");
  DerivJPtr kc = push_rec(x, kd->children[2], depth - 1);
  return dapp(gapp(hm->subject, um->subject, kd->subject->name, kc->subject), hm, um,
              kc, kd->pairs, kd->fun_witness, kd->arg_witness);
}

}  // namespace

DerivJPtr perml_push(const DerivJPtr& d, int depth) {
  if (d->rule != DerivJ::Rule::Abs) throw DerivError("perml_push: not an abs node");
  std::string x = d->subject->name;
  DerivJPtr kb = d->children[0];
  int spine = 0;
  for (TermPtr cur = kb->subject; cur->kind == Term::Kind::GApp; cur = cur->c) ++spine;
  if (depth < 0) depth = spine;
  if (depth > spine) throw DerivError("perml_push: depth exceeds continuation spine");
  return push_rec(x, kb, depth);
}

// --- subject reduction ----------------------------------------------------------

namespace {

DerivJPtr reduce_root_nonerasing(const DerivJPtr& d) {
  const TermPtr& t = d->subject;
  if (!is_gapp(t)) throw DerivError("subject_reduce: not an application");
  if (!abstraction_shape(head(t)))
    throw DerivError("subject_reduce: head has no abstraction shape");
  DerivJPtr hm = d->children[0], um = d->children[1], kr = d->children[2];
  if (kr->env.get(t->name).empty())
    throw DerivError("subject_reduce: erasing step (continuation binder unused)");
  std::vector<DerivJPtr> pool = um->children;
  std::vector<DerivJPtr> joined;
  for (const auto& elem : hm->children) {
    DerivJPtr pulled = perml_pull(elem);
    const std::string& x = pulled->subject->name;
    DerivJPtr bodyd = pulled->children[0];
    MultiType mi = bodyd->env.get(x);
    if (mi.empty())
      throw DerivError("subject_reduce: erasing step (lambda binder unused)");
    joined.push_back(substitute_derivation(bodyd, x, dmany(take_by_types(pool, mi))));
  }
  if (!pool.empty()) throw DerivError("subject_reduce: leftover argument premises");
  return substitute_derivation(kr, t->name, dmany(std::move(joined)));
}

DerivJPtr reduce_route(const DerivJPtr& d, const Path& pos, size_t i) {
  if (i == pos.size()) return reduce_root_nonerasing(d);
  switch (d->rule) {
    case DerivJ::Rule::Abs: {
      if (pos[i] != 0) throw DerivError("subject_reduce: bad path");
      DerivJPtr k = reduce_route(d->children[0], pos, i + 1);
      return dabs(abs(d->subject->name, k->subject), k);
    }
    case DerivJ::Rule::App: {
      DerivJPtr hm = d->children[0], um = d->children[1], kr = d->children[2];
      if (pos[i] == 0) {
        std::vector<DerivJPtr> elems;
        for (const auto& e : hm->children) elems.push_back(reduce_route(e, pos, i + 1));
        hm = dmany(std::move(elems));
      } else if (pos[i] == 1) {
        std::vector<DerivJPtr> elems;
        for (const auto& e : um->children) elems.push_back(reduce_route(e, pos, i + 1));
        um = dmany(std::move(elems));
      } else if (pos[i] == 2) {
        kr = reduce_route(kr, pos, i + 1);
      } else {
        throw DerivError("subject_reduce: bad path");
      }
      return dapp(gapp(hm->subject, um->subject, d->subject->name, kr->subject), hm, um,
                  kr, d->pairs, d->fun_witness, d->arg_witness);
    }
    default: throw DerivError("subject_reduce: bad path");
  }
}

}  // namespace

DerivJPtr subject_reduce(const DerivJPtr& d, const Path& pos) {
  return reduce_route(d, pos, 0);
}

// --- erasing subject reduction ---------------------------------------------------

namespace {

ErasingResult erasing_rec(const DerivJPtr& d, const Path& hole, size_t i) {
  if (i < hole.size()) {
    DerivJPtr hm = d->children[0], um = d->children[1], kr = d->children[2];
    if (d->rule != DerivJ::Rule::App) throw DerivError("erasing_reduce: bad W path");
    if (hole[i] == 0) {
      std::vector<DerivJPtr> elems;
      std::vector<DerivJPtr> discarded;
      for (size_t e = 0; e < hm->children.size(); ++e) {
        ErasingResult r = erasing_rec(hm->children[e], hole, i + 1);
        elems.push_back(r.deriv);
        if (e == 0) discarded = std::move(r.discarded);
      }
      DerivJPtr hm2 = dmany(std::move(elems));
      DerivJPtr out =
          dapp(gapp(hm2->subject, um->subject, d->subject->name, kr->subject), hm2, um,
               kr, d->pairs, d->fun_witness, d->arg_witness);
      return {out, std::move(discarded)};
    }
    if (hole[i] != 2) throw DerivError("erasing_reduce: bad W path");
    ErasingResult r = erasing_rec(kr, hole, i + 1);
    const std::string& b = d->subject->name;
    MultiType n_new = r.deriv->env.get(b);
    // select the sub-multiset of pairs matching the new binder multiset
    std::vector<std::pair<MultiType, QTypePtr>> pairs2;
    std::vector<bool> used(d->pairs.size(), false);
    for (const auto& rho : n_new.elems) {
      bool found = false;
      for (size_t p = 0; p < d->pairs.size() && !found; ++p) {
        if (!used[p] && qequal(d->pairs[p].second, rho)) {
          used[p] = true;
          pairs2.push_back(d->pairs[p]);
          found = true;
        }
      }
      if (!found)
        throw DerivError("erasing_reduce: new binder multiset not included in pairs");
    }
    std::vector<DerivJPtr> hpool = hm->children;
    std::vector<DerivJPtr> upool = um->children;
    DerivJPtr hm2;
    QTypePtr fw;
    if (!pairs2.empty()) {
      std::vector<QTypePtr> arrows;
      for (auto& [m, tau] : pairs2) arrows.push_back(qarrow(m, tau));
      hm2 = dmany(take_by_types(hpool, mmake(std::move(arrows))));
    } else {
      hm2 = dmany({hm->children[0]});
      fw = hm->children[0]->type;
    }
    MultiType uneed;
    for (auto& [m, tau] : pairs2) uneed = munion(uneed, m);
    DerivJPtr um2;
    QTypePtr aw;
    if (!uneed.empty()) {
      um2 = dmany(take_by_types(upool, uneed));
    } else {
      um2 = dmany({um->children[0]});
      aw = um->children[0]->type;
    }
    DerivJPtr out = dapp(gapp(hm2->subject, um2->subject, b, r.deriv->subject), hm2, um2,
                         r.deriv, std::move(pairs2), fw, aw);
    return {out, std::move(r.discarded)};
  }
  // base: the redex node
  if (d->rule != DerivJ::Rule::App) throw DerivError("erasing_reduce: redex is not an app");
  DerivJPtr hm = d->children[0], um = d->children[1], kr = d->children[2];
  const std::string& y = d->subject->name;
  if (kr->env.get(y).empty()) {
    // case 1: continuation binder unused; reduct is the continuation
    DerivJPtr pulled = perml_pull(hm->children[0]);
    ErasingResult out;
    out.deriv = kr;
    out.discarded = {pulled->children[0], um->children[0]};
    return out;
  }
  // case 2: lambda binder unused, continuation binder used
  std::vector<DerivJPtr> bodies;
  for (const auto& elem : hm->children) {
    DerivJPtr pulled = perml_pull(elem);
    DerivJPtr bodyd = pulled->children[0];
    if (!bodyd->env.get(pulled->subject->name).empty())
      throw DerivError("erasing_reduce: step is not erasing");
    bodies.push_back(bodyd);
  }
  ErasingResult out;
  out.deriv = substitute_derivation(kr, y, dmany(std::move(bodies)));
  out.discarded = {um->children[0]};
  return out;
}

}  // namespace

ErasingResult erasing_reduce(const DerivJPtr& d) {
  auto ws = wh_step(d->subject);
  if (!ws) throw DerivError("erasing_reduce: subject has no weak-head redex");
  bool x_used = is_free_in(ws->lam_binder, ws->lam_body);
  bool y_used = is_free_in(ws->cont_binder, ws->redex_cont);
  if (x_used && y_used)
    throw DerivError("erasing_reduce: step is non-erasing (route to subject_reduce)");
  return erasing_rec(d, ws->W.hole, 0);
}

// --- typing normal forms -----------------------------------------------------------

namespace {

DerivJPtr tnf_rec(const TermPtr& t, const QTypePtr& target) {
  switch (t->kind) {
    case Term::Kind::Var: return dvar(t->name, target ? target : default_witness());
    case Term::Kind::Abs: {
      DerivJPtr bodyd = tnf_rec(t->a, nullptr);
      return dabs(abs(t->name, bodyd->subject), bodyd);
    }
    case Term::Kind::GApp: break;
  }
  DerivJPtr kr = tnf_rec(t->c, classify(t->c).is_mvar ? target : nullptr);
  MultiType taus = kr->env.get(t->name);
  DerivJPtr hm;
  QTypePtr fw;
  std::vector<std::pair<MultiType, QTypePtr>> pairs;
  if (taus.empty()) {
    DerivJPtr dh = tnf_rec(t->a, nullptr);
    fw = dh->type;
    hm = dmany({dh});
  } else {
    std::vector<DerivJPtr> elems;
    for (const auto& tau : taus.elems) {
      elems.push_back(tnf_rec(t->a, qarrow(MultiType{}, tau)));
      pairs.push_back({MultiType{}, tau});
    }
    hm = dmany(std::move(elems));
  }
  DerivJPtr du = tnf_rec(t->b, nullptr);
  QTypePtr aw = du->type;
  DerivJPtr um = dmany({du});
  return dapp(t, hm, um, kr, std::move(pairs), fw, aw);
}

}  // namespace

DerivJPtr type_normal_form(const TermPtr& t, const QTypePtr& target) {
  auto flags = classify(t);
  if (!flags.is_m) throw DerivError("type_normal_form: subject is not a dbeta-normal form");
  if (target && !flags.is_mvar)
    throw DerivError("type_normal_form: target types are only for m_var subjects");
  return tnf_rec(t, target);
}

// --- completeness-driven synthesis ---------------------------------------------------

namespace {

struct SynthCtx {
  long budget;
  int depth = 0;
  static constexpr int kMaxDepth = 1200;
  bool out() { return --budget < 0 || depth > kMaxDepth; }
};

struct SynthDepth {
  SynthCtx& c;
  explicit SynthDepth(SynthCtx& cc) : c(cc) { ++c.depth; }
  ~SynthDepth() { --c.depth; }
};

DerivJPtr synth_rec(const TermPtr& t, const QTypePtr& target, SynthCtx& ctx);

// Transforms a derivation of the wh-reduct subterm back into one of the
// corresponding subterm of t, walking the weak-head context.
DerivJPtr expand_rec(const DerivJPtr& d1, const TermPtr& t_cur, const WhStep& ws,
                     size_t i, SynthCtx& ctx) {
  if (i == ws.W.hole.size()) {
    // at the redex: t_cur = Dn<\x.s>(u, y.r), d1 types [contractum/y]r
    const TermPtr& u = ws.redex_arg;
    const TermPtr& r = ws.redex_cont;
    const std::string& y = ws.cont_binder;
    bool x_used = is_free_in(ws.x_tilde, ws.dns);
    bool y_used = is_free_in(y, r);
    if (x_used && y_used) {
      // non-erasing subject expansion
      AntiSubst a1 = anti_substitute_derivation(d1, r, y, ws.contractum);
      std::vector<DerivJPtr> pushed, uparts;
      std::vector<std::pair<MultiType, QTypePtr>> pairs;
      for (const auto& elem : a1.d_u_many->children) {
        AntiSubst a2 = anti_substitute_derivation(elem, ws.dns, ws.x_tilde, u);
        DerivJPtr lam = dabs(abs(ws.x_tilde, a2.d_t->subject), a2.d_t);
        pushed.push_back(perml_push(lam, static_cast<int>(ws.dn.size())));
        pairs.push_back({a2.m, elem->type});
        for (const auto& up : a2.d_u_many->children) uparts.push_back(up);
      }
      return dapp(t_cur, dmany(std::move(pushed)), dmany(std::move(uparts)), a1.d_t,
                  std::move(pairs), nullptr, nullptr);
    }
    if (!x_used && y_used) {
      AntiSubst a1 = anti_substitute_derivation(d1, r, y, ws.dns);
      DerivJPtr du = synth_rec(u, nullptr, ctx);
      if (!du) return nullptr;
      std::string xf = fresh_name(ws.x_tilde, all_names(ws.dns));
      std::vector<DerivJPtr> pushed;
      std::vector<std::pair<MultiType, QTypePtr>> pairs;
      for (const auto& elem : a1.d_u_many->children) {
        DerivJPtr lam = dabs(abs(xf, elem->subject), elem);
        pushed.push_back(perml_push(lam, static_cast<int>(ws.dn.size())));
        pairs.push_back({MultiType{}, elem->type});
      }
      return dapp(t_cur, dmany(std::move(pushed)), dmany({du}), a1.d_t,
                  std::move(pairs), nullptr, du->type);
    }
    // continuation binder unused: d1 types r itself
    DerivJPtr dDn = synth_rec(ws.dns, nullptr, ctx);
    if (!dDn) return nullptr;
    DerivJPtr du = synth_rec(u, nullptr, ctx);
    if (!du) return nullptr;
    DerivJPtr lam = dabs(abs(ws.x_tilde, dDn->subject), dDn);
    DerivJPtr pushed = perml_push(lam, static_cast<int>(ws.dn.size()));
    return dapp(t_cur, dmany({pushed}), dmany({du}), d1, {}, pushed->type, du->type);
  }
  int step = ws.W.hole[i];
  if (d1->rule != DerivJ::Rule::App)
    throw DerivError("expand: weak-head path does not match the derivation");
  DerivJPtr hm = d1->children[0], um = d1->children[1], kr = d1->children[2];
  if (step == 0) {
    std::vector<DerivJPtr> elems;
    for (const auto& e : hm->children) {
      DerivJPtr e2 = expand_rec(e, head(t_cur), ws, i + 1, ctx);
      if (!e2) return nullptr;
      elems.push_back(e2);
    }
    return dapp(t_cur, dmany(std::move(elems)), um, kr, d1->pairs, d1->fun_witness,
                d1->arg_witness);
  }
  // step == 2: continuation position under a neutral head
  MultiType n_old = kr->env.get(t_cur->name);
  DerivJPtr kr2 = expand_rec(kr, cont(t_cur), ws, i + 1, ctx);
  if (!kr2) return nullptr;
  MultiType n_new = kr2->env.get(t_cur->name);
  if (mequal(n_new, n_old))
    return dapp(t_cur, hm, um, kr2, d1->pairs, d1->fun_witness, d1->arg_witness);
  // the binder multiset changed: re-synthesize the neutral head and the
  // argument witness at the new types
  DerivJPtr du = synth_rec(arg(t_cur), nullptr, ctx);
  if (!du) return nullptr;
  DerivJPtr hm2;
  QTypePtr fw;
  std::vector<std::pair<MultiType, QTypePtr>> pairs;
  if (!n_new.empty()) {
    std::vector<DerivJPtr> elems;
    for (const auto& rho : n_new.elems) {
      DerivJPtr dn = synth_rec(head(t_cur), qarrow(MultiType{}, rho), ctx);
      if (!dn) return nullptr;
      elems.push_back(dn);
      pairs.push_back({MultiType{}, rho});
    }
    hm2 = dmany(std::move(elems));
  } else {
    DerivJPtr dn = synth_rec(head(t_cur), nullptr, ctx);
    if (!dn) return nullptr;
    fw = dn->type;
    hm2 = dmany({dn});
  }
  return dapp(t_cur, hm2, dmany({du}), kr2, std::move(pairs), fw, du->type);
}

DerivJPtr synth_rec(const TermPtr& t, const QTypePtr& target, SynthCtx& ctx) {
  if (ctx.out()) return nullptr;
  SynthDepth guard(ctx);
  switch (t->kind) {
    case Term::Kind::Var: return dvar(t->name, target ? target : default_witness());
    case Term::Kind::Abs: {
      DerivJPtr bodyd = synth_rec(t->a, nullptr, ctx);
      if (!bodyd) return nullptr;
      return dabs(abs(t->name, bodyd->subject), bodyd);
    }
    case Term::Kind::GApp: break;
  }
  auto ws = wh_step(t);
  if (!ws) {
    // weak-head normal: neutral head, normal-ish continuation
    DerivJPtr kr = synth_rec(t->c, is_neutral(t->c) ? target : nullptr, ctx);
    if (!kr) return nullptr;
    MultiType taus = kr->env.get(t->name);
    DerivJPtr hm;
    QTypePtr fw;
    std::vector<std::pair<MultiType, QTypePtr>> pairs;
    if (taus.empty()) {
      DerivJPtr dh = synth_rec(t->a, nullptr, ctx);
      if (!dh) return nullptr;
      fw = dh->type;
      hm = dmany({dh});
    } else {
      std::vector<DerivJPtr> elems;
      for (const auto& tau : taus.elems) {
        DerivJPtr dh = synth_rec(t->a, qarrow(MultiType{}, tau), ctx);
        if (!dh) return nullptr;
        elems.push_back(dh);
        pairs.push_back({MultiType{}, tau});
      }
      hm = dmany(std::move(elems));
    }
    DerivJPtr du = synth_rec(t->b, nullptr, ctx);
    if (!du) return nullptr;
    return dapp(t, hm, dmany({du}), kr, std::move(pairs), fw, du->type);
  }
  DerivJPtr d1 = synth_rec(ws->result, nullptr, ctx);
  if (!d1) return nullptr;
  return expand_rec(d1, t, *ws, 0, ctx);
}

}  // namespace

std::optional<DerivJPtr> synthesize_quant(const TermPtr& t, long fuel) {
  SynthCtx ctx{fuel};
  DerivJPtr d = synth_rec(t, nullptr, ctx);
  if (!d) return std::nullopt;
  return d;
}

std::optional<DerivJPtr> synthesize_quant_at(const TermPtr& t, const QTypePtr& target,
                                             long fuel) {
  if (!is_neutral(t))
    throw DerivError("synthesize_quant_at: targets require a neutral subject");
  SynthCtx ctx{fuel};
  DerivJPtr d = synth_rec(t, target, ctx);
  if (!d) return std::nullopt;
  return d;
}

// --- typing behavior of pi ---------------------------------------------------------

namespace {

DerivJPtr pi_root(const DerivJPtr& d) {
  const TermPtr& t = d->subject;
  if (!is_gapp(t) || !is_gapp(head(t))) throw DerivError("pi_transform: no root pi redex");
  DerivJPtr hm = d->children[0], um_out = d->children[1], kr_out = d->children[2];
  const std::string& y = t->name;
  const TermPtr inner = head(t);
  std::string x = inner->name;

  // inner continuation derivations, with the binder freshened if it would
  // capture in r0(u', y.r')
  std::set<std::string> clash = free_vars(um_out->subject);
  auto fr = free_vars(kr_out->subject);
  clash.insert(fr.begin(), fr.end());
  clash.insert(y);
  std::string x2 = x;
  bool rename = clash.count(x) > 0;

  std::vector<DerivJPtr> inner_elems = hm->children;
  std::vector<DerivJPtr> krs;
  for (auto& e : inner_elems) {
    if (e->rule != DerivJ::Rule::App)
      throw DerivError("pi_transform: inner premise is not an application node");
    DerivJPtr kri = e->children[2];
    if (rename) {
      if (x2 == x) {
        std::set<std::string> avoid = clash;
        auto an = all_names(kri->subject);
        avoid.insert(an.begin(), an.end());
        x2 = fresh_name(x, avoid);
      }
      kri = deriv_rename_free(kri, x, x2);
    }
    krs.push_back(kri);
  }

  DerivJPtr phi_r = dmany(krs);
  // Psi: r0(u', y.r') with the outer pairs
  DerivJPtr psi = dapp(gapp(phi_r->subject, um_out->subject, y, kr_out->subject), phi_r,
                       um_out, kr_out, d->pairs, d->fun_witness, d->arg_witness);

  bool x_used = !psi->env.get(x2).empty();
  DerivJPtr tm_new, um_new;
  QTypePtr fw, aw;
  std::vector<std::pair<MultiType, QTypePtr>> pairs_new;
  if (x_used) {
    std::vector<DerivJPtr> telems, uelems;
    MultiType uneed;
    for (const auto& e : inner_elems) {
      for (const auto& p : e->pairs) {
        pairs_new.push_back(p);
        uneed = munion(uneed, p.first);
      }
      for (const auto& k : e->children[0]->children) telems.push_back(k);
    }
    if (pairs_new.empty())
      throw DerivError("pi_transform: binder used but no inner pairs");
    tm_new = dmany(std::move(telems));
    if (!uneed.empty()) {
      std::vector<DerivJPtr> pool;
      for (const auto& e : inner_elems)
        if (!e->arg_witness)
          for (const auto& k : e->children[1]->children) pool.push_back(k);
      uelems = take_by_types(pool, uneed);
      um_new = dmany(std::move(uelems));
    } else {
      um_new = dmany({inner_elems[0]->children[1]->children[0]});
      aw = inner_elems[0]->children[1]->children[0]->type;
    }
  } else {
    // all inner index sets empty: keep the first element's witnesses
    const DerivJPtr& e0 = inner_elems[0];
    if (!e0->pairs.empty())
      throw DerivError("pi_transform: binder unused but inner pairs nonempty");
    tm_new = e0->children[0];
    um_new = e0->children[1];
    fw = e0->fun_witness;
    aw = e0->arg_witness;
    pairs_new = {};
  }
  return dapp(gapp(tm_new->subject, um_new->subject, x2, psi->subject), tm_new, um_new,
              psi, std::move(pairs_new), fw, aw);
}

DerivJPtr pi_route(const DerivJPtr& d, const Path& pos, size_t i) {
  if (i == pos.size()) return pi_root(d);
  switch (d->rule) {
    case DerivJ::Rule::Abs: {
      if (pos[i] != 0) throw DerivError("pi_transform: bad path");
      DerivJPtr k = pi_route(d->children[0], pos, i + 1);
      return dabs(abs(d->subject->name, k->subject), k);
    }
    case DerivJ::Rule::App: {
      DerivJPtr hm = d->children[0], um = d->children[1], kr = d->children[2];
      if (pos[i] == 0) {
        std::vector<DerivJPtr> elems;
        for (const auto& e : hm->children) elems.push_back(pi_route(e, pos, i + 1));
        hm = dmany(std::move(elems));
      } else if (pos[i] == 1) {
        std::vector<DerivJPtr> elems;
        for (const auto& e : um->children) elems.push_back(pi_route(e, pos, i + 1));
        um = dmany(std::move(elems));
      } else if (pos[i] == 2) {
        kr = pi_route(kr, pos, i + 1);
      } else {
        throw DerivError("pi_transform: bad path");
      }
      return dapp(gapp(hm->subject, um->subject, d->subject->name, kr->subject), hm, um,
                  kr, d->pairs, d->fun_witness, d->arg_witness);
    }
    default: throw DerivError("pi_transform: bad path");
  }
}

}  // namespace

DerivJPtr pi_transform(const DerivJPtr& d, const Path& pos) {
  return pi_route(d, pos, 0);
}

// --- bound check -------------------------------------------------------------------

std::optional<bool> bound_check(const TermPtr& t, const DerivJPtr& d,
                                const SnOptions& opt) {
  long n = derivation_size(d);
  auto nonerasing = max_nonerasing_dbeta(t, opt);
  if (!nonerasing) return std::nullopt;
  auto total = maxred_dbeta(t, opt.rec_fuel);
  if (!total) return std::nullopt;
  return *nonerasing <= n && *total <= n;
}

}  // namespace lj
