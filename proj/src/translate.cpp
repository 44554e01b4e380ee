#include "lj/translate.hpp"

#include <algorithm>
#include <deque>

#include "lj/reduce.hpp"

namespace lj {

namespace {

// Fresh left/right names for the star-family maps: binder y gives y§1, y§2.
std::pair<std::string, std::string> star_pair(const std::string& y,
                                              const std::set<std::string>& avoid) {
  std::string l = fresh_name(y + "\xc2\xa7" + "1", avoid);
  std::set<std::string> avoid2 = avoid;
  avoid2.insert(l);
  std::string r = fresh_name(y + "\xc2\xa7" + "2", avoid2);
  return {l, r};
}

}  // namespace

ESPtr j_to_es_naive(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return esvar(t->name);
    case Term::Kind::Abs: return esabs(t->name, j_to_es_naive(t->a));
    case Term::Kind::GApp:
      return essub(j_to_es_naive(t->c), t->name,
                   esapp(j_to_es_naive(t->a), j_to_es_naive(t->b)));
  }
  return nullptr;
}

ESPtr j_to_es_star(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return esvar(t->name);
    case Term::Kind::Abs: return esabs(t->name, j_to_es_star(t->a));
    case Term::Kind::GApp: {
      ESPtr th = j_to_es_star(t->a);
      ESPtr tu = j_to_es_star(t->b);
      ESPtr tr = j_to_es_star(t->c);
      std::set<std::string> avoid = es_all_names(th);
      auto n1 = es_all_names(tu);
      avoid.insert(n1.begin(), n1.end());
      auto n2 = es_all_names(tr);
      avoid.insert(n2.begin(), n2.end());
      avoid.insert(t->name);
      auto [x1, x2] = star_pair(t->name, avoid);
      ESPtr body = es_substitute(esapp(esvar(x1), esvar(x2)), t->name, tr);
      return essub(essub(body, x2, tu), x1, th);
    }
  }
  return nullptr;
}

TermPtr es_to_j_bullet(const ESPtr& m) {
  switch (m->kind) {
    case ESTerm::Kind::Var: return var(m->name);
    case ESTerm::Kind::Abs: return abs(m->name, es_to_j_bullet(m->a));
    case ESTerm::Kind::App:
      return gapp(es_to_j_bullet(m->a), es_to_j_bullet(m->b), "z", var("z"));
    case ESTerm::Kind::Sub:
      return gapp(abs("z", var("z")), es_to_j_bullet(m->b), m->name,
                  es_to_j_bullet(m->a));
  }
  return nullptr;
}

TermPtr es_to_j_bullet2(const ESPtr& m) {
  switch (m->kind) {
    case ESTerm::Kind::Var: return var(m->name);
    case ESTerm::Kind::Abs: return abs(m->name, es_to_j_bullet2(m->a));
    case ESTerm::Kind::App: {
      TermPtr tm = es_to_j_bullet2(m->a);
      TermPtr tn = es_to_j_bullet2(m->b);
      std::string y = fresh_name("y", free_vars(tm));
      return gapp(abs("z", var("z")), tn, y, gapp(tm, var(y), "z", var("z")));
    }
    case ESTerm::Kind::Sub:
      return gapp(abs("z", var("z")), es_to_j_bullet2(m->b), m->name,
                  es_to_j_bullet2(m->a));
  }
  return nullptr;
}

LamPtr es_to_lam_sharp(const ESPtr& m) {
  switch (m->kind) {
    case ESTerm::Kind::Var: return lvar(m->name);
    case ESTerm::Kind::Abs: return labs(m->name, es_to_lam_sharp(m->a));
    case ESTerm::Kind::App:
      return lapp(es_to_lam_sharp(m->a), es_to_lam_sharp(m->b));
    case ESTerm::Kind::Sub:
      return lapp(labs(m->name, es_to_lam_sharp(m->a)), es_to_lam_sharp(m->b));
  }
  return nullptr;
}

LamPtr j_to_lam_traditional(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return lvar(t->name);
    case Term::Kind::Abs: return labs(t->name, j_to_lam_traditional(t->a));
    case Term::Kind::GApp:
      return lapp(labs(t->name, j_to_lam_traditional(t->c)),
                  lapp(j_to_lam_traditional(t->a), j_to_lam_traditional(t->b)));
  }
  return nullptr;
}

LamPtr j_to_lam_star_sharp(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return lvar(t->name);
    case Term::Kind::Abs: return labs(t->name, j_to_lam_star_sharp(t->a));
    case Term::Kind::GApp: {
      LamPtr th = j_to_lam_star_sharp(t->a);
      LamPtr tu = j_to_lam_star_sharp(t->b);
      LamPtr tr = j_to_lam_star_sharp(t->c);
      std::set<std::string> avoid = lam_free_vars(th);
      auto n1 = lam_free_vars(tu);
      avoid.insert(n1.begin(), n1.end());
      auto n2 = lam_free_vars(tr);
      avoid.insert(n2.begin(), n2.end());
      avoid.insert(t->name);
      auto [x1, x2] = star_pair(t->name, avoid);
      // (\y2.(\y1.[y1 y2/y] r) t) u
      LamPtr body = lam_substitute(lapp(lvar(x1), lvar(x2)), t->name, tr);
      return lapp(labs(x2, lapp(labs(x1, body), th)), tu);
    }
  }
  return nullptr;
}

TermPtr j_to_j_star_bullet(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return t;
    case Term::Kind::Abs: return abs(t->name, j_to_j_star_bullet(t->a));
    case Term::Kind::GApp: {
      TermPtr th = j_to_j_star_bullet(t->a);
      TermPtr tu = j_to_j_star_bullet(t->b);
      TermPtr tr = j_to_j_star_bullet(t->c);
      std::set<std::string> avoid = free_vars(th);
      auto n1 = free_vars(tu);
      avoid.insert(n1.begin(), n1.end());
      auto n2 = free_vars(tr);
      avoid.insert(n2.begin(), n2.end());
      avoid.insert(t->name);
      auto [y1, y2] = star_pair(t->name, avoid);
      TermPtr id = abs("z", var("z"));
      TermPtr inner = substitute(gapp(var(y1), var(y2), "z", var("z")), t->name, tr);
      return gapp(id, th, y1, gapp(id, tu, y2, inner));
    }
  }
  return nullptr;
}

std::optional<MapId> map_from_name(const std::string& s) {
  if (s == "naive") return MapId::Naive;
  if (s == "star") return MapId::Star;
  if (s == "bullet") return MapId::Bullet;
  if (s == "bullet2") return MapId::Bullet2;
  if (s == "sharp") return MapId::Sharp;
  if (s == "jlam") return MapId::Jlam;
  if (s == "star-sharp") return MapId::StarSharp;
  if (s == "star-bullet") return MapId::StarBullet;
  return std::nullopt;
}

std::string map_name(MapId m) {
  switch (m) {
    case MapId::Naive: return "naive";
    case MapId::Star: return "star";
    case MapId::Bullet: return "bullet";
    case MapId::Bullet2: return "bullet2";
    case MapId::Sharp: return "sharp";
    case MapId::Jlam: return "jlam";
    case MapId::StarSharp: return "star-sharp";
    case MapId::StarBullet: return "star-bullet";
  }
  return "?";
}

// --- derivation translations ---------------------------------------------------

namespace {

DerivESPtr duplicate_take(std::vector<DerivESPtr>& pool,
                          const std::vector<DerivESPtr>& all, const QTypePtr& ty,
                          bool& duplicated) {
  auto it = std::find_if(pool.begin(), pool.end(),
                         [&](const DerivESPtr& d) { return qequal(d->type, ty); });
  if (it != pool.end()) {
    DerivESPtr out = *it;
    pool.erase(it);
    return out;
  }
  auto jt = std::find_if(all.begin(), all.end(),
                         [&](const DerivESPtr& d) { return qequal(d->type, ty); });
  if (jt == all.end())
    throw DerivError("translate: no argument derivation for " + print_qtype(ty));
  duplicated = true;  // reuse: the premise is duplicated and the env grows
  return *jt;
}

DerivESPtr j_to_es_rec(const DerivJPtr& d, bool& duplicated) {
  switch (d->rule) {
    case DerivJ::Rule::Var: return esdvar(d->subject->name, d->type);
    case DerivJ::Rule::Abs: {
      DerivESPtr k = j_to_es_rec(d->children[0], duplicated);
      return esdabs(esabs(d->subject->name, k->subject), k);
    }
    case DerivJ::Rule::Many: {
      std::vector<DerivESPtr> elems;
      for (const auto& k : d->children) elems.push_back(j_to_es_rec(k, duplicated));
      return esdmany(std::move(elems));
    }
    case DerivJ::Rule::App: break;
  }
  const std::string& x = d->subject->name;
  DerivESPtr hm = j_to_es_rec(d->children[0], duplicated);
  DerivESPtr um = j_to_es_rec(d->children[1], duplicated);
  DerivESPtr kr = j_to_es_rec(d->children[2], duplicated);
  std::set<std::string> avoid = es_all_names(hm->subject);
  auto f1 = es_all_names(um->subject);
  avoid.insert(f1.begin(), f1.end());
  auto f2 = es_all_names(kr->subject);
  avoid.insert(f2.begin(), f2.end());
  avoid.insert(x);
  for (auto& [k, v] : kr->env.m) avoid.insert(k);
  auto [x1, x2] = star_pair(x, avoid);

  DerivESPtr body;  // derivation of [x1 x2/x] r*
  MultiType n_x2;   // multiset consumed by x2
  if (!d->pairs.empty()) {
    // build the x1 x2 derivation at [tau_i], then substitute into r*
    std::vector<DerivESPtr> elems;
    for (const auto& [mi, taui] : d->pairs) {
      DerivESPtr fun = esdvar(x1, qarrow(mi, taui));
      DerivESPtr am;
      QTypePtr witness;
      if (mi.empty()) {
        witness = um->children[0]->type;
        am = esdmany({esdvar(x2, witness)});
      } else {
        std::vector<DerivESPtr> axs;
        for (const auto& rho : mi.elems) axs.push_back(esdvar(x2, rho));
        am = esdmany(std::move(axs));
      }
      elems.push_back(esdapp(esapp(esvar(x1), esvar(x2)), fun, am, mi, witness));
    }
    DerivESPtr phi0 = esdmany(std::move(elems));
    n_x2 = phi0->env.get(x2);
    body = es_substitute_derivation(kr, x, phi0);
  } else {
    body = kr;  // x not free in r
  }

  // inner substitution on x2
  DerivESPtr inner;
  if (!n_x2.empty()) {
    std::vector<DerivESPtr> pool = um->children;
    std::vector<DerivESPtr> used;
    for (const auto& rho : n_x2.elems)
      used.push_back(duplicate_take(pool, um->children, rho, duplicated));
    DerivESPtr um2 = esdmany(std::move(used));
    inner = esdsub(essub(body->subject, x2, um2->subject), body, um2, n_x2, nullptr);
  } else {
    inner = esdsub(essub(body->subject, x2, um->subject), body, um, MultiType{},
                   um->children[0]->type);
  }
  // outer substitution on x1
  MultiType f = inner->env.get(x1);
  if (!f.empty())
    return esdsub(essub(inner->subject, x1, hm->subject), inner, hm, f, nullptr);
  return esdsub(essub(inner->subject, x1, hm->subject), inner, hm, MultiType{},
                hm->children[0]->type);
}

}  // namespace

DerivESPtr translate_derivation_j_to_es(const DerivJPtr& d, bool* duplicated) {
  bool dup = false;
  DerivESPtr out = j_to_es_rec(d, dup);
  if (duplicated) *duplicated = dup;
  return out;
}

DerivJPtr translate_derivation_es_to_j(const DerivESPtr& d) {
  switch (d->rule) {
    case DerivES::Rule::Var: return dvar(d->subject->name, d->type);
    case DerivES::Rule::Abs: {
      DerivJPtr k = translate_derivation_es_to_j(d->children[0]);
      return dabs(abs(d->subject->name, k->subject), k);
    }
    case DerivES::Rule::Many: {
      std::vector<DerivJPtr> elems;
      for (const auto& k : d->children) elems.push_back(translate_derivation_es_to_j(k));
      return dmany(std::move(elems));
    }
    case DerivES::Rule::App: {
      DerivJPtr fun = translate_derivation_es_to_j(d->children[0]);
      DerivJPtr am = translate_derivation_es_to_j(d->children[1]);
      DerivJPtr cont = dvar("z", d->type);
      std::vector<std::pair<MultiType, QTypePtr>> pairs = {{d->dom, d->type}};
      return dapp(gapp(fun->subject, am->subject, "z", var("z")), dmany({fun}), am, cont,
                  std::move(pairs), nullptr,
                  d->dom.empty() ? d->arg_witness : nullptr);
    }
    case DerivES::Rule::Sub: {
      DerivJPtr bd = translate_derivation_es_to_j(d->children[0]);
      DerivJPtr am = translate_derivation_es_to_j(d->children[1]);
      const std::string& x = d->subject->name;
      TermPtr id = abs("z", var("z"));
      std::vector<DerivJPtr> ids;
      std::vector<std::pair<MultiType, QTypePtr>> pairs;
      QTypePtr fw, aw;
      if (!d->dom.empty()) {
        for (const auto& tau : d->dom.elems) {
          ids.push_back(dabs(id, dvar("z", tau)));
          pairs.push_back({msingle(tau), tau});
        }
      } else {
        QTypePtr tau = default_witness();
        ids.push_back(dabs(id, dvar("z", tau)));
        fw = qarrow(msingle(tau), tau);
        aw = d->arg_witness;
      }
      return dapp(gapp(id, am->subject, x, bd->subject), dmany(std::move(ids)), am, bd,
                  std::move(pairs), fw, aw);
    }
  }
  throw DerivError("translate_derivation_es_to_j: unreachable");
}

// --- simulation checks -----------------------------------------------------------

namespace {

bool lam_reach(const LamPtr& from, const LamPtr& to, const std::vector<LamRule>& rules,
               bool nonempty, long max_states, bool* resolved) {
  *resolved = true;
  std::string target = lam_alpha_key(to);
  if (!nonempty && lam_alpha_key(from) == target) return true;
  std::deque<LamPtr> queue{from};
  std::set<std::string> seen{lam_alpha_key(from)};
  long states = 0;
  while (!queue.empty()) {
    LamPtr cur = queue.front();
    queue.pop_front();
    if (++states > max_states) {
      *resolved = false;
      return false;
    }
    for (auto& st : lam_reducts(rules, cur)) {
      std::string k = lam_alpha_key(st.result);
      if (k == target) return true;
      if (seen.insert(k).second) queue.push_back(st.result);
    }
  }
  return false;
}

// exactly n steps of `rule` reaching target
bool lam_exact_steps(const LamPtr& from, const LamPtr& to, LamRule rule, int n) {
  if (n == 0) return lam_alpha_eq(from, to);
  for (auto& st : lam_reducts({rule}, from))
    if (lam_exact_steps(st.result, to, rule, n - 1)) return true;
  return false;
}

bool es_exact_steps(const ESPtr& from, const ESPtr& to, ESRule rule, int n) {
  if (n == 0) return es_alpha_eq(from, to);
  for (auto& st : es_reducts({rule}, from))
    if (es_exact_steps(st.result, to, rule, n - 1)) return true;
  return false;
}

}  // namespace

SimReport simulation_check(SimKind kind, const std::vector<TermPtr>& terms,
                           long max_states) {
  SimReport rep;
  for (const auto& t : terms) {
    switch (kind) {
      case SimKind::JlamDBeta:
        for (auto& st : reducts(RuleSet{Rule::DBeta}, t)) {
          ++rep.instances;
          bool resolved = true;
          bool ok = lam_reach(j_to_lam_traditional(t), j_to_lam_traditional(st.result),
                              {LamRule::Beta, LamRule::Sigma1}, true, max_states,
                              &resolved);
          if (!resolved) ++rep.unknown;
          else if (!ok) rep.violations.push_back(print_term(t));
        }
        break;
      case SimKind::StarSharpBeta:
        for (auto& st : reducts(RuleSet{Rule::Beta}, t)) {
          ++rep.instances;
          bool resolved = true;
          bool ok = lam_reach(j_to_lam_star_sharp(t), j_to_lam_star_sharp(st.result),
                              {LamRule::Beta}, true, max_states, &resolved);
          if (!resolved) ++rep.unknown;
          else if (!ok) rep.violations.push_back(print_term(t));
        }
        break;
      case SimKind::StarSharpP2:
        for (auto& st : reducts(RuleSet{Rule::P2}, t)) {
          ++rep.instances;
          if (!lam_exact_steps(j_to_lam_star_sharp(t), j_to_lam_star_sharp(st.result),
                               LamRule::Sigma2, 2))
            rep.violations.push_back(print_term(t));
        }
        break;
      case SimKind::StarPi:
        for (auto& st : reducts(RuleSet{Rule::Pi}, t)) {
          ++rep.instances;
          if (!es_exact_steps(j_to_es_star(t), j_to_es_star(st.result), ESRule::Sigma4, 2))
            rep.violations.push_back(print_term(t));
        }
        break;
      case SimKind::NaivePi:
        for (auto& st : reducts(RuleSet{Rule::Pi}, t)) {
          ++rep.instances;
          bool ok = false;
          for (auto& mid : es_reducts({ESRule::Sigma1}, j_to_es_naive(t)))
            if (es_exact_steps(mid.result, j_to_es_naive(st.result), ESRule::Sigma4, 1))
              ok = true;
          if (!ok) rep.violations.push_back(print_term(t));
        }
        break;
    }
  }
  return rep;
}

SimReport es_simulation_check(ESSimKind kind, const std::vector<ESPtr>& terms) {
  SimReport rep;
  for (const auto& m : terms) {
    ESRule src = kind == ESSimKind::Bullet2B ? ESRule::B : ESRule::S;
    for (auto& st : es_reducts({src}, m)) {
      ++rep.instances;
      TermPtr img1, img2;
      if (kind == ESSimKind::BulletS) {
        img1 = es_to_j_bullet(m);
        img2 = es_to_j_bullet(st.result);
      } else {
        img1 = es_to_j_bullet2(m);
        img2 = es_to_j_bullet2(st.result);
      }
      bool ok = false;
      for (auto& jstep : reducts(RuleSet{Rule::Beta}, img1))
        if (alpha_eq(jstep.result, img2)) ok = true;
      if (!ok) rep.violations.push_back(print_es(m));
    }
  }
  return rep;
}

}  // namespace lj
