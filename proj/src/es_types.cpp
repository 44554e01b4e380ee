#include "lj/es_types.hpp"

#include <algorithm>

namespace lj {

DerivESPtr esdvar(const std::string& x, const QTypePtr& ty) {
  auto d = std::make_shared<DerivES>();
  d->rule = DerivES::Rule::Var;
  d->subject = esvar(x);
  d->type = ty;
  d->env.set(x, msingle(ty));
  return d;
}

DerivESPtr esdabs(const ESPtr& subject, const DerivESPtr& body) {
  if (subject->kind != ESTerm::Kind::Abs) throw DerivError("esdabs: not an abstraction");
  if (body->rule == DerivES::Rule::Many) throw DerivError("esdabs: premise is many");
  auto d = std::make_shared<DerivES>();
  d->rule = DerivES::Rule::Abs;
  d->subject = subject;
  d->children = {body};
  d->type = qarrow(body->env.get(subject->name), body->type);
  d->env = body->env;
  d->env.m.erase(subject->name);
  return d;
}

DerivESPtr esdmany(std::vector<DerivESPtr> elems) {
  if (elems.empty()) throw DerivError("esdmany: empty premise set");
  std::stable_sort(elems.begin(), elems.end(),
                   [](const DerivESPtr& a, const DerivESPtr& b) {
                     return qcompare(a->type, b->type) < 0;
                   });
  auto d = std::make_shared<DerivES>();
  d->rule = DerivES::Rule::Many;
  d->subject = elems[0]->subject;
  std::vector<QTypePtr> tys;
  for (const auto& e : elems) {
    if (e->rule == DerivES::Rule::Many) throw DerivError("esdmany: nested many");
    if (!es_alpha_eq(e->subject, elems[0]->subject))
      throw DerivError("esdmany: premise subjects differ");
    tys.push_back(e->type);
    d->env = env_wedge(d->env, e->env);
  }
  d->mtype = mmake(std::move(tys));
  d->children = std::move(elems);
  return d;
}

namespace {

void check_arg(const DerivESPtr& arg_many, const MultiType& dom, const QTypePtr& witness,
               const char* who) {
  if (arg_many->rule != DerivES::Rule::Many)
    throw DerivError(std::string(who) + ": argument premise must be a many node");
  if (dom.empty() && !witness) throw DerivError(std::string(who) + ": missing witness");
  if (!dom.empty() && witness) throw DerivError(std::string(who) + ": spurious witness");
  MultiType expect = dom.empty() ? msingle(witness) : dom;
  if (!mequal(arg_many->mtype, expect))
    throw DerivError(std::string(who) + ": argument multiset mismatch");
}

}  // namespace

DerivESPtr esdapp(const ESPtr& subject, const DerivESPtr& fun, const DerivESPtr& arg_many,
                  MultiType dom, const QTypePtr& arg_witness) {
  if (subject->kind != ESTerm::Kind::App) throw DerivError("esdapp: not an application");
  if (fun->rule == DerivES::Rule::Many) throw DerivError("esdapp: fun premise is many");
  if (fun->type->is_base || !mequal(fun->type->dom, dom))
    throw DerivError("esdapp: fun premise must have type M -> sigma");
  check_arg(arg_many, dom, arg_witness, "esdapp");
  auto d = std::make_shared<DerivES>();
  d->rule = DerivES::Rule::App;
  d->subject = subject;
  d->children = {fun, arg_many};
  d->dom = std::move(dom);
  d->arg_witness = arg_witness;
  d->type = fun->type->cod;
  d->env = env_wedge(fun->env, arg_many->env);
  return d;
}

DerivESPtr esdsub(const ESPtr& subject, const DerivESPtr& body, const DerivESPtr& arg_many,
                  MultiType dom, const QTypePtr& arg_witness) {
  if (subject->kind != ESTerm::Kind::Sub) throw DerivError("esdsub: not a substitution");
  if (body->rule == DerivES::Rule::Many) throw DerivError("esdsub: body premise is many");
  if (!mequal(body->env.get(subject->name), dom))
    throw DerivError("esdsub: binder multiset mismatch");
  check_arg(arg_many, dom, arg_witness, "esdsub");
  auto d = std::make_shared<DerivES>();
  d->rule = DerivES::Rule::Sub;
  d->subject = subject;
  d->children = {body, arg_many};
  d->dom = std::move(dom);
  d->arg_witness = arg_witness;
  d->type = body->type;
  TypeEnv benv = body->env;
  benv.m.erase(subject->name);
  d->env = env_wedge(benv, arg_many->env);
  return d;
}

namespace {

void es_check_rec(const DerivESPtr& d, const std::string& where, CheckResult& res) {
  auto fail = [&](const std::string& msg) {
    res.ok = false;
    res.errors.push_back(where + ": " + msg + " [" + print_es(d->subject) + "]");
  };
  switch (d->rule) {
    case DerivES::Rule::Var: {
      if (d->subject->kind != ESTerm::Kind::Var || !d->children.empty())
        return fail("var rule shape");
      TypeEnv expect;
      expect.set(d->subject->name, msingle(d->type));
      if (!env_equal(d->env, expect)) return fail("var axiom env");
      break;
    }
    case DerivES::Rule::Abs: {
      if (d->subject->kind != ESTerm::Kind::Abs || d->children.size() != 1)
        return fail("abs rule shape");
      const auto& k = d->children[0];
      if (k->rule == DerivES::Rule::Many) return fail("abs premise is many");
      if (!es_alpha_eq(k->subject, d->subject->a)) return fail("abs premise subject");
      if (d->type->is_base || !mequal(d->type->dom, k->env.get(d->subject->name)) ||
          !qequal(d->type->cod, k->type))
        return fail("abs type mismatch");
      TypeEnv expect = k->env;
      expect.m.erase(d->subject->name);
      if (!env_equal(d->env, expect)) return fail("abs env mismatch");
      es_check_rec(k, where + ".0", res);
      break;
    }
    case DerivES::Rule::Many: {
      if (d->children.empty()) return fail("many needs premises");
      std::vector<QTypePtr> tys;
      TypeEnv acc;
      for (size_t i = 0; i < d->children.size(); ++i) {
        const auto& k = d->children[i];
        if (k->rule == DerivES::Rule::Many) return fail("nested many");
        if (!es_alpha_eq(k->subject, d->subject)) return fail("many premise subject");
        tys.push_back(k->type);
        acc = env_wedge(acc, k->env);
        es_check_rec(k, where + "." + std::to_string(i), res);
      }
      if (!mequal(d->mtype, mmake(std::move(tys)))) return fail("many multiset");
      if (!env_equal(d->env, acc)) return fail("many env");
      break;
    }
    case DerivES::Rule::App: {
      if (d->subject->kind != ESTerm::Kind::App || d->children.size() != 2)
        return fail("app rule shape");
      const auto& fun = d->children[0];
      const auto& am = d->children[1];
      if (fun->rule == DerivES::Rule::Many) return fail("fun premise is many");
      if (am->rule != DerivES::Rule::Many) return fail("arg premise must be many");
      if (!es_alpha_eq(fun->subject, d->subject->a)) return fail("fun premise subject");
      if (!es_alpha_eq(am->subject, d->subject->b)) return fail("arg premise subject");
      if (fun->type->is_base || !mequal(fun->type->dom, d->dom) ||
          !qequal(fun->type->cod, d->type))
        return fail("fun premise type");
      if (d->dom.empty() != static_cast<bool>(d->arg_witness))
        return fail("witness presence mismatch");
      MultiType expect = d->dom.empty() ? msingle(d->arg_witness) : d->dom;
      if (!mequal(am->mtype, expect)) return fail("arg premise multiset");
      if (!env_equal(d->env, env_wedge(fun->env, am->env))) return fail("app env");
      es_check_rec(fun, where + ".0", res);
      es_check_rec(am, where + ".1", res);
      break;
    }
    case DerivES::Rule::Sub: {
      if (d->subject->kind != ESTerm::Kind::Sub || d->children.size() != 2)
        return fail("sub rule shape");
      const auto& bd = d->children[0];
      const auto& am = d->children[1];
      if (bd->rule == DerivES::Rule::Many) return fail("sub body premise is many");
      if (am->rule != DerivES::Rule::Many) return fail("sub arg premise must be many");
      if (!es_alpha_eq(bd->subject, d->subject->a)) return fail("sub body subject");
      if (!es_alpha_eq(am->subject, d->subject->b)) return fail("sub arg subject");
      if (!mequal(bd->env.get(d->subject->name), d->dom))
        return fail("sub binder multiset");
      if (!qequal(bd->type, d->type)) return fail("sub conclusion type");
      if (d->dom.empty() != static_cast<bool>(d->arg_witness))
        return fail("witness presence mismatch");
      MultiType expect = d->dom.empty() ? msingle(d->arg_witness) : d->dom;
      if (!mequal(am->mtype, expect)) return fail("sub arg multiset");
      TypeEnv benv = bd->env;
      benv.m.erase(d->subject->name);
      if (!env_equal(d->env, env_wedge(benv, am->env))) return fail("sub env");
      es_check_rec(bd, where + ".0", res);
      es_check_rec(am, where + ".1", res);
      break;
    }
  }
}

}  // namespace

CheckResult check_derivation_es(const DerivESPtr& d) {
  CheckResult res;
  es_check_rec(d, "root", res);
  return res;
}

long es_derivation_size(const DerivESPtr& d) {
  long n = d->rule == DerivES::Rule::Many ? 0 : 1;
  for (const auto& k : d->children) n += es_derivation_size(k);
  return n;
}

std::string print_derivation_es(const DerivESPtr& d, int indent) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  std::string rule;
  switch (d->rule) {
    case DerivES::Rule::Var: rule = "var"; break;
    case DerivES::Rule::Abs: rule = "abs"; break;
    case DerivES::Rule::App: rule = "app"; break;
    case DerivES::Rule::Sub: rule = "sub"; break;
    case DerivES::Rule::Many: rule = "many"; break;
  }
  std::string ty = d->rule == DerivES::Rule::Many ? print_multitype(d->mtype)
                                                  : print_qtype(d->type);
  std::string out = pad + "(" + rule + ") " + print_env(d->env) + " |- " +
                    print_es(d->subject) + " : " + ty + "\n";
  for (const auto& k : d->children) out += print_derivation_es(k, indent + 1);
  return out;
}

DerivESPtr es_deriv_rename_free(const DerivESPtr& d, const std::string& x,
                                const std::string& y) {
  if (x == y) return d;
  if (d->env.get(x).empty() && !es_is_free_in(x, d->subject)) return d;
  auto n = std::make_shared<DerivES>(*d);
  n->subject = es_substitute(esvar(y), x, d->subject);
  if (!d->env.get(x).empty()) {
    n->env.set(y, munion(n->env.get(y), d->env.get(x)));
    n->env.m.erase(x);
  }
  std::vector<DerivESPtr> kids;
  switch (d->rule) {
    case DerivES::Rule::Var: break;
    case DerivES::Rule::Abs:
      kids = {d->subject->name == x ? d->children[0]
                                    : es_deriv_rename_free(d->children[0], x, y)};
      break;
    case DerivES::Rule::Many:
      for (const auto& k : d->children) kids.push_back(es_deriv_rename_free(k, x, y));
      break;
    case DerivES::Rule::App:
      kids = {es_deriv_rename_free(d->children[0], x, y),
              es_deriv_rename_free(d->children[1], x, y)};
      break;
    case DerivES::Rule::Sub:
      kids = {d->subject->name == x ? d->children[0]
                                    : es_deriv_rename_free(d->children[0], x, y),
              es_deriv_rename_free(d->children[1], x, y)};
      break;
  }
  if (!kids.empty()) n->children = std::move(kids);
  return n;
}

namespace {

DerivESPtr es_take_one(std::vector<DerivESPtr>& pool, const QTypePtr& ty) {
  auto it = std::find_if(pool.begin(), pool.end(),
                         [&](const DerivESPtr& d) { return qequal(d->type, ty); });
  if (it == pool.end())
    throw DerivError("es substitution: no premise for " + print_qtype(ty));
  DerivESPtr out = *it;
  pool.erase(it);
  return out;
}

DerivESPtr es_subst_rec(const DerivESPtr& d, const std::string& x, const ESPtr& u,
                        std::vector<DerivESPtr>& pool);
DerivESPtr es_subst_rec_or_id(const DerivESPtr& d, const std::string& x, const ESPtr& u,
                              std::vector<DerivESPtr>& pool);

DerivESPtr es_subst_many(const DerivESPtr& m, const std::string& x, const ESPtr& u,
                         std::vector<DerivESPtr>& pool) {
  if (m->env.get(x).empty()) return m;
  std::vector<DerivESPtr> elems;
  for (const auto& e : m->children) elems.push_back(es_subst_rec(e, x, u, pool));
  return esdmany(std::move(elems));
}

DerivESPtr es_subst_rec(const DerivESPtr& d, const std::string& x, const ESPtr& u,
                        std::vector<DerivESPtr>& pool) {
  if (d->env.get(x).empty()) return d;
  switch (d->rule) {
    case DerivES::Rule::Var: return es_take_one(pool, d->type);
    case DerivES::Rule::Abs: {
      DerivESPtr kid = d->children[0];
      std::string b = d->subject->name;
      if (es_is_free_in(b, u)) {
        std::set<std::string> avoid = es_all_names(kid->subject);
        auto f = es_free_vars(u);
        avoid.insert(f.begin(), f.end());
        for (auto& [k, v] : kid->env.m) avoid.insert(k);
        std::string nb = fresh_name(b, avoid);
        kid = es_deriv_rename_free(kid, b, nb);
        b = nb;
      }
      DerivESPtr kid2 = es_subst_rec(kid, x, u, pool);
      return esdabs(esabs(b, kid2->subject), kid2);
    }
    case DerivES::Rule::App: {
      DerivESPtr fun = es_subst_rec_or_id(d->children[0], x, u, pool);
      DerivESPtr am = es_subst_many(d->children[1], x, u, pool);
      return esdapp(esapp(fun->subject, am->subject), fun, am, d->dom, d->arg_witness);
    }
    case DerivES::Rule::Sub: {
      DerivESPtr bd = d->children[0];
      DerivESPtr am = d->children[1];
      std::string b = d->subject->name;
      if (es_is_free_in(b, u)) {
        std::set<std::string> avoid = es_all_names(bd->subject);
        auto f = es_free_vars(u);
        avoid.insert(f.begin(), f.end());
        for (auto& [k, v] : bd->env.m) avoid.insert(k);
        std::string nb = fresh_name(b, avoid);
        bd = es_deriv_rename_free(bd, b, nb);
        b = nb;
      }
      DerivESPtr bd2 = es_subst_rec_or_id(bd, x, u, pool);
      DerivESPtr am2 = es_subst_many(am, x, u, pool);
      return esdsub(essub(bd2->subject, b, am2->subject), bd2, am2, d->dom,
                    d->arg_witness);
    }
    case DerivES::Rule::Many: return es_subst_many(d, x, u, pool);
  }
  throw DerivError("es substitution: unreachable");
}

DerivESPtr es_subst_rec_or_id(const DerivESPtr& d, const std::string& x, const ESPtr& u,
                              std::vector<DerivESPtr>& pool) {
  return d->env.get(x).empty() ? d : es_subst_rec(d, x, u, pool);
}

}  // namespace

DerivESPtr es_substitute_derivation(const DerivESPtr& d_t, const std::string& x,
                                    const DerivESPtr& d_u_many) {
  MultiType m = d_t->env.get(x);
  if (m.empty()) throw DerivError("es_substitute_derivation: x not free");
  if (d_u_many->rule != DerivES::Rule::Many || !mequal(d_u_many->mtype, m))
    throw DerivError("es_substitute_derivation: multiset mismatch");
  std::vector<DerivESPtr> pool = d_u_many->children;
  DerivESPtr out = es_subst_rec(d_t, x, d_u_many->subject, pool);
  if (!pool.empty()) throw DerivError("es_substitute_derivation: unused premises");
  return out;
}

}  // namespace lj
