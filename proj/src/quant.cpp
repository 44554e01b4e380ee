#include "lj/quant.hpp"

#include <algorithm>

namespace lj {

DerivJPtr dvar(const std::string& x, const QTypePtr& ty) {
  auto d = std::make_shared<DerivJ>();
  d->rule = DerivJ::Rule::Var;
  d->subject = var(x);
  d->type = ty;
  d->env.set(x, msingle(ty));
  return d;
}

DerivJPtr dabs(const TermPtr& subject, const DerivJPtr& body) {
  if (!is_abs(subject)) throw DerivError("dabs: subject is not an abstraction");
  if (body->rule == DerivJ::Rule::Many) throw DerivError("dabs: premise is a many node");
  auto d = std::make_shared<DerivJ>();
  d->rule = DerivJ::Rule::Abs;
  d->subject = subject;
  d->children = {body};
  MultiType m = body->env.get(subject->name);
  d->type = qarrow(m, body->type);
  d->env = env_minus(body->env, subject->name);
  return d;
}

DerivJPtr dmany(std::vector<DerivJPtr> elems) {
  if (elems.empty()) throw DerivError("dmany: empty premise set");
  std::stable_sort(elems.begin(), elems.end(), [](const DerivJPtr& a, const DerivJPtr& b) {
    return qcompare(a->type, b->type) < 0;
  });
  auto d = std::make_shared<DerivJ>();
  d->rule = DerivJ::Rule::Many;
  d->subject = elems[0]->subject;
  std::vector<QTypePtr> tys;
  for (const auto& e : elems) {
    if (e->rule == DerivJ::Rule::Many) throw DerivError("dmany: nested many");
    if (!alpha_eq(e->subject, elems[0]->subject))
      throw DerivError("dmany: premise subjects differ");
    tys.push_back(e->type);
    d->env = env_wedge(d->env, e->env);
  }
  d->mtype = mmake(std::move(tys));
  d->children = std::move(elems);
  return d;
}

DerivJPtr dapp(const TermPtr& subject, const DerivJPtr& head_many,
               const DerivJPtr& arg_many, const DerivJPtr& cont,
               std::vector<std::pair<MultiType, QTypePtr>> pairs,
               const QTypePtr& fun_witness, const QTypePtr& arg_witness) {
  if (!is_gapp(subject)) throw DerivError("dapp: subject is not an application");
  if (head_many->rule != DerivJ::Rule::Many || arg_many->rule != DerivJ::Rule::Many)
    throw DerivError("dapp: head/arg premises must be many nodes");
  if (cont->rule == DerivJ::Rule::Many) throw DerivError("dapp: continuation is a many node");
  auto d = std::make_shared<DerivJ>();
  d->rule = DerivJ::Rule::App;
  d->subject = subject;
  d->children = {head_many, arg_many, cont};
  d->pairs = std::move(pairs);
  d->fun_witness = fun_witness;
  d->arg_witness = arg_witness;
  d->type = cont->type;

  std::vector<QTypePtr> arrows, taus;
  MultiType args;
  for (auto& [m, tau] : d->pairs) {
    arrows.push_back(qarrow(m, tau));
    taus.push_back(tau);
    args = munion(args, m);
  }
  if (d->pairs.empty() && !fun_witness) throw DerivError("dapp: missing fun witness");
  if (!d->pairs.empty() && fun_witness) throw DerivError("dapp: spurious fun witness");
  if (args.empty() && !arg_witness) throw DerivError("dapp: missing arg witness");
  if (!args.empty() && arg_witness) throw DerivError("dapp: spurious arg witness");
  MultiType expect_head =
      d->pairs.empty() ? msingle(fun_witness) : mmake(std::move(arrows));
  MultiType expect_arg = args.empty() ? msingle(arg_witness) : args;
  if (!mequal(head_many->mtype, expect_head))
    throw DerivError("dapp: head premise multiset mismatch");
  if (!mequal(arg_many->mtype, expect_arg))
    throw DerivError("dapp: arg premise multiset mismatch");
  if (!mequal(cont->env.get(subject->name), mmake(std::move(taus))))
    throw DerivError("dapp: continuation binder multiset mismatch");
  d->env = env_wedge(env_wedge(head_many->env, arg_many->env),
                     env_minus(cont->env, subject->name));
  return d;
}

namespace {

void check_rec(const DerivJPtr& d, const std::string& where, CheckResult& res) {
  auto fail = [&](const std::string& msg) {
    res.ok = false;
    res.errors.push_back(where + ": " + msg + " [" + print_term(d->subject) + "]");
  };
  switch (d->rule) {
    case DerivJ::Rule::Var: {
      if (!is_var(d->subject)) return fail("var rule on non-variable");
      if (!d->children.empty()) return fail("var rule with premises");
      TypeEnv expect;
      expect.set(d->subject->name, msingle(d->type));
      if (!env_equal(d->env, expect)) return fail("var axiom demands x:[sigma]");
      break;
    }
    case DerivJ::Rule::Abs: {
      if (!is_abs(d->subject) || d->children.size() != 1) return fail("abs rule shape");
      const auto& k = d->children[0];
      if (k->rule == DerivJ::Rule::Many) return fail("abs premise is a many node");
      if (!alpha_eq(k->subject, body(d->subject))) return fail("abs premise subject");
      if (d->type->is_base) return fail("abstraction typed with base type");
      if (!mequal(d->type->dom, k->env.get(d->subject->name)))
        return fail("abs domain mismatch");
      if (!qequal(d->type->cod, k->type)) return fail("abs codomain mismatch");
      if (!env_equal(d->env, env_minus(k->env, d->subject->name)))
        return fail("abs environment mismatch");
      check_rec(k, where + ".0", res);
      break;
    }
    case DerivJ::Rule::Many: {
      if (d->children.empty()) return fail("many needs a nonempty premise set");
      std::vector<QTypePtr> tys;
      TypeEnv acc;
      for (size_t i = 0; i < d->children.size(); ++i) {
        const auto& k = d->children[i];
        if (k->rule == DerivJ::Rule::Many) return fail("nested many");
        if (!alpha_eq(k->subject, d->subject)) return fail("many premise subject");
        tys.push_back(k->type);
        acc = env_wedge(acc, k->env);
        check_rec(k, where + "." + std::to_string(i), res);
      }
      if (!mequal(d->mtype, mmake(std::move(tys)))) return fail("many multiset mismatch");
      if (!env_equal(d->env, acc)) return fail("many environment mismatch");
      break;
    }
    case DerivJ::Rule::App: {
      if (!is_gapp(d->subject) || d->children.size() != 3) return fail("app rule shape");
      const auto& hm = d->children[0];
      const auto& um = d->children[1];
      const auto& kr = d->children[2];
      if (hm->rule != DerivJ::Rule::Many || um->rule != DerivJ::Rule::Many)
        return fail("app head/arg premises must be many nodes");
      if (kr->rule == DerivJ::Rule::Many) return fail("app continuation is a many node");
      if (!alpha_eq(hm->subject, head(d->subject))) return fail("head premise subject");
      if (!alpha_eq(um->subject, arg(d->subject))) return fail("arg premise subject");
      if (!alpha_eq(kr->subject, cont(d->subject))) return fail("cont premise subject");
      std::vector<QTypePtr> arrows, taus;
      MultiType args;
      for (auto& [m, tau] : d->pairs) {
        arrows.push_back(qarrow(m, tau));
        taus.push_back(tau);
        args = munion(args, m);
      }
      if (d->pairs.empty() != static_cast<bool>(d->fun_witness))
        return fail("fun witness must be present exactly when I is empty");
      if (args.empty() != static_cast<bool>(d->arg_witness))
        return fail("arg witness must be present exactly when the M_i union is empty");
      MultiType expect_head =
          d->pairs.empty() ? msingle(d->fun_witness) : mmake(std::move(arrows));
      if (!mequal(hm->mtype, expect_head)) return fail("head premise multiset");
      MultiType expect_arg = args.empty() ? msingle(d->arg_witness) : args;
      if (!mequal(um->mtype, expect_arg)) return fail("arg premise multiset");
      if (!mequal(kr->env.get(d->subject->name), mmake(std::move(taus))))
        return fail("continuation binder multiset");
      if (!qequal(d->type, kr->type)) return fail("conclusion type mismatch");
      TypeEnv expect = env_wedge(env_wedge(hm->env, um->env),
                                 env_minus(kr->env, d->subject->name));
      if (!env_equal(d->env, expect)) return fail("app environment mismatch");
      check_rec(hm, where + ".0", res);
      check_rec(um, where + ".1", res);
      check_rec(kr, where + ".2", res);
      break;
    }
  }
}

}  // namespace

CheckResult check_derivation_j(const DerivJPtr& d) {
  CheckResult res;
  check_rec(d, "root", res);
  return res;
}

long derivation_size(const DerivJPtr& d) {
  long n = d->rule == DerivJ::Rule::Many ? 0 : 1;
  for (const auto& k : d->children) n += derivation_size(k);
  return n;
}

std::string print_derivation(const DerivJPtr& d, int indent) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  std::string rule;
  switch (d->rule) {
    case DerivJ::Rule::Var: rule = "var"; break;
    case DerivJ::Rule::Abs: rule = "abs"; break;
    case DerivJ::Rule::App: rule = "app"; break;
    case DerivJ::Rule::Many: rule = "many"; break;
  }
  std::string ty = d->rule == DerivJ::Rule::Many ? print_multitype(d->mtype)
                                                 : print_qtype(d->type);
  std::string out = pad + "(" + rule + ") " + print_env(d->env) + " |- " +
                    print_term(d->subject) + " : " + ty + "\n";
  for (const auto& k : d->children) out += print_derivation(k, indent + 1);
  return out;
}

}  // namespace lj
