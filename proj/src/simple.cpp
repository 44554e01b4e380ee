#include "lj/simple.hpp"

#include <functional>

#include "lj/reduce.hpp"

namespace lj {

namespace {

// Unification types: metavariables plus rigid simple types.
struct UType;
using UPtr = std::shared_ptr<UType>;
struct UType {
  enum class Tag { Meta, Base, Arrow } tag;
  int meta = -1;
  std::string base;
  UPtr dom, cod;
  UPtr link;  // union-find forwarding for solved metas
};

struct Unifier {
  std::vector<UPtr> metas;

  UPtr fresh() {
    auto m = std::make_shared<UType>();
    m->tag = UType::Tag::Meta;
    m->meta = static_cast<int>(metas.size());
    metas.push_back(m);
    return m;
  }
  static UPtr mk_base(std::string n) {
    auto t = std::make_shared<UType>();
    t->tag = UType::Tag::Base;
    t->base = std::move(n);
    return t;
  }
  static UPtr mk_arrow(UPtr d, UPtr c) {
    auto t = std::make_shared<UType>();
    t->tag = UType::Tag::Arrow;
    t->dom = std::move(d);
    t->cod = std::move(c);
    return t;
  }
  UPtr find(UPtr t) {
    while (t->tag == UType::Tag::Meta && t->link) t = t->link;
    return t;
  }
  bool occurs(const UPtr& m, UPtr t) {
    t = find(t);
    if (t->tag == UType::Tag::Meta) return t == m;
    if (t->tag == UType::Tag::Arrow) return occurs(m, t->dom) || occurs(m, t->cod);
    return false;
  }
  bool unify(UPtr a, UPtr b) {
    a = find(a);
    b = find(b);
    if (a == b) return true;
    if (a->tag == UType::Tag::Meta) {
      if (occurs(a, b)) return false;
      a->link = b;
      return true;
    }
    if (b->tag == UType::Tag::Meta) return unify(b, a);
    if (a->tag != b->tag) return false;
    if (a->tag == UType::Tag::Base) return a->base == b->base;
    return unify(a->dom, b->dom) && unify(a->cod, b->cod);
  }
  UPtr from_stype(const STypePtr& s) {
    if (s->is_base) return mk_base(s->base);
    return mk_arrow(from_stype(s->dom), from_stype(s->cod));
  }
};

std::string canon_name(int idx) {
  std::string n(1, static_cast<char>('a' + idx % 26));
  if (idx >= 26) n += std::to_string(idx / 26);
  return n;
}

struct Inference {
  Unifier uni;
  bool ok = true;
  std::string err;

  // Typed skeleton mirroring the term, resolved to SDeriv at the end.
  struct Node {
    std::string rule;
    TermPtr subject;
    UPtr type;
    std::map<std::string, UPtr> env;  // env at this node
    std::vector<std::shared_ptr<Node>> children;
  };

  std::shared_ptr<Node> walk(const TermPtr& t, std::map<std::string, UPtr>& env) {
    auto n = std::make_shared<Node>();
    n->subject = t;
    n->env = env;
    switch (t->kind) {
      case Term::Kind::Var: {
        n->rule = "var";
        auto it = env.find(t->name);
        if (it == env.end()) {
          ok = false;
          err = "unbound variable " + t->name;
          n->type = uni.fresh();
          return n;
        }
        n->type = it->second;
        return n;
      }
      case Term::Kind::Abs: {
        n->rule = "abs";
        UPtr dom = uni.fresh();
        auto saved = env.find(t->name) != env.end()
                         ? std::optional<UPtr>(env[t->name])
                         : std::nullopt;
        env[t->name] = dom;
        auto kid = walk(t->a, env);
        if (saved) env[t->name] = *saved;
        else env.erase(t->name);
        n->children = {kid};
        n->type = Unifier::mk_arrow(dom, kid->type);
        return n;
      }
      case Term::Kind::GApp: {
        n->rule = "app";
        auto kh = walk(t->a, env);
        auto ku = walk(t->b, env);
        UPtr rho = uni.fresh(), tau = uni.fresh();
        if (!uni.unify(kh->type, Unifier::mk_arrow(rho, tau))) {
          ok = false;
          err = "head of " + print_term(t) + " is not a function";
        }
        if (ok && !uni.unify(ku->type, rho)) {
          ok = false;
          err = "argument type mismatch in " + print_term(t);
        }
        auto saved = env.find(t->name) != env.end()
                         ? std::optional<UPtr>(env[t->name])
                         : std::nullopt;
        env[t->name] = tau;
        auto kr = walk(t->c, env);
        if (saved) env[t->name] = *saved;
        else env.erase(t->name);
        n->children = {kh, ku, kr};
        n->type = kr->type;
        return n;
      }
    }
    return n;
  }

  // Residual metas become canonical base names in first-use order.
  std::map<UType*, std::string> canon;
  int next_canon = 0;

  STypePtr resolve(UPtr t) {
    t = uni.find(t);
    switch (t->tag) {
      case UType::Tag::Base: return sbase(t->base);
      case UType::Tag::Arrow: return sarrow(resolve(t->dom), resolve(t->cod));
      case UType::Tag::Meta: {
        auto it = canon.find(t.get());
        if (it == canon.end()) {
          std::string n = canon_name(next_canon++);
          canon[t.get()] = n;
          return sbase(n);
        }
        return sbase(it->second);
      }
    }
    return sbase("?");
  }

  SDerivPtr resolve_deriv(const std::shared_ptr<Node>& n) {
    auto d = std::make_shared<SDeriv>();
    d->rule = n->rule;
    d->subject = n->subject;
    d->type = resolve(n->type);
    for (auto& [k, v] : n->env) d->env[k] = resolve(v);
    for (auto& k : n->children) d->children.push_back(resolve_deriv(k));
    return d;
  }
};

}  // namespace

std::optional<SDerivPtr> check_simple(const SEnv& env, const TermPtr& t,
                                      const STypePtr& sigma, std::string* err) {
  Inference inf;
  std::map<std::string, UPtr> uenv;
  for (auto& [k, v] : env) uenv[k] = inf.uni.from_stype(v);
  for (const auto& x : free_vars(t))
    if (!uenv.count(x)) {
      if (err) *err = "environment misses " + x;
      return std::nullopt;
    }
  auto root = inf.walk(t, uenv);
  if (inf.ok && !inf.uni.unify(root->type, inf.uni.from_stype(sigma))) {
    inf.ok = false;
    inf.err = "term does not have the requested type";
  }
  if (!inf.ok) {
    if (err) *err = inf.err;
    return std::nullopt;
  }
  return inf.resolve_deriv(root);
}

std::optional<SimpleTyping> infer_simple(const TermPtr& t, std::string* err) {
  Inference inf;
  std::map<std::string, UPtr> uenv;
  for (const auto& x : free_vars(t)) uenv[x] = inf.uni.fresh();
  auto root = inf.walk(t, uenv);
  if (!inf.ok) {
    if (err) *err = inf.err;
    return std::nullopt;
  }
  SimpleTyping out;
  // Canonicalize in a stable order: free vars alphabetically, then the type.
  for (auto& [k, v] : uenv) out.env[k] = inf.resolve(v);
  out.type = inf.resolve(root->type);
  out.deriv = inf.resolve_deriv(root);
  return out;
}

bool check_sderiv(const SDerivPtr& d, std::string* err) {
  auto fail = [&](const std::string& m) {
    if (err) *err = m + " at " + print_term(d->subject);
    return false;
  };
  const TermPtr& t = d->subject;
  if (d->rule == "var") {
    if (!is_var(t)) return fail("var rule on non-variable");
    auto it = d->env.find(t->name);
    if (it == d->env.end() || !sequal(it->second, d->type))
      return fail("var axiom env/type mismatch");
  } else if (d->rule == "abs") {
    if (!is_abs(t) || d->children.size() != 1) return fail("abs rule shape");
    if (d->type->is_base) return fail("abstraction with base type");
    const auto& kid = d->children[0];
    if (!term_eq_literal(kid->subject, body(t))) return fail("abs premise subject");
    auto expected = d->env;
    expected[t->name] = d->type->dom;
    if (kid->env.size() != expected.size()) return fail("abs premise env");
    for (auto& [k, v] : expected) {
      auto it = kid->env.find(k);
      if (it == kid->env.end() || !sequal(it->second, v)) return fail("abs premise env");
    }
    if (!sequal(kid->type, d->type->cod)) return fail("abs premise type");
  } else if (d->rule == "app") {
    if (!is_gapp(t) || d->children.size() != 3) return fail("app rule shape");
    const auto& kh = d->children[0];
    const auto& ku = d->children[1];
    const auto& kr = d->children[2];
    if (!term_eq_literal(kh->subject, head(t)) || !term_eq_literal(ku->subject, arg(t)) ||
        !term_eq_literal(kr->subject, cont(t)))
      return fail("app premise subjects");
    if (kh->type->is_base) return fail("head premise is not an arrow");
    if (!sequal(ku->type, kh->type->dom)) return fail("argument premise type");
    auto expected = d->env;
    expected[t->name] = kh->type->cod;
    for (auto& [k, v] : expected) {
      auto it = kr->env.find(k);
      if (it == kr->env.end() || !sequal(it->second, v))
        return fail("continuation premise env");
    }
    if (kr->env.size() != expected.size()) return fail("continuation premise env");
    if (!sequal(kr->type, d->type)) return fail("conclusion type");
  } else {
    return fail("unknown rule " + d->rule);
  }
  for (const auto& k : d->children)
    if (!check_sderiv(k, err)) return false;
  return true;
}

namespace {

void collect_types(const SDerivPtr& d, std::vector<STypePtr>& out) {
  out.push_back(d->type);
  for (auto& [k, v] : d->env) out.push_back(v);
  for (const auto& c : d->children) collect_types(c, out);
}

}  // namespace

AuditResult subformula_audit(const SDerivPtr& d) {
  if (!classify(d->subject).is_m) return AuditResult::PreconditionViolation;
  std::vector<STypePtr> all;
  collect_types(d, all);
  for (const auto& ty : all) {
    bool ok = is_subformula(ty, d->type);
    for (auto it = d->env.begin(); !ok && it != d->env.end(); ++it)
      ok = is_subformula(ty, it->second);
    if (!ok) return AuditResult::Fail;
  }
  return AuditResult::Pass;
}

}  // namespace lj
