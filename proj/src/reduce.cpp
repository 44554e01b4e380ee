#include "lj/reduce.hpp"

#include <set>

namespace lj {

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::Beta: return "beta";
    case Rule::Pi: return "pi";
    case Rule::P2: return "p2";
    case Rule::DBeta: return "dbeta";
    case Rule::Wh: return "wh";
  }
  return "?";
}

std::optional<Rule> rule_from_name(const std::string& s) {
  if (s == "beta") return Rule::Beta;
  if (s == "pi") return Rule::Pi;
  if (s == "p2") return Rule::P2;
  if (s == "dbeta") return Rule::DBeta;
  if (s == "wh") return Rule::Wh;
  return std::nullopt;
}

std::string trace_to_text(const ReductionTrace& tr) {
  std::string out = print_term(tr.start) + "\n";
  for (const auto& st : tr.steps) {
    out += rule_name(st.rule) + " @ " + path_to_string(st.pos) +
           (st.erasing ? " [erasing]" : " [non-erasing]") + "\n";
    out += print_term(st.result) + "\n";
  }
  if (tr.cycle) out += "(cycle)\n";
  return out;
}

bool is_neutral(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return true;
    case Term::Kind::Abs: return false;
    case Term::Kind::GApp: return is_neutral(t->a) && is_neutral(t->c);
  }
  return false;
}

bool is_answer(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return false;
    case Term::Kind::Abs: return true;
    case Term::Kind::GApp: return is_neutral(t->a) && is_answer(t->c);
  }
  return false;
}

std::optional<AbsShape> answer_shape(const TermPtr& t) {
  AbsShape shape;
  TermPtr cur = t;
  for (;;) {
    switch (cur->kind) {
      case Term::Kind::Var: return std::nullopt;
      case Term::Kind::Abs:
        shape.binder = cur->name;
        shape.lambda_body = cur->a;
        return shape;
      case Term::Kind::GApp:
        if (!is_neutral(cur->a)) return std::nullopt;
        shape.layers.push_back({cur->a, cur->b, cur->name});
        cur = cur->c;
        break;
    }
  }
}

DBetaParts dbeta_parts(const AbsShape& shape, const TermPtr& u, const std::string& y,
                       const TermPtr& r) {
  DBetaParts parts;
  TermPtr dns0 = shape.lambda_body;
  for (auto it = shape.layers.rbegin(); it != shape.layers.rend(); ++it)
    dns0 = gapp(it->head, it->arg, it->binder, dns0);
  std::set<std::string> avoid = all_names(dns0);
  auto fu = free_vars(u);
  avoid.insert(fu.begin(), fu.end());
  parts.x_tilde = fresh_name(shape.binder, avoid);
  TermPtr body = rename_free(shape.lambda_body, shape.binder, parts.x_tilde);
  parts.dns = body;
  for (auto it = shape.layers.rbegin(); it != shape.layers.rend(); ++it)
    parts.dns = gapp(it->head, it->arg, it->binder, parts.dns);
  parts.contractum = substitute(u, parts.x_tilde, parts.dns);
  parts.result = substitute(parts.contractum, y, r);
  return parts;
}

std::optional<TermPtr> step_root(Rule rule, const TermPtr& t) {
  if (t->kind != Term::Kind::GApp) return std::nullopt;
  const TermPtr& h = t->a;
  switch (rule) {
    case Rule::Beta: {
      if (h->kind != Term::Kind::Abs) return std::nullopt;
      AbsShape shape;
      shape.binder = h->name;
      shape.lambda_body = h->a;
      return dbeta_parts(shape, t->b, t->name, t->c).result;
    }
    case Rule::DBeta: {
      auto shape = abstraction_shape(h);
      if (!shape) return std::nullopt;
      return dbeta_parts(*shape, t->b, t->name, t->c).result;
    }
    case Rule::Pi: {
      // (t0(u0, x0.r0))(u', y'.r') -> t0(u0, x0.r0(u', y'.r'))
      if (h->kind != Term::Kind::GApp) return std::nullopt;
      std::string x0 = h->name;
      TermPtr r0 = h->c;
      if (is_free_in(x0, t->b) || (t->name != x0 && is_free_in(x0, t->c))) {
        std::set<std::string> avoid = free_vars(t->b);
        auto f = free_vars(t->c);
        avoid.insert(f.begin(), f.end());
        auto g = free_vars(r0);
        avoid.insert(g.begin(), g.end());
        std::string nb = fresh_name(x0, avoid);
        r0 = rename_free(r0, x0, nb);
        x0 = nb;
      }
      return gapp(h->a, h->b, x0, gapp(r0, t->b, t->name, t->c));
    }
    case Rule::P2: {
      // t0(u', y'.\x.s) -> \x.t0(u', y'.s)
      if (t->c->kind != Term::Kind::Abs) return std::nullopt;
      std::string x = t->c->name;
      TermPtr s = t->c->a;
      if (is_free_in(x, t->a) || is_free_in(x, t->b)) {
        std::set<std::string> avoid = free_vars(t->a);
        auto f = free_vars(t->b);
        avoid.insert(f.begin(), f.end());
        auto g = free_vars(s);
        avoid.insert(g.begin(), g.end());
        std::string nb = fresh_name(x, avoid);
        s = rename_free(s, x, nb);
        x = nb;
      }
      if (x == t->name) {
        // the continuation binder would capture the lifted body
        std::set<std::string> avoid = free_vars(s);
        auto f = free_vars(t->a);
        avoid.insert(f.begin(), f.end());
        auto g = free_vars(t->b);
        avoid.insert(g.begin(), g.end());
        std::string nb = fresh_name(x, avoid);
        s = rename_free(s, x, nb);
        x = nb;
      }
      return abs(x, gapp(t->a, t->b, t->name, s));
    }
    case Rule::Wh: return std::nullopt;
  }
  return std::nullopt;
}

bool root_step_erasing(Rule rule, const TermPtr& t) {
  if (t->kind != Term::Kind::GApp) return false;
  std::optional<AbsShape> shape;
  if (rule == Rule::Beta) {
    if (t->a->kind != Term::Kind::Abs) return false;
    shape = AbsShape{{}, t->a->name, t->a->a};
  } else if (rule == Rule::DBeta) {
    shape = abstraction_shape(t->a);
    if (!shape) return false;
  } else {
    return false;
  }
  return !is_free_in(shape->binder, shape->lambda_body) || !is_free_in(t->name, t->c);
}

namespace {

void reducts_rec(const RuleSet& rules, const TermPtr& t, Path& here,
                 std::vector<StepRec>& out, const TermPtr& root) {
  for (Rule r : {Rule::Beta, Rule::Pi, Rule::P2, Rule::DBeta}) {
    if (!rules.has(r)) continue;
    if (auto res = step_root(r, t)) {
      StepRec rec;
      rec.rule = r;
      rec.pos = here;
      rec.erasing = root_step_erasing(r, t);
      rec.result = here.empty() ? *res : replace_at(root, here, *res);
      out.push_back(std::move(rec));
    }
  }
  switch (t->kind) {
    case Term::Kind::Var: break;
    case Term::Kind::Abs:
      here.push_back(0);
      reducts_rec(rules, t->a, here, out, root);
      here.pop_back();
      break;
    case Term::Kind::GApp:
      here.push_back(0);
      reducts_rec(rules, t->a, here, out, root);
      here.back() = 1;
      reducts_rec(rules, t->b, here, out, root);
      here.back() = 2;
      reducts_rec(rules, t->c, here, out, root);
      here.pop_back();
      break;
  }
}

}  // namespace

std::vector<StepRec> reducts(const RuleSet& rules, const TermPtr& t) {
  if (rules.has(Rule::Wh))
    throw std::invalid_argument("reducts: wh is a strategy, not closable under contexts");
  std::vector<StepRec> all;
  Path here;
  reducts_rec(rules, t, here, all, t);
  std::vector<StepRec> out;
  std::set<std::pair<int, std::string>> seen;  // (rule, alpha key of result)
  for (auto& st : all)
    if (seen.insert({static_cast<int>(st.rule), alpha_key(st.result)}).second)
      out.push_back(std::move(st));
  return out;
}

std::optional<WhStep> wh_step(const TermPtr& t) {
  if (t->kind != Term::Kind::GApp) return std::nullopt;
  const TermPtr& h = t->a;
  if (auto shape = answer_shape(h)) {
    WhStep st;
    st.W.kind = Context::Kind::WeakHead;
    st.W.root = t;
    st.redex = t;
    st.dn = shape->layers;
    st.lam_binder = shape->binder;
    st.lam_body = shape->lambda_body;
    st.redex_arg = t->b;
    st.cont_binder = t->name;
    st.redex_cont = t->c;
    auto parts = dbeta_parts(*shape, t->b, t->name, t->c);
    st.x_tilde = parts.x_tilde;
    st.dns = parts.dns;
    st.contractum = parts.contractum;
    st.result = parts.result;
    return st;
  }
  if (is_neutral(h)) {
    auto inner = wh_step(t->c);
    if (!inner) return std::nullopt;
    WhStep st = *inner;
    st.W.root = t;
    st.W.hole.clear();
    st.W.hole.push_back(2);
    st.W.hole.insert(st.W.hole.end(), inner->W.hole.begin(), inner->W.hole.end());
    st.result = gapp(h, t->b, t->name, inner->result);
    return st;
  }
  auto inner = wh_step(h);
  if (!inner) return std::nullopt;  // cannot happen: h not in n or a
  WhStep st = *inner;
  st.W.root = t;
  st.W.hole.clear();
  st.W.hole.push_back(0);
  st.W.hole.insert(st.W.hole.end(), inner->W.hole.begin(), inner->W.hole.end());
  st.result = gapp(inner->result, t->b, t->name, t->c);
  return st;
}

namespace {

bool is_restricted_redex(const TermPtr& t) {
  return t->kind == Term::Kind::GApp && answer_shape(t->a).has_value();
}

void wh_decomp_rec(const TermPtr& t, Path& here, std::vector<Path>& out) {
  if (is_restricted_redex(t)) out.push_back(here);
  if (t->kind != Term::Kind::GApp) return;
  here.push_back(0);
  wh_decomp_rec(t->a, here, out);
  here.pop_back();
  if (is_neutral(t->a)) {
    here.push_back(2);
    wh_decomp_rec(t->c, here, out);
    here.pop_back();
  }
}

}  // namespace

std::vector<Path> all_wh_decompositions(const TermPtr& t) {
  std::vector<Path> out;
  Path here;
  wh_decomp_rec(t, here, out);
  return out;
}

namespace {

bool is_m_term(const TermPtr& t);

bool is_mvar_term(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return true;
    case Term::Kind::Abs: return false;
    case Term::Kind::GApp:
      return is_mvar_term(t->a) && is_m_term(t->b) && is_mvar_term(t->c);
  }
  return false;
}

bool is_m_term(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return true;
    case Term::Kind::Abs: return is_m_term(t->a);
    case Term::Kind::GApp:
      return is_mvar_term(t->a) && is_m_term(t->b) && is_m_term(t->c);
  }
  return false;
}

}  // namespace

ClassifyFlags classify(const TermPtr& t) {
  ClassifyFlags f;
  f.is_m = is_m_term(t);
  f.is_mvar = is_mvar_term(t);
  f.is_neutral_n = is_neutral(t);
  f.is_answer_a = is_answer(t);
  f.is_whnf = f.is_neutral_n || f.is_answer_a;
  f.is_dbeta_nf = f.is_m;
  return f;
}

namespace {

// pi-normal application of pi-normal parts.
TermPtr napp(const TermPtr& h, const TermPtr& u, const std::string& y, const TermPtr& r) {
  if (h->kind != Term::Kind::GApp) return gapp(h, u, y, r);
  std::string x0 = h->name;
  TermPtr r0 = h->c;
  if (is_free_in(x0, u) || (y != x0 && is_free_in(x0, r))) {
    std::set<std::string> avoid = free_vars(u);
    auto f = free_vars(r);
    avoid.insert(f.begin(), f.end());
    auto g = free_vars(r0);
    avoid.insert(g.begin(), g.end());
    std::string nb = fresh_name(x0, avoid);
    r0 = rename_free(r0, x0, nb);
    x0 = nb;
  }
  return gapp(h->a, h->b, x0, napp(r0, u, y, r));
}

}  // namespace

TermPtr pi_normal_form(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return t;
    case Term::Kind::Abs: return abs(t->name, pi_normal_form(t->a));
    case Term::Kind::GApp:
      return napp(pi_normal_form(t->a), pi_normal_form(t->b), t->name,
                  pi_normal_form(t->c));
  }
  return t;
}

}  // namespace lj
