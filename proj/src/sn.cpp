#include "lj/sn.hpp"

namespace lj {

SnVerdict sn_search(const TermPtr& t, const RuleSet& rules, const SnOptions& opt) {
  if (rules.has(Rule::Wh))
    throw std::invalid_argument("sn_search: wh is a strategy, not a rule set member");
  std::function<std::vector<TermPtr>(const TermPtr&)> succs = [&](const TermPtr& s) {
    std::vector<TermPtr> out;
    for (auto& st : reducts(rules, s)) out.push_back(st.result);
    return out;
  };
  std::function<std::string(const TermPtr&)> key = [](const TermPtr& s) {
    return alpha_key(s);
  };
  std::function<std::string(const TermPtr&)> show = [](const TermPtr& s) {
    return print_term(s);
  };
  return sn_search_core<TermPtr>(t, succs, key, show, opt);
}

namespace {

constexpr int kRecDepthCap = 2000;

std::optional<long> maxred_rec(const TermPtr& t, long& budget, int depth = 0) {
  if (--budget < 0 || depth > kRecDepthCap) return std::nullopt;
  switch (t->kind) {
    case Term::Kind::Var: return 0;
    case Term::Kind::Abs: return maxred_rec(t->a, budget, depth + 1);
    case Term::Kind::GApp: break;
  }
  auto ws = wh_step(t);
  if (!ws) {
    // weak-head normal: n(u, x.r) with all parts accounted independently
    auto a = maxred_rec(t->a, budget, depth + 1);
    auto b = maxred_rec(t->b, budget, depth + 1);
    auto c = maxred_rec(t->c, budget, depth + 1);
    if (!a || !b || !c) return std::nullopt;
    return *a + *b + *c;
  }
  bool x_used = is_free_in(ws->lam_binder, ws->lam_body);
  bool y_used = is_free_in(ws->cont_binder, ws->redex_cont);
  if (x_used && y_used) {
    auto m = maxred_rec(ws->result, budget, depth + 1);
    if (!m) return std::nullopt;
    return 1 + *m;
  }
  if (!y_used) {
    auto m0 = maxred_rec(replace_at(t, ws->W.hole, ws->redex_cont), budget, depth + 1);
    auto m1 = maxred_rec(ws->dns, budget, depth + 1);
    auto m2 = maxred_rec(ws->redex_arg, budget, depth + 1);
    if (!m0 || !m1 || !m2) return std::nullopt;
    return 1 + *m0 + *m1 + *m2;
  }
  // x not used, y used
  TermPtr t0 =
      replace_at(t, ws->W.hole, substitute(ws->dns, ws->cont_binder, ws->redex_cont));
  auto m0 = maxred_rec(t0, budget, depth + 1);
  auto m2 = maxred_rec(ws->redex_arg, budget, depth + 1);
  if (!m0 || !m2) return std::nullopt;
  return 1 + *m0 + *m2;
}

std::optional<long> rb_rec(const TermPtr& t, long& budget, int depth = 0) {
  if (--budget < 0 || depth > kRecDepthCap) return std::nullopt;
  switch (t->kind) {
    case Term::Kind::Var: return 0;
    case Term::Kind::Abs: return rb_rec(t->a, budget, depth + 1);
    case Term::Kind::GApp: break;
  }
  const TermPtr& h = t->a;
  if (h->kind == Term::Kind::Var) {
    auto b = rb_rec(t->b, budget, depth + 1);
    auto c = rb_rec(t->c, budget, depth + 1);
    if (!b || !c) return std::nullopt;
    return *b + *c;
  }
  if (h->kind == Term::Kind::Abs) {
    bool x_used = is_free_in(h->name, h->a);
    bool y_used = is_free_in(t->name, t->c);
    if (x_used && y_used) {
      auto m = rb_rec(*step_root(Rule::Beta, t), budget, depth + 1);
      if (!m) return std::nullopt;
      return 1 + *m;
    }
    if (!y_used) {
      auto m0 = rb_rec(t->c, budget, depth + 1);
      auto m1 = rb_rec(h->a, budget, depth + 1);
      auto m2 = rb_rec(t->b, budget, depth + 1);
      if (!m0 || !m1 || !m2) return std::nullopt;
      return 1 + *m0 + *m1 + *m2;
    }
    auto m0 = rb_rec(substitute(h->a, t->name, t->c), budget, depth + 1);
    auto m2 = rb_rec(t->b, budget, depth + 1);
    if (!m0 || !m2) return std::nullopt;
    return 1 + *m0 + *m2;
  }
  // nested application head: rbmaxred is invariant under the root pi-step
  return rb_rec(*step_root(Rule::Pi, t), budget, depth + 1);
}

}  // namespace

std::optional<long> maxred_dbeta(const TermPtr& t, long fuel) {
  long budget = fuel;
  return maxred_rec(t, budget);
}

std::optional<long> rb_maxred_betapi(const TermPtr& t, long fuel) {
  long budget = fuel;
  return rb_rec(t, budget);
}

std::optional<long> max_nonerasing_dbeta(const TermPtr& t, const SnOptions& opt) {
  std::map<std::string, long> done;
  std::map<std::string, bool> on_stack;
  long states = 0;
  bool bad = false;
  std::function<std::optional<long>(const TermPtr&, int)> visit =
      [&](const TermPtr& s, int depth) -> std::optional<long> {
    std::string k = alpha_key(s);
    auto dit = done.find(k);
    if (dit != done.end()) return dit->second;
    if (on_stack.count(k) || depth >= opt.max_depth || ++states > opt.max_states) {
      bad = true;
      return std::nullopt;
    }
    on_stack[k] = true;
    long best = 0;
    for (auto& st : reducts(RuleSet{Rule::DBeta}, s)) {
      auto v = visit(st.result, depth + 1);
      if (!v) {
        on_stack.erase(k);
        return std::nullopt;
      }
      long c = *v + (st.erasing ? 0 : 1);
      if (c > best) best = c;
    }
    on_stack.erase(k);
    done[k] = best;
    return best;
  };
  auto r = visit(t, 0);
  (void)bad;
  return r;
}

}  // namespace lj
