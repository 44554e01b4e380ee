#include "lj/es.hpp"

#include <functional>
#include <map>

namespace lj {

// --- ES terms -----------------------------------------------------------------

ESPtr esvar(std::string name) {
  auto t = std::make_shared<ESTerm>();
  t->kind = ESTerm::Kind::Var;
  t->name = std::move(name);
  t->size = 1;
  return t;
}

ESPtr esabs(std::string binder, ESPtr body) {
  auto t = std::make_shared<ESTerm>();
  t->kind = ESTerm::Kind::Abs;
  t->name = std::move(binder);
  t->a = std::move(body);
  t->size = 1 + t->a->size;
  return t;
}

ESPtr esapp(ESPtr fun, ESPtr arg) {
  auto t = std::make_shared<ESTerm>();
  t->kind = ESTerm::Kind::App;
  t->a = std::move(fun);
  t->b = std::move(arg);
  t->size = 1 + t->a->size + t->b->size;
  return t;
}

ESPtr essub(ESPtr subject, std::string binder, ESPtr bound) {
  auto t = std::make_shared<ESTerm>();
  t->kind = ESTerm::Kind::Sub;
  t->name = std::move(binder);
  t->a = std::move(subject);
  t->b = std::move(bound);
  t->size = 1 + t->a->size + t->b->size;
  return t;
}

namespace {

void es_fv(const ESPtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t->kind) {
    case ESTerm::Kind::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      break;
    case ESTerm::Kind::Abs: {
      bool fresh = bound.insert(t->name).second;
      es_fv(t->a, bound, out);
      if (fresh) bound.erase(t->name);
      break;
    }
    case ESTerm::Kind::App:
      es_fv(t->a, bound, out);
      es_fv(t->b, bound, out);
      break;
    case ESTerm::Kind::Sub: {
      es_fv(t->b, bound, out);
      bool fresh = bound.insert(t->name).second;
      es_fv(t->a, bound, out);
      if (fresh) bound.erase(t->name);
      break;
    }
  }
}

}  // namespace

std::set<std::string> es_free_vars(const ESPtr& t) {
  std::set<std::string> bound, out;
  es_fv(t, bound, out);
  return out;
}

bool es_is_free_in(const std::string& x, const ESPtr& t) {
  switch (t->kind) {
    case ESTerm::Kind::Var: return t->name == x;
    case ESTerm::Kind::Abs: return t->name != x && es_is_free_in(x, t->a);
    case ESTerm::Kind::App: return es_is_free_in(x, t->a) || es_is_free_in(x, t->b);
    case ESTerm::Kind::Sub:
      return es_is_free_in(x, t->b) || (t->name != x && es_is_free_in(x, t->a));
  }
  return false;
}

std::set<std::string> es_all_names(const ESPtr& t) {
  std::set<std::string> out;
  std::function<void(const ESPtr&)> rec = [&](const ESPtr& s) {
    out.insert(s->name);
    if (s->a) rec(s->a);
    if (s->b) rec(s->b);
  };
  rec(t);
  return out;
}

namespace {

void es_key(const ESPtr& t, std::map<std::string, std::vector<int>>& env, int depth,
            std::string& out) {
  switch (t->kind) {
    case ESTerm::Kind::Var: {
      auto it = env.find(t->name);
      if (it != env.end() && !it->second.empty())
        out += "b" + std::to_string(depth - it->second.back());
      else
        out += "f" + t->name + ";";
      break;
    }
    case ESTerm::Kind::Abs:
      out += "L.";
      env[t->name].push_back(depth);
      es_key(t->a, env, depth + 1, out);
      env[t->name].pop_back();
      break;
    case ESTerm::Kind::App:
      out += "A(";
      es_key(t->a, env, depth, out);
      out += ",";
      es_key(t->b, env, depth, out);
      out += ")";
      break;
    case ESTerm::Kind::Sub:
      out += "S(";
      es_key(t->b, env, depth, out);
      out += ",";
      env[t->name].push_back(depth);
      es_key(t->a, env, depth + 1, out);
      env[t->name].pop_back();
      out += ")";
      break;
  }
}

}  // namespace

std::string es_alpha_key(const ESPtr& t) {
  std::string out;
  std::map<std::string, std::vector<int>> env;
  es_key(t, env, 0, out);
  return out;
}

bool es_alpha_eq(const ESPtr& a, const ESPtr& b) {
  return a == b || es_alpha_key(a) == es_alpha_key(b);
}

namespace {

ESPtr es_rename(const ESPtr& t, const std::string& x, const std::string& y);

}  // namespace

ESPtr es_substitute(const ESPtr& u, const std::string& x, const ESPtr& t) {
  switch (t->kind) {
    case ESTerm::Kind::Var: return t->name == x ? u : t;
    case ESTerm::Kind::Abs: {
      if (t->name == x || !es_is_free_in(x, t)) return t;
      if (es_is_free_in(t->name, u)) {
        std::set<std::string> avoid = es_free_vars(u);
        auto f = es_free_vars(t->a);
        avoid.insert(f.begin(), f.end());
        avoid.insert(x);
        std::string nb = fresh_name(t->name, avoid);
        return esabs(nb, es_substitute(u, x, es_rename(t->a, t->name, nb)));
      }
      return esabs(t->name, es_substitute(u, x, t->a));
    }
    case ESTerm::Kind::App:
      if (!es_is_free_in(x, t)) return t;
      return esapp(es_substitute(u, x, t->a), es_substitute(u, x, t->b));
    case ESTerm::Kind::Sub: {
      if (!es_is_free_in(x, t)) return t;
      ESPtr nb_ = es_substitute(u, x, t->b);
      if (t->name != x && es_is_free_in(x, t->a) && es_is_free_in(t->name, u)) {
        std::set<std::string> avoid = es_free_vars(u);
        auto f = es_free_vars(t->a);
        avoid.insert(f.begin(), f.end());
        avoid.insert(x);
        std::string nn = fresh_name(t->name, avoid);
        return essub(es_substitute(u, x, es_rename(t->a, t->name, nn)), nn, nb_);
      }
      if (t->name == x || !es_is_free_in(x, t->a)) return essub(t->a, t->name, nb_);
      return essub(es_substitute(u, x, t->a), t->name, nb_);
    }
  }
  return t;
}

namespace {

ESPtr es_rename(const ESPtr& t, const std::string& x, const std::string& y) {
  if (x == y) return t;
  return es_substitute(esvar(y), x, t);
}

}  // namespace

std::string es_rule_name(ESRule r) {
  switch (r) {
    case ESRule::DB: return "db";
    case ESRule::B: return "b";
    case ESRule::S: return "s";
    case ESRule::Sigma1: return "sigma1";
    case ESRule::Sigma4: return "sigma4";
  }
  return "?";
}

std::optional<ESRule> es_rule_from_name(const std::string& s) {
  if (s == "db" || s == "dB") return ESRule::DB;
  if (s == "b" || s == "B") return ESRule::B;
  if (s == "s") return ESRule::S;
  if (s == "sigma1") return ESRule::Sigma1;
  if (s == "sigma4") return ESRule::Sigma4;
  return std::nullopt;
}

std::optional<ESPtr> es_step_root(ESRule rule, const ESPtr& t) {
  switch (rule) {
    case ESRule::DB:
    case ESRule::B: {
      if (t->kind != ESTerm::Kind::App) return std::nullopt;
      // peel the list context off the function part
      std::vector<std::pair<std::string, ESPtr>> layers;  // outermost first
      ESPtr core = t->a;
      while (core->kind == ESTerm::Kind::Sub) {
        layers.push_back({core->name, core->b});
        core = core->a;
      }
      if (core->kind != ESTerm::Kind::Abs) return std::nullopt;
      if (rule == ESRule::B && !layers.empty()) return std::nullopt;
      // L<\x.M> N -> L<M[x := N]>; freshen L's binders against fv(N)
      ESPtr inner = essub(core->a, core->name, t->b);
      std::set<std::string> protect = es_free_vars(t->b);
      ESPtr cur = inner;
      for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
        std::string b = it->first;
        if (protect.count(b)) {
          std::set<std::string> avoid = protect;
          auto f = es_all_names(cur);
          avoid.insert(f.begin(), f.end());
          std::string nb = fresh_name(b, avoid);
          cur = es_rename(cur, b, nb);
          b = nb;
        }
        cur = essub(cur, b, it->second);
      }
      return cur;
    }
    case ESRule::S:
      if (t->kind != ESTerm::Kind::Sub) return std::nullopt;
      return es_substitute(t->b, t->name, t->a);
    case ESRule::Sigma1: {
      // (M[x := P]) N -> (M N)[x := P]
      if (t->kind != ESTerm::Kind::App || t->a->kind != ESTerm::Kind::Sub)
        return std::nullopt;
      std::string x = t->a->name;
      ESPtr m = t->a->a;
      if (es_is_free_in(x, t->b)) {
        std::set<std::string> avoid = es_free_vars(t->b);
        auto f = es_all_names(m);
        avoid.insert(f.begin(), f.end());
        std::string nb = fresh_name(x, avoid);
        m = es_rename(m, x, nb);
        x = nb;
      }
      return essub(esapp(m, t->b), x, t->a->b);
    }
    case ESRule::Sigma4: {
      // M[y := P[x := Q]] -> M[y := P][x := Q]
      if (t->kind != ESTerm::Kind::Sub || t->b->kind != ESTerm::Kind::Sub)
        return std::nullopt;
      std::string x = t->b->name;
      ESPtr p = t->b->a;
      if (es_is_free_in(x, t->a)) {
        std::set<std::string> avoid = es_free_vars(t->a);
        auto f = es_all_names(p);
        avoid.insert(f.begin(), f.end());
        std::string nb = fresh_name(x, avoid);
        p = es_rename(p, x, nb);
        x = nb;
      }
      return essub(essub(t->a, t->name, p), x, t->b->b);
    }
  }
  return std::nullopt;
}

namespace {

void es_reducts_rec(const std::vector<ESRule>& rules, const ESPtr& t, Path& here,
                    std::vector<ESStep>& out, const ESPtr& root,
                    const std::function<ESPtr(const Path&, const ESPtr&)>& rebuild) {
  for (ESRule r : rules)
    if (auto res = es_step_root(r, t)) out.push_back({r, here, rebuild(here, *res)});
  auto recurse = [&](int idx, const ESPtr& child) {
    here.push_back(idx);
    es_reducts_rec(rules, child, here, out, root, rebuild);
    here.pop_back();
  };
  switch (t->kind) {
    case ESTerm::Kind::Var: break;
    case ESTerm::Kind::Abs: recurse(0, t->a); break;
    case ESTerm::Kind::App:
    case ESTerm::Kind::Sub:
      recurse(0, t->a);
      recurse(1, t->b);
      break;
  }
}

ESPtr es_replace_at(const ESPtr& t, const Path& p, size_t i, const ESPtr& s) {
  if (i == p.size()) return s;
  switch (t->kind) {
    case ESTerm::Kind::Var: throw std::out_of_range("es_replace_at");
    case ESTerm::Kind::Abs:
      if (p[i] != 0) throw std::out_of_range("es_replace_at");
      return esabs(t->name, es_replace_at(t->a, p, i + 1, s));
    case ESTerm::Kind::App:
      if (p[i] == 0) return esapp(es_replace_at(t->a, p, i + 1, s), t->b);
      if (p[i] == 1) return esapp(t->a, es_replace_at(t->b, p, i + 1, s));
      throw std::out_of_range("es_replace_at");
    case ESTerm::Kind::Sub:
      if (p[i] == 0) return essub(es_replace_at(t->a, p, i + 1, s), t->name, t->b);
      if (p[i] == 1) return essub(t->a, t->name, es_replace_at(t->b, p, i + 1, s));
      throw std::out_of_range("es_replace_at");
  }
  return s;
}

}  // namespace

std::vector<ESStep> es_reducts(const std::vector<ESRule>& rules, const ESPtr& t) {
  std::vector<ESStep> all;
  Path here;
  es_reducts_rec(rules, t, here, all, t, [&](const Path& p, const ESPtr& s) {
    return es_replace_at(t, p, 0, s);
  });
  std::vector<ESStep> out;
  std::set<std::pair<int, std::string>> seen;
  for (auto& st : all)
    if (seen.insert({static_cast<int>(st.rule), es_alpha_key(st.result)}).second)
      out.push_back(std::move(st));
  return out;
}

SnVerdict es_sn_search(const ESPtr& t, const std::vector<ESRule>& rules,
                       const SnOptions& opt) {
  std::function<std::vector<ESPtr>(const ESPtr&)> succs = [&](const ESPtr& s) {
    std::vector<ESPtr> out;
    for (auto& st : es_reducts(rules, s)) out.push_back(st.result);
    return out;
  };
  std::function<std::string(const ESPtr&)> key = [](const ESPtr& s) {
    return es_alpha_key(s);
  };
  std::function<std::string(const ESPtr&)> show = [](const ESPtr& s) {
    return print_es(s);
  };
  return sn_search_core<ESPtr>(t, succs, key, show, opt);
}

// Concrete syntax: application by juxtaposition (left-assoc), postfix
// M[x := N], abstractions extend to the right.
namespace {

bool es_ident_start(unsigned char ch) {
  return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || ch == '_' || ch >= 0x80;
}
bool es_ident_char(unsigned char ch) {
  return es_ident_start(ch) || (ch >= '0' && ch <= '9') || ch == '\'';
}

struct ESParser {
  const std::string& src;
  size_t pos = 0;
  explicit ESParser(const std::string& s) : src(s) {}
  void ws() {
    while (pos < src.size() && isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }
  bool peek(char c) {
    ws();
    return pos < src.size() && src[pos] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos);
  }
  std::string ident() {
    ws();
    size_t start = pos;
    if (pos >= src.size() || !es_ident_start(static_cast<unsigned char>(src[pos])))
      throw ParseError("expected identifier", pos);
    while (pos < src.size() && es_ident_char(static_cast<unsigned char>(src[pos]))) ++pos;
    return src.substr(start, pos - start);
  }
  ESPtr term() {
    if (eat('\\')) {
      std::string b = ident();
      expect('.');
      return esabs(b, term());
    }
    ESPtr t = postfix();
    for (;;) {
      ws();
      if (pos >= src.size() || src[pos] == ')' || src[pos] == ']' || src[pos] == ',')
        break;
      t = esapp(t, postfix());
    }
    return t;
  }
  ESPtr postfix() {
    ESPtr t = atom();
    while (eat('[')) {
      std::string b = ident();
      ws();
      if (pos + 1 >= src.size() || src[pos] != ':' || src[pos + 1] != '=')
        throw ParseError("expected ':='", pos);
      pos += 2;
      ESPtr n = term();
      expect(']');
      t = essub(t, b, n);
    }
    return t;
  }
  ESPtr atom() {
    if (eat('(')) {
      ESPtr t = term();
      expect(')');
      return t;
    }
    return esvar(ident());
  }
};

void es_print_rec(const ESPtr& t, std::string& out, int ctx) {
  // ctx: 0 = term, 1 = application operand/postfix, 2 = atom
  switch (t->kind) {
    case ESTerm::Kind::Var: out += t->name; break;
    case ESTerm::Kind::Abs:
      if (ctx > 0) {
        out += '(';
        es_print_rec(t, out, 0);
        out += ')';
      } else {
        out += '\\';
        out += t->name;
        out += '.';
        es_print_rec(t->a, out, 0);
      }
      break;
    case ESTerm::Kind::App:
      if (ctx > 1) {
        out += '(';
        es_print_rec(t, out, 0);
        out += ')';
      } else {
        es_print_rec(t->a, out, 1);
        out += ' ';
        es_print_rec(t->b, out, 2);
      }
      break;
    case ESTerm::Kind::Sub:
      es_print_rec(t->a, out, 2);
      out += '[';
      out += t->name;
      out += " := ";
      es_print_rec(t->b, out, 0);
      out += ']';
      break;
  }
}

}  // namespace

std::string print_es(const ESPtr& t) {
  std::string out;
  es_print_rec(t, out, 0);
  return out;
}

ESPtr parse_es(const std::string& src) {
  ESParser p(src);
  ESPtr t = p.term();
  p.ws();
  if (p.pos != src.size()) throw ParseError("trailing input", p.pos);
  return t;
}

// --- lambda-calculus ------------------------------------------------------------

LamPtr lvar(std::string name) {
  auto t = std::make_shared<LamTerm>();
  t->kind = LamTerm::Kind::Var;
  t->name = std::move(name);
  t->size = 1;
  return t;
}

LamPtr labs(std::string binder, LamPtr body) {
  auto t = std::make_shared<LamTerm>();
  t->kind = LamTerm::Kind::Abs;
  t->name = std::move(binder);
  t->a = std::move(body);
  t->size = 1 + t->a->size;
  return t;
}

LamPtr lapp(LamPtr fun, LamPtr arg) {
  auto t = std::make_shared<LamTerm>();
  t->kind = LamTerm::Kind::App;
  t->a = std::move(fun);
  t->b = std::move(arg);
  t->size = 1 + t->a->size + t->b->size;
  return t;
}

namespace {

void lam_fv(const LamPtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t->kind) {
    case LamTerm::Kind::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      break;
    case LamTerm::Kind::Abs: {
      bool fresh = bound.insert(t->name).second;
      lam_fv(t->a, bound, out);
      if (fresh) bound.erase(t->name);
      break;
    }
    case LamTerm::Kind::App:
      lam_fv(t->a, bound, out);
      lam_fv(t->b, bound, out);
      break;
  }
}

}  // namespace

std::set<std::string> lam_free_vars(const LamPtr& t) {
  std::set<std::string> bound, out;
  lam_fv(t, bound, out);
  return out;
}

bool lam_is_free_in(const std::string& x, const LamPtr& t) {
  switch (t->kind) {
    case LamTerm::Kind::Var: return t->name == x;
    case LamTerm::Kind::Abs: return t->name != x && lam_is_free_in(x, t->a);
    case LamTerm::Kind::App: return lam_is_free_in(x, t->a) || lam_is_free_in(x, t->b);
  }
  return false;
}

namespace {

void lam_key(const LamPtr& t, std::map<std::string, std::vector<int>>& env, int depth,
             std::string& out) {
  switch (t->kind) {
    case LamTerm::Kind::Var: {
      auto it = env.find(t->name);
      if (it != env.end() && !it->second.empty())
        out += "b" + std::to_string(depth - it->second.back());
      else
        out += "f" + t->name + ";";
      break;
    }
    case LamTerm::Kind::Abs:
      out += "L.";
      env[t->name].push_back(depth);
      lam_key(t->a, env, depth + 1, out);
      env[t->name].pop_back();
      break;
    case LamTerm::Kind::App:
      out += "A(";
      lam_key(t->a, env, depth, out);
      out += ",";
      lam_key(t->b, env, depth, out);
      out += ")";
      break;
  }
}

}  // namespace

std::string lam_alpha_key(const LamPtr& t) {
  std::string out;
  std::map<std::string, std::vector<int>> env;
  lam_key(t, env, 0, out);
  return out;
}

bool lam_alpha_eq(const LamPtr& a, const LamPtr& b) {
  return a == b || lam_alpha_key(a) == lam_alpha_key(b);
}

LamPtr lam_substitute(const LamPtr& u, const std::string& x, const LamPtr& t) {
  switch (t->kind) {
    case LamTerm::Kind::Var: return t->name == x ? u : t;
    case LamTerm::Kind::Abs: {
      if (t->name == x || !lam_is_free_in(x, t)) return t;
      if (lam_is_free_in(t->name, u)) {
        std::set<std::string> avoid = lam_free_vars(u);
        auto f = lam_free_vars(t->a);
        avoid.insert(f.begin(), f.end());
        avoid.insert(x);
        std::string nb = fresh_name(t->name, avoid);
        return labs(nb, lam_substitute(u, x, lam_substitute(lvar(nb), t->name, t->a)));
      }
      return labs(t->name, lam_substitute(u, x, t->a));
    }
    case LamTerm::Kind::App:
      if (!lam_is_free_in(x, t)) return t;
      return lapp(lam_substitute(u, x, t->a), lam_substitute(u, x, t->b));
  }
  return t;
}

std::string lam_rule_name(LamRule r) {
  switch (r) {
    case LamRule::Beta: return "beta";
    case LamRule::Sigma1: return "sigma1";
    case LamRule::Sigma2: return "sigma2";
  }
  return "?";
}

std::optional<LamRule> lam_rule_from_name(const std::string& s) {
  if (s == "beta") return LamRule::Beta;
  if (s == "sigma1") return LamRule::Sigma1;
  if (s == "sigma2") return LamRule::Sigma2;
  return std::nullopt;
}

std::optional<LamPtr> lam_step_root(LamRule rule, const LamPtr& t) {
  switch (rule) {
    case LamRule::Beta:
      if (t->kind != LamTerm::Kind::App || t->a->kind != LamTerm::Kind::Abs)
        return std::nullopt;
      return lam_substitute(t->b, t->a->name, t->a->a);
    case LamRule::Sigma1: {
      // (\x.M) N N' -> (\x.M N') N
      if (t->kind != LamTerm::Kind::App || t->a->kind != LamTerm::Kind::App ||
          t->a->a->kind != LamTerm::Kind::Abs)
        return std::nullopt;
      std::string x = t->a->a->name;
      LamPtr m = t->a->a->a;
      if (lam_is_free_in(x, t->b)) {
        std::set<std::string> avoid = lam_free_vars(t->b);
        auto f = lam_free_vars(m);
        avoid.insert(f.begin(), f.end());
        std::string nb = fresh_name(x, avoid);
        m = lam_substitute(lvar(nb), x, m);
        x = nb;
      }
      return lapp(labs(x, lapp(m, t->b)), t->a->b);
    }
    case LamRule::Sigma2: {
      // (\x.\y.M) N -> \y.(\x.M) N
      if (t->kind != LamTerm::Kind::App || t->a->kind != LamTerm::Kind::Abs ||
          t->a->a->kind != LamTerm::Kind::Abs)
        return std::nullopt;
      std::string x = t->a->name;
      std::string y = t->a->a->name;
      LamPtr m = t->a->a->a;
      if (lam_is_free_in(y, t->b) || y == x) {
        std::set<std::string> avoid = lam_free_vars(t->b);
        auto f = lam_free_vars(m);
        avoid.insert(f.begin(), f.end());
        avoid.insert(x);
        std::string nb = fresh_name(y, avoid);
        m = lam_substitute(lvar(nb), y, m);
        y = nb;
      }
      return labs(y, lapp(labs(x, m), t->b));
    }
  }
  return std::nullopt;
}

namespace {

LamPtr lam_replace_at(const LamPtr& t, const Path& p, size_t i, const LamPtr& s) {
  if (i == p.size()) return s;
  switch (t->kind) {
    case LamTerm::Kind::Var: throw std::out_of_range("lam_replace_at");
    case LamTerm::Kind::Abs:
      if (p[i] != 0) throw std::out_of_range("lam_replace_at");
      return labs(t->name, lam_replace_at(t->a, p, i + 1, s));
    case LamTerm::Kind::App:
      if (p[i] == 0) return lapp(lam_replace_at(t->a, p, i + 1, s), t->b);
      if (p[i] == 1) return lapp(t->a, lam_replace_at(t->b, p, i + 1, s));
      throw std::out_of_range("lam_replace_at");
  }
  return s;
}

void lam_reducts_rec(const std::vector<LamRule>& rules, const LamPtr& t, Path& here,
                     std::vector<LamStep>& out, const LamPtr& root) {
  for (LamRule r : rules)
    if (auto res = lam_step_root(r, t))
      out.push_back({r, here, lam_replace_at(root, here, 0, *res)});
  switch (t->kind) {
    case LamTerm::Kind::Var: break;
    case LamTerm::Kind::Abs:
      here.push_back(0);
      lam_reducts_rec(rules, t->a, here, out, root);
      here.pop_back();
      break;
    case LamTerm::Kind::App:
      here.push_back(0);
      lam_reducts_rec(rules, t->a, here, out, root);
      here.back() = 1;
      lam_reducts_rec(rules, t->b, here, out, root);
      here.pop_back();
      break;
  }
}

}  // namespace

std::vector<LamStep> lam_reducts(const std::vector<LamRule>& rules, const LamPtr& t) {
  std::vector<LamStep> all;
  Path here;
  lam_reducts_rec(rules, t, here, all, t);
  std::vector<LamStep> out;
  std::set<std::pair<int, std::string>> seen;
  for (auto& st : all)
    if (seen.insert({static_cast<int>(st.rule), lam_alpha_key(st.result)}).second)
      out.push_back(std::move(st));
  return out;
}

SnVerdict lam_sn_search(const LamPtr& t, const std::vector<LamRule>& rules,
                        const SnOptions& opt) {
  std::function<std::vector<LamPtr>(const LamPtr&)> succs = [&](const LamPtr& s) {
    std::vector<LamPtr> out;
    for (auto& st : lam_reducts(rules, s)) out.push_back(st.result);
    return out;
  };
  std::function<std::string(const LamPtr&)> key = [](const LamPtr& s) {
    return lam_alpha_key(s);
  };
  std::function<std::string(const LamPtr&)> show = [](const LamPtr& s) {
    return print_lam(s);
  };
  return sn_search_core<LamPtr>(t, succs, key, show, opt);
}

namespace {

void lam_print_rec(const LamPtr& t, std::string& out, int ctx) {
  switch (t->kind) {
    case LamTerm::Kind::Var: out += t->name; break;
    case LamTerm::Kind::Abs:
      if (ctx > 0) {
        out += '(';
        lam_print_rec(t, out, 0);
        out += ')';
      } else {
        out += '\\';
        out += t->name;
        out += '.';
        lam_print_rec(t->a, out, 0);
      }
      break;
    case LamTerm::Kind::App:
      if (ctx > 1) {
        out += '(';
        lam_print_rec(t, out, 0);
        out += ')';
      } else {
        lam_print_rec(t->a, out, 1);
        out += ' ';
        lam_print_rec(t->b, out, 2);
      }
      break;
  }
}

struct LamParser {
  const std::string& src;
  size_t pos = 0;
  explicit LamParser(const std::string& s) : src(s) {}
  void ws() {
    while (pos < src.size() && isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }
  bool eat(char c) {
    ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::string ident() {
    ws();
    size_t start = pos;
    if (pos >= src.size() || !es_ident_start(static_cast<unsigned char>(src[pos])))
      throw ParseError("expected identifier", pos);
    while (pos < src.size() && es_ident_char(static_cast<unsigned char>(src[pos]))) ++pos;
    return src.substr(start, pos - start);
  }
  LamPtr term() {
    if (eat('\\')) {
      std::string b = ident();
      if (!eat('.')) throw ParseError("expected '.'", pos);
      return labs(b, term());
    }
    LamPtr t = atom();
    for (;;) {
      ws();
      if (pos >= src.size() || src[pos] == ')') break;
      t = lapp(t, atom());
    }
    return t;
  }
  LamPtr atom() {
    if (eat('(')) {
      LamPtr t = term();
      if (!eat(')')) throw ParseError("expected ')'", pos);
      return t;
    }
    return lvar(ident());
  }
};

}  // namespace

std::string print_lam(const LamPtr& t) {
  std::string out;
  lam_print_rec(t, out, 0);
  return out;
}

LamPtr parse_lam(const std::string& src) {
  LamParser p(src);
  LamPtr t = p.term();
  p.ws();
  if (p.pos != src.size()) throw ParseError("trailing input", p.pos);
  return t;
}

}  // namespace lj
