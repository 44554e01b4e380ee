#include "lj/term.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

namespace lj {

TermPtr var(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Var;
  t->name = std::move(name);
  t->size = 1;
  return t;
}

TermPtr abs(std::string binder, TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Abs;
  t->name = std::move(binder);
  t->a = std::move(body);
  t->size = 1 + t->a->size;
  return t;
}

TermPtr gapp(TermPtr head, TermPtr arg, std::string binder, TermPtr cont) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::GApp;
  t->a = std::move(head);
  t->b = std::move(arg);
  t->name = std::move(binder);
  t->c = std::move(cont);
  t->size = 1 + t->a->size + t->b->size + t->c->size;
  return t;
}

int term_size(const TermPtr& t) { return t->size; }

std::string path_to_string(const Path& p) {
  std::string s = "[";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ".";
    s += std::to_string(p[i]);
  }
  return s + "]";
}

TermPtr subterm_at(const TermPtr& t, const Path& p) {
  TermPtr cur = t;
  for (int i : p) {
    switch (cur->kind) {
      case Term::Kind::Var: throw std::out_of_range("subterm_at: path into variable");
      case Term::Kind::Abs:
        if (i != 0) throw std::out_of_range("subterm_at: bad child of abstraction");
        cur = cur->a;
        break;
      case Term::Kind::GApp:
        if (i == 0) cur = cur->a;
        else if (i == 1) cur = cur->b;
        else if (i == 2) cur = cur->c;
        else throw std::out_of_range("subterm_at: bad child of application");
        break;
    }
  }
  return cur;
}

TermPtr replace_at(const TermPtr& t, const Path& p, const TermPtr& s) {
  if (p.empty()) return s;
  Path rest(p.begin() + 1, p.end());
  switch (t->kind) {
    case Term::Kind::Var: throw std::out_of_range("replace_at: path into variable");
    case Term::Kind::Abs:
      if (p[0] != 0) throw std::out_of_range("replace_at: bad child of abstraction");
      return abs(t->name, replace_at(t->a, rest, s));
    case Term::Kind::GApp:
      if (p[0] == 0) return gapp(replace_at(t->a, rest, s), t->b, t->name, t->c);
      if (p[0] == 1) return gapp(t->a, replace_at(t->b, rest, s), t->name, t->c);
      if (p[0] == 2) return gapp(t->a, t->b, t->name, replace_at(t->c, rest, s));
      throw std::out_of_range("replace_at: bad child of application");
  }
  return s;  // unreachable
}

static void collect_fv(const TermPtr& t, std::set<std::string>& bound,
                       std::set<std::string>& out) {
  switch (t->kind) {
    case Term::Kind::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      break;
    case Term::Kind::Abs: {
      bool fresh = bound.insert(t->name).second;
      collect_fv(t->a, bound, out);
      if (fresh) bound.erase(t->name);
      break;
    }
    case Term::Kind::GApp: {
      collect_fv(t->a, bound, out);
      collect_fv(t->b, bound, out);
      bool fresh = bound.insert(t->name).second;
      collect_fv(t->c, bound, out);
      if (fresh) bound.erase(t->name);
      break;
    }
  }
}

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> bound, out;
  collect_fv(t, bound, out);
  return out;
}

static void collect_names(const TermPtr& t, std::set<std::string>& out) {
  out.insert(t->name);
  if (t->a) collect_names(t->a, out);
  if (t->b) collect_names(t->b, out);
  if (t->c) collect_names(t->c, out);
}

std::set<std::string> all_names(const TermPtr& t) {
  std::set<std::string> out;
  collect_names(t, out);
  return out;
}

bool is_free_in(const std::string& x, const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return t->name == x;
    case Term::Kind::Abs: return t->name != x && is_free_in(x, t->a);
    case Term::Kind::GApp:
      return is_free_in(x, t->a) || is_free_in(x, t->b) ||
             (t->name != x && is_free_in(x, t->c));
  }
  return false;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string cand = base;
  while (avoid.count(cand)) cand += '\'';
  return cand;
}

namespace {
void alpha_key_rec(const TermPtr& t, std::map<std::string, std::vector<int>>& env,
                   int depth, std::string& out) {
  switch (t->kind) {
    case Term::Kind::Var: {
      auto it = env.find(t->name);
      if (it != env.end() && !it->second.empty())
        out += "b" + std::to_string(depth - it->second.back());
      else
        out += "f" + t->name + ";";
      break;
    }
    case Term::Kind::Abs:
      out += "L.";
      env[t->name].push_back(depth);
      alpha_key_rec(t->a, env, depth + 1, out);
      env[t->name].pop_back();
      break;
    case Term::Kind::GApp:
      out += "A(";
      alpha_key_rec(t->a, env, depth, out);
      out += ",";
      alpha_key_rec(t->b, env, depth, out);
      out += ",";
      env[t->name].push_back(depth);
      alpha_key_rec(t->c, env, depth + 1, out);
      env[t->name].pop_back();
      out += ")";
      break;
  }
}
}  // namespace

std::string alpha_key(const TermPtr& t) {
  std::string out;
  out.reserve(static_cast<size_t>(t->size) * 4);
  std::map<std::string, std::vector<int>> env;
  alpha_key_rec(t, env, 0, out);
  return out;
}

bool alpha_eq(const TermPtr& t1, const TermPtr& t2) {
  if (t1 == t2) return true;
  if (t1->size != t2->size) return false;
  return alpha_key(t1) == alpha_key(t2);
}

bool term_eq_literal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->size != b->size || a->name != b->name) return false;
  switch (a->kind) {
    case Term::Kind::Var: return true;
    case Term::Kind::Abs: return term_eq_literal(a->a, b->a);
    case Term::Kind::GApp:
      return term_eq_literal(a->a, b->a) && term_eq_literal(a->b, b->b) &&
             term_eq_literal(a->c, b->c);
  }
  return false;
}

TermPtr substitute(const TermPtr& u, const std::string& x, const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return t->name == x ? u : t;
    case Term::Kind::Abs: {
      if (t->name == x || !is_free_in(x, t)) return t;
      if (is_free_in(t->name, u)) {
        std::set<std::string> avoid = free_vars(u);
        auto bfv = free_vars(t->a);
        avoid.insert(bfv.begin(), bfv.end());
        avoid.insert(x);
        std::string b = fresh_name(t->name, avoid);
        return abs(b, substitute(u, x, rename_free(t->a, t->name, b)));
      }
      return abs(t->name, substitute(u, x, t->a));
    }
    case Term::Kind::GApp: {
      if (!is_free_in(x, t)) return t;
      TermPtr h = substitute(u, x, t->a);
      TermPtr g = substitute(u, x, t->b);
      if (t->name != x && is_free_in(x, t->c) && is_free_in(t->name, u)) {
        std::set<std::string> avoid = free_vars(u);
        auto cfv = free_vars(t->c);
        avoid.insert(cfv.begin(), cfv.end());
        avoid.insert(x);
        std::string b = fresh_name(t->name, avoid);
        return gapp(h, g, b, substitute(u, x, rename_free(t->c, t->name, b)));
      }
      if (t->name == x || !is_free_in(x, t->c)) return gapp(h, g, t->name, t->c);
      return gapp(h, g, t->name, substitute(u, x, t->c));
    }
  }
  return t;  // unreachable
}

TermPtr rename_free(const TermPtr& t, const std::string& x, const std::string& y) {
  if (x == y) return t;
  return substitute(var(y), x, t);
}

TermPtr plug(const Context& ctx, const TermPtr& s) { return replace_at(ctx.root, ctx.hole, s); }

bool path_is_distant(const TermPtr& root, const Path& p) {
  TermPtr cur = root;
  for (int i : p) {
    if (cur->kind != Term::Kind::GApp || i != 2) return false;
    cur = cur->c;
  }
  return true;
}

static bool is_neutral_term(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return true;
    case Term::Kind::Abs: return false;
    case Term::Kind::GApp: return is_neutral_term(t->a) && is_neutral_term(t->c);
  }
  return false;
}

bool path_is_neutral_distant(const TermPtr& root, const Path& p) {
  TermPtr cur = root;
  for (int i : p) {
    if (cur->kind != Term::Kind::GApp || i != 2) return false;
    if (!is_neutral_term(cur->a)) return false;
    cur = cur->c;
  }
  return true;
}

bool path_is_weak_head(const TermPtr& root, const Path& p) {
  TermPtr cur = root;
  for (int i : p) {
    if (cur->kind != Term::Kind::GApp) return false;
    if (i == 0) {
      cur = cur->a;
    } else if (i == 2) {
      if (!is_neutral_term(cur->a)) return false;
      cur = cur->c;
    } else {
      return false;
    }
  }
  return true;
}

std::optional<AbsShape> abstraction_shape(const TermPtr& t) {
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
        shape.layers.push_back({cur->a, cur->b, cur->name});
        cur = cur->c;
        break;
    }
  }
}

TermPtr plug_layers_avoiding(const std::vector<GLayer>& layers, const TermPtr& core,
                             const std::set<std::string>& protect) {
  // Freshen binders outermost-in, renaming through the suffix, then
  // rebuild innermost-out.
  std::vector<GLayer> ls = layers;
  TermPtr body = core;
  for (size_t i = 0; i < ls.size(); ++i) {
    if (!protect.count(ls[i].binder)) continue;
    std::set<std::string> avoid = protect;
    for (size_t j = i + 1; j < ls.size(); ++j) {
      auto f1 = free_vars(ls[j].head), f2 = free_vars(ls[j].arg);
      avoid.insert(f1.begin(), f1.end());
      avoid.insert(f2.begin(), f2.end());
      avoid.insert(ls[j].binder);
    }
    auto fb = free_vars(body);
    avoid.insert(fb.begin(), fb.end());
    std::string nb = fresh_name(ls[i].binder, avoid);
    // Rename bound occurrences in the scope of layer i: deeper layers and the core.
    std::string old = ls[i].binder;
    ls[i].binder = nb;
    bool shadowed = false;
    for (size_t j = i + 1; j < ls.size() && !shadowed; ++j) {
      ls[j].head = rename_free(ls[j].head, old, nb);
      ls[j].arg = rename_free(ls[j].arg, old, nb);
      if (ls[j].binder == old) shadowed = true;  // deeper binder shadows
    }
    if (!shadowed) body = rename_free(body, old, nb);
  }
  TermPtr cur = body;
  for (auto it = ls.rbegin(); it != ls.rend(); ++it)
    cur = gapp(it->head, it->arg, it->binder, cur);
  return cur;
}

// ---------------------------------------------------------------------------
// Concrete syntax.
//   term ::= atom | '\' ident '.' term
//   atom ::= ident | '(' term ')' | atom '(' term ',' ident '.' term ')'

namespace {

bool ident_start(unsigned char ch) {
  return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || ch == '_' || ch >= 0x80;
}
bool ident_char(unsigned char ch) {
  return ident_start(ch) || (ch >= '0' && ch <= '9') || ch == '\'';
}

struct Parser {
  const std::string& src;
  size_t pos = 0;

  explicit Parser(const std::string& s) : src(s) {}

  void skip_ws() {
    while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t' || src[pos] == '\n' ||
                                src[pos] == '\r'))
      ++pos;
  }
  bool peek(char ch) {
    skip_ws();
    return pos < src.size() && src[pos] == ch;
  }
  bool eat(char ch) {
    if (peek(ch)) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char ch) {
    if (!eat(ch)) throw ParseError(std::string("expected '") + ch + "'", pos);
  }
  std::string ident() {
    skip_ws();
    size_t start = pos;
    if (pos >= src.size() || !ident_start(static_cast<unsigned char>(src[pos])))
      throw ParseError("expected identifier", pos);
    while (pos < src.size() && ident_char(static_cast<unsigned char>(src[pos]))) ++pos;
    return src.substr(start, pos - start);
  }

  TermPtr term() {
    if (eat('\\')) {
      std::string b = ident();
      expect('.');
      return abs(b, term());
    }
    return atom();
  }

  TermPtr atom() {
    TermPtr t;
    skip_ws();
    if (eat('(')) {
      t = term();
      expect(')');
    } else {
      t = var(ident());
    }
    while (peek('(')) {
      ++pos;
      TermPtr u = term();
      expect(',');
      std::string b = ident();
      expect('.');
      TermPtr r = term();
      expect(')');
      t = gapp(t, u, b, r);
    }
    return t;
  }
};

void print_rec(const TermPtr& t, std::string& out, bool atom_ctx) {
  switch (t->kind) {
    case Term::Kind::Var: out += t->name; break;
    case Term::Kind::Abs:
      if (atom_ctx) {
        out += '(';
        print_rec(t, out, false);
        out += ')';
      } else {
        out += '\\';
        out += t->name;
        out += '.';
        print_rec(t->a, out, false);
      }
      break;
    case Term::Kind::GApp:
      print_rec(t->a, out, true);
      out += '(';
      print_rec(t->b, out, false);
      out += ", ";
      out += t->name;
      out += '.';
      print_rec(t->c, out, false);
      out += ')';
      break;
  }
}

}  // namespace

std::string print_term(const TermPtr& t) {
  std::string out;
  print_rec(t, out, false);
  return out;
}

TermPtr parse_term(const std::string& src) {
  Parser p(src);
  TermPtr t = p.term();
  p.skip_ws();
  if (p.pos != src.size()) throw ParseError("trailing input", p.pos);
  return t;
}

// ---------------------------------------------------------------------------
// Enumeration. Binders are named by depth (e0, e1, ...), which makes each
// alpha-class appear exactly once.

namespace {

// All terms of exactly size sz whose free variables come from scope.
void enum_exact(int sz, const std::vector<std::string>& scope, int depth,
                std::vector<TermPtr>& out) {
  if (sz < 1) return;
  if (sz == 1) {
    for (const auto& n : scope) out.push_back(var(n));
    return;
  }
  std::string b = "e" + std::to_string(depth);
  std::vector<std::string> inner = scope;
  inner.push_back(b);
  // Abs
  {
    std::vector<TermPtr> bodies;
    enum_exact(sz - 1, inner, depth + 1, bodies);
    for (auto& bo : bodies) out.push_back(abs(b, bo));
  }
  // GApp
  for (int ha = 1; ha <= sz - 3; ++ha)
    for (int ua = 1; ua <= sz - 2 - ha; ++ua) {
      int ra = sz - 1 - ha - ua;
      std::vector<TermPtr> hs, us, rs;
      enum_exact(ha, scope, depth, hs);
      enum_exact(ua, scope, depth, us);
      enum_exact(ra, inner, depth + 1, rs);
      for (auto& h : hs)
        for (auto& u : us)
          for (auto& r : rs) out.push_back(gapp(h, u, b, r));
    }
}

}  // namespace

std::vector<TermPtr> enumerate_terms(int max_size, const std::vector<std::string>& pool) {
  std::vector<TermPtr> out;
  for (int s = 1; s <= max_size; ++s) enum_exact(s, pool, 0, out);
  return out;
}

}  // namespace lj
