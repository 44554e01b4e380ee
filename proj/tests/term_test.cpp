#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "lj/term.hpp"

using namespace lj;

namespace {

// Independent alpha-equivalence oracle: simultaneous traversal carrying a
// binder correspondence.
bool alpha_oracle(const TermPtr& a, const TermPtr& b, std::map<std::string, std::string>& ab,
                  std::map<std::string, std::string>& ba) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Var: {
      auto it = ab.find(a->name);
      auto jt = ba.find(b->name);
      if (it == ab.end() && jt == ba.end()) return a->name == b->name;
      return it != ab.end() && jt != ba.end() && it->second == b->name &&
             jt->second == a->name;
    }
    case Term::Kind::Abs: {
      auto sab = ab, sba = ba;
      sab[a->name] = b->name;
      sba[b->name] = a->name;
      return alpha_oracle(a->a, b->a, sab, sba);
    }
    case Term::Kind::GApp: {
      if (!alpha_oracle(a->a, b->a, ab, ba)) return false;
      if (!alpha_oracle(a->b, b->b, ab, ba)) return false;
      auto sab = ab, sba = ba;
      sab[a->name] = b->name;
      sba[b->name] = a->name;
      return alpha_oracle(a->c, b->c, sab, sba);
    }
  }
  return false;
}

bool alpha_oracle(const TermPtr& a, const TermPtr& b) {
  std::map<std::string, std::string> ab, ba;
  return alpha_oracle(a, b, ab, ba);
}

// Brute-force enumerator used as an independent counting oracle: builds
// every shape with every name choice from a fixed supply, then dedups by
// alpha equivalence.
void brute_enum(int sz, const std::vector<std::string>& names, std::vector<TermPtr>& out) {
  if (sz == 1) {
    for (const auto& n : names) out.push_back(var(n));
    return;
  }
  std::vector<TermPtr> bodies;
  brute_enum(sz - 1, names, bodies);
  for (const auto& n : names)
    for (const auto& b : bodies) out.push_back(abs(n, b));
  for (int ha = 1; ha <= sz - 3; ++ha)
    for (int ua = 1; ua <= sz - 2 - ha; ++ua) {
      int ra = sz - 1 - ha - ua;
      std::vector<TermPtr> hs, us, rs;
      brute_enum(ha, names, hs);
      brute_enum(ua, names, us);
      brute_enum(ra, names, rs);
      for (const auto& n : names)
        for (const auto& h : hs)
          for (const auto& u : us)
            for (const auto& r : rs) out.push_back(gapp(h, u, n, r));
    }
}

}  // namespace

TEST_CASE("free variables") {
  CHECK(free_vars(parse_term("x")) == std::set<std::string>{"x"});
  CHECK(free_vars(parse_term("\\x.x")).empty());
  CHECK(free_vars(parse_term("w(y, x.x)")) == std::set<std::string>({"w", "y"}));
  // fv(t(u, x.r)) = fv t + fv u + (fv r - x)
  TermPtr t = parse_term("w(y, x.x(z, q.q))");
  CHECK(free_vars(t) == std::set<std::string>({"w", "y", "z"}));
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_eq(parse_term("\\x.x"), parse_term("\\y.y")));
  CHECK_FALSE(alpha_eq(parse_term("\\x.x"), parse_term("\\x.y")));
  CHECK(alpha_eq(parse_term("w(u, x.x)"), parse_term("w(u, z.z)")));
  CHECK_FALSE(alpha_eq(parse_term("w(u, x.x)"), parse_term("w(u, x.u)")));
}

TEST_CASE("alpha equivalence agrees with the traversal oracle") {
  auto terms = enumerate_terms(4, {"x", "y"});
  for (size_t i = 0; i < terms.size(); ++i)
    for (size_t j = i; j < terms.size(); ++j)
      CHECK(alpha_eq(terms[i], terms[j]) == alpha_oracle(terms[i], terms[j]));
}

TEST_CASE("substitution basics") {
  CHECK(alpha_eq(substitute(var("y"), "x", parse_term("x")), parse_term("y")));
  // capture avoidance: [y/x](\y.x) renames the binder
  TermPtr s = substitute(var("y"), "x", parse_term("\\y.x"));
  CHECK(alpha_eq(s, parse_term("\\z.y")));
  // distribution over generalized applications
  TermPtr t = parse_term("x(x, q.x)");
  CHECK(alpha_eq(substitute(var("u"), "x", t), parse_term("u(u, q.u)")));
}

TEST_CASE("substitution is identity on non-free variables") {
  for (const auto& t : enumerate_terms(5, {"x", "y"})) {
    if (!is_free_in("q", t)) CHECK(substitute(var("z"), "q", t) == t);
  }
}

TEST_CASE("substitution commutation law") {
  // [u/x][r/y]t = [[u/x]r/y][u/x]t when y not free in u
  auto small = enumerate_terms(3, {"x", "y"});
  for (const auto& t : small)
    for (const auto& r : small) {
      TermPtr u = parse_term("w(w, v.v)");  // y not free in u
      TermPtr lhs = substitute(u, "x", substitute(r, "y", t));
      TermPtr rhs = substitute(substitute(u, "x", r), "y", substitute(u, "x", t));
      CHECK(alpha_eq(lhs, rhs));
    }
}

TEST_CASE("abstraction shape") {
  CHECK(abstraction_shape(parse_term("\\x.x")).has_value());
  auto sh = abstraction_shape(parse_term("w(u, y.\\x.x)"));
  REQUIRE(sh.has_value());
  CHECK(sh->layers.size() == 1);
  CHECK(sh->binder == "x");
  CHECK_FALSE(abstraction_shape(parse_term("w(u, y.y)")).has_value());
  // unique maximal depth
  auto sh2 = abstraction_shape(parse_term("a(b, y.c(d, z.\\x.x))"));
  REQUIRE(sh2.has_value());
  CHECK(sh2->layers.size() == 2);
}

TEST_CASE("abstraction shape matches the grammar") {
  for (const auto& t : enumerate_terms(5, {"x", "y"})) {
    bool grammar;
    // D<\x.u>: descend continuations until an abstraction
    TermPtr cur = t;
    while (is_gapp(cur)) cur = cont(cur);
    grammar = is_abs(cur);
    CHECK(abstraction_shape(t).has_value() == grammar);
  }
}

TEST_CASE("parser and printer round trip") {
  for (const auto& t : enumerate_terms(5, {"x", "y"})) {
    TermPtr back = parse_term(print_term(t));
    CHECK(term_eq_literal(back, t));
  }
  CHECK_THROWS_AS(parse_term("(x"), ParseError);
  CHECK_THROWS_AS(parse_term("x(y)"), ParseError);
  CHECK_THROWS_AS(parse_term(""), ParseError);
}

TEST_CASE("printer emits minimal parentheses") {
  CHECK(print_term(parse_term("x(y, z.z)(u, w.w)")) == "x(y, z.z)(u, w.w)");
  CHECK(print_term(parse_term("(\\x.x)(y, z.z)")) == "(\\x.x)(y, z.z)");
  CHECK(print_term(parse_term("\\x.x(y, z.z)")) == "\\x.x(y, z.z)");
}

TEST_CASE("enumeration small cases") {
  auto ones = enumerate_terms(1, {"x"});
  REQUIRE(ones.size() == 1);
  CHECK(alpha_eq(ones[0], var("x")));
  auto twos = enumerate_terms(2, {"x"});
  // x, \a.x, \a.a
  REQUIRE(twos.size() == 3);
  CHECK(alpha_eq(twos[1], parse_term("\\a.x")));
  CHECK(alpha_eq(twos[2], parse_term("\\a.a")));
}

TEST_CASE("enumeration matches the brute-force oracle count") {
  // closed terms of size exactly <= 4, dedup by alpha
  std::vector<TermPtr> brute;
  for (int s = 1; s <= 4; ++s) brute_enum(s, {"a", "b", "c", "d"}, brute);
  std::set<std::string> classes;
  for (const auto& t : brute)
    if (free_vars(t).empty()) classes.insert(alpha_key(t));
  auto mine = enumerate_terms(4, {});
  std::set<std::string> mine_keys;
  for (const auto& t : mine) mine_keys.insert(alpha_key(t));
  CHECK(mine.size() == mine_keys.size());  // no alpha duplicates
  CHECK(mine_keys == classes);
}

TEST_CASE("enumeration has no duplicates and respects the pool") {
  auto terms = enumerate_terms(5, {"x", "y"});
  std::set<std::string> keys;
  for (const auto& t : terms) {
    CHECK(keys.insert(alpha_key(t)).second);
    for (const auto& v : free_vars(t)) CHECK((v == "x" || v == "y"));
  }
}

TEST_CASE("positions address subterms") {
  TermPtr t = parse_term("a(b, x.c)");
  CHECK(term_eq_literal(subterm_at(t, {0}), var("a")));
  CHECK(term_eq_literal(subterm_at(t, {1}), var("b")));
  CHECK(term_eq_literal(subterm_at(t, {2}), var("c")));
  CHECK(term_eq_literal(replace_at(t, {1}, var("q")), parse_term("a(q, x.c)")));
}

TEST_CASE("context path grammars") {
  TermPtr t = parse_term("a(b, x.c(d, y.e))");
  CHECK(path_is_distant(t, {2}));
  CHECK(path_is_distant(t, {2, 2}));
  CHECK_FALSE(path_is_distant(t, {0}));
  CHECK(path_is_neutral_distant(t, {2, 2}));
  CHECK(path_is_weak_head(t, {0}));
  CHECK(path_is_weak_head(t, {2}));  // head a is neutral
  // every neutral distant path is a weak-head path and a distant path
  for (const Path& p : {Path{2}, Path{2, 2}}) {
    if (path_is_neutral_distant(t, p)) {
      CHECK(path_is_weak_head(t, p));
      CHECK(path_is_distant(t, p));
    }
  }
  TermPtr t2 = parse_term("(\\q.q)(b, x.c)");
  CHECK_FALSE(path_is_neutral_distant(t2, {2}));
  CHECK(path_is_distant(t2, {2}));
}
