#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lj/quant_ops.hpp"
#include "lj/translate.hpp"

using namespace lj;

namespace {
TermPtr delta() { return parse_term("\\y.y(y, w.w)"); }
}  // namespace

TEST_CASE("naive translation") {
  CHECK(es_alpha_eq(j_to_es_naive(parse_term("x(y, z.z)")), parse_es("z[z := x y]")));
  CHECK(es_alpha_eq(j_to_es_naive(parse_term("\\x.x")), parse_es("\\x.x")));
}

TEST_CASE("star translation on the counterexample term") {
  // delta(delta, y.r) with y not free in r: the meta substitution is
  // vacuous and the image is r*[y2 := delta*][y1 := delta*]
  TermPtr t = gapp(delta(), delta(), "y", var("r"));
  ESPtr img = j_to_es_star(t);
  ESPtr ds = j_to_es_star(delta());
  ESPtr expect = essub(essub(esvar("r"), "y2", ds), "y1", ds);
  CHECK(es_alpha_eq(img, expect));
}

TEST_CASE("star translation substitutes the pair application") {
  // y free in the continuation: [y1 y2/y] is performed
  ESPtr img = j_to_es_star(parse_term("t(u, y.y)"));
  CHECK(es_alpha_eq(img, parse_es("(a b)[b := u][a := t]")));
}

TEST_CASE("bullet translation") {
  CHECK(alpha_eq(es_to_j_bullet(parse_es("m n")), parse_term("m(n, x.x)")));
  CHECK(alpha_eq(es_to_j_bullet(parse_es("m[x := n]")),
                 parse_term("(\\z.z)(n, x.m)")));
}

TEST_CASE("bullet2 translation") {
  CHECK(alpha_eq(es_to_j_bullet2(parse_es("m n")),
                 parse_term("(\\z.z)(n, y.m(y, z.z))")));
  CHECK(alpha_eq(es_to_j_bullet2(parse_es("m[x := n]")),
                 parse_term("(\\z.z)(n, x.m)")));
}

TEST_CASE("sharp translation") {
  CHECK(lam_alpha_eq(es_to_lam_sharp(parse_es("m[x := n]")), parse_lam("(\\x.m) n")));
  CHECK(lam_alpha_eq(es_to_lam_sharp(parse_es("m n")), parse_lam("m n")));
}

TEST_CASE("traditional map into the lambda calculus") {
  CHECK(lam_alpha_eq(j_to_lam_traditional(parse_term("t(u, y.r)")),
                     parse_lam("(\\y.r) (t u)")));
}

TEST_CASE("star-sharp recursive definition") {
  // (\y2.(\y1.[y1 y2/y] r) t) u
  CHECK(lam_alpha_eq(j_to_lam_star_sharp(parse_term("t(u, y.y)")),
                     parse_lam("(\\b.(\\a.a b) t) u")));
}

TEST_CASE("star-bullet recursive definition") {
  TermPtr got = j_to_j_star_bullet(parse_term("t(u, y.v)"));
  TermPtr expect =
      parse_term("(\\z.z)(t, a.(\\z.z)(u, b.v))");  // y not free in v
  CHECK(alpha_eq(got, expect));
  TermPtr got2 = j_to_j_star_bullet(parse_term("t(u, y.y)"));
  TermPtr expect2 = parse_term("(\\z.z)(t, a.(\\z.z)(u, b.a(b, z.z)))");
  CHECK(alpha_eq(got2, expect2));
}

TEST_CASE("star-bullet equals bullet after star on the family") {
  for (const auto& t : enumerate_terms(6, {"x", "y"})) {
    CHECK(alpha_eq(j_to_j_star_bullet(t), es_to_j_bullet(j_to_es_star(t))));
  }
}

TEST_CASE("translations are total and free-variable preserving") {
  for (const auto& t : enumerate_terms(5, {"x", "y"})) {
    CHECK(es_free_vars(j_to_es_naive(t)) == free_vars(t));
    CHECK(es_free_vars(j_to_es_star(t)) == free_vars(t));
    CHECK(lam_free_vars(j_to_lam_traditional(t)) == free_vars(t));
    CHECK(lam_free_vars(j_to_lam_star_sharp(t)) == free_vars(t));
    CHECK(free_vars(j_to_j_star_bullet(t)) == free_vars(t));
  }
}

TEST_CASE("p2 maps to exactly two sigma2 steps under star-sharp") {
  auto rep = simulation_check(SimKind::StarSharpP2, enumerate_terms(6, {"x", "y"}));
  CHECK(rep.instances > 0);
  CHECK(rep.violations.empty());
}

TEST_CASE("pi maps to exactly two sigma4 steps under star") {
  auto rep = simulation_check(SimKind::StarPi, enumerate_terms(6, {"x", "y"}));
  CHECK(rep.instances > 0);
  CHECK(rep.violations.empty());
}

TEST_CASE("pi maps to sigma1 then sigma4 under the naive translation") {
  auto rep = simulation_check(SimKind::NaivePi, enumerate_terms(6, {"x", "y"}));
  CHECK(rep.instances > 0);
  CHECK(rep.violations.empty());
}

TEST_CASE("dbeta maps to nonempty beta/sigma1 paths under the traditional map") {
  auto rep = simulation_check(SimKind::JlamDBeta, enumerate_terms(6, {"x", "y"}));
  CHECK(rep.instances > 0);
  CHECK(rep.unknown == 0);
  CHECK(rep.violations.empty());
}

TEST_CASE("s and B steps map to single beta steps under bullet2") {
  std::vector<ESPtr> sources;
  for (const auto& t : enumerate_terms(5, {"x", "y"})) {
    sources.push_back(j_to_es_star(t));
    sources.push_back(j_to_es_naive(t));
  }
  auto s = es_simulation_check(ESSimKind::Bullet2S, sources);
  CHECK(s.instances > 0);
  CHECK(s.violations.empty());
  auto b = es_simulation_check(ESSimKind::Bullet2B, sources);
  CHECK(b.violations.empty());
  auto sb = es_simulation_check(ESSimKind::BulletS, sources);
  CHECK(sb.violations.empty());
}

TEST_CASE("derivation translation on the axiom") {
  DerivJPtr ax = dvar("x", qbase("s"));
  DerivESPtr es = translate_derivation_j_to_es(ax);
  CHECK(es->rule == DerivES::Rule::Var);
  CHECK(check_derivation_es(es).ok);
  DerivJPtr back = translate_derivation_es_to_j(es);
  CHECK(back->rule == DerivJ::Rule::Var);
  CHECK(qequal(back->type, ax->type));
}

TEST_CASE("derivation translation through an application node") {
  auto d = synthesize_quant(parse_term("x(u, y.y(v, k.k))"), 200000);
  REQUIRE(d.has_value());
  bool duplicated = false;
  DerivESPtr es = translate_derivation_j_to_es(*d, &duplicated);
  CHECK(check_derivation_es(es).ok);
  CHECK(qequal(es->type, (*d)->type));
  CHECK(es_alpha_eq(es->subject, j_to_es_star((*d)->subject)));
  if (!duplicated) CHECK(env_equal(es->env, (*d)->env));
  DerivJPtr back = translate_derivation_es_to_j(es);
  CHECK(check_derivation_j(back).ok);
  CHECK(qequal(back->type, es->type));
  CHECK(env_equal(back->env, es->env));
  CHECK(alpha_eq(back->subject, j_to_j_star_bullet((*d)->subject)));
}

TEST_CASE("witness duplication grows the environment but stays typable") {
  // two uses of the bound variable with empty-domain arrows force the
  // argument witness premise to be duplicated
  auto d = synthesize_quant(parse_term("\\a.a(a, b.b(b, c.c))"), 200000);
  REQUIRE(d.has_value());
  bool duplicated = false;
  DerivESPtr es = translate_derivation_j_to_es(*d, &duplicated);
  CHECK(duplicated);
  CHECK(check_derivation_es(es).ok);
}

TEST_CASE("map names round trip") {
  for (const char* n : {"naive", "star", "bullet", "bullet2", "sharp", "jlam",
                        "star-sharp", "star-bullet"}) {
    auto m = map_from_name(n);
    REQUIRE(m.has_value());
    CHECK(map_name(*m) == n);
  }
  CHECK_FALSE(map_from_name("nope").has_value());
}
