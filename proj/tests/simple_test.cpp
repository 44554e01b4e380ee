#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lj/reduce.hpp"
#include "lj/simple.hpp"
#include "lj/sn.hpp"

using namespace lj;

TEST_CASE("simple type syntax round trips") {
  for (const char* s : {"a", "a -> a", "(a -> b) -> c", "a -> b -> c"}) {
    STypePtr t = parse_stype(s);
    CHECK(print_stype(t) == s);
    CHECK(sequal(parse_stype(print_stype(t)), t));
  }
}

TEST_CASE("check_simple basics") {
  CHECK(check_simple({}, parse_term("\\x.x"), parse_stype("a -> a")).has_value());
  SEnv env{{"x", parse_stype("a")}};
  CHECK_FALSE(check_simple(env, var("x"), parse_stype("b")).has_value());
  // (\z.z)(u, y.y) : s with u:s, via rho = tau = s
  SEnv env2{{"u", parse_stype("s")}};
  auto d = check_simple(env2, parse_term("(\\z.z)(u, y.y)"), parse_stype("s"));
  REQUIRE(d.has_value());
  std::string err;
  CHECK(check_sderiv(*d, &err));
}

TEST_CASE("infer_simple principal typings") {
  auto i1 = infer_simple(parse_term("\\x.x"));
  REQUIRE(i1.has_value());
  CHECK(print_stype(i1->type) == "a -> a");
  // delta is simply untypable
  CHECK_FALSE(infer_simple(parse_term("\\y.y(y, w.w)")).has_value());
  // w(u, y.y): w : a -> b, u : a |- b
  auto i2 = infer_simple(parse_term("w(u, y.y)"));
  REQUIRE(i2.has_value());
  CHECK(print_stype(i2->env["w"]) == "a -> b");
  CHECK(print_stype(i2->env["u"]) == "a");
  CHECK(print_stype(i2->type) == "b");
}

TEST_CASE("inference results re-check") {
  for (const auto& t : enumerate_terms(6, {"x", "y"})) {
    auto inf = infer_simple(t);
    if (!inf) continue;
    std::string err;
    CHECK(check_sderiv(inf->deriv, &err));
    CHECK(check_simple(inf->env, t, inf->type).has_value());
  }
}

TEST_CASE("simply typable implies dbeta strong normalization") {
  for (const auto& t : enumerate_terms(6, {"x", "y"})) {
    if (!infer_simple(t)) continue;
    auto v = sn_search(t, RuleSet{Rule::DBeta});
    if (v.kind != SnVerdict::Kind::Unknown) CHECK(v.kind == SnVerdict::Kind::Yes);
  }
}

TEST_CASE("subformula audit") {
  auto i1 = infer_simple(var("x"));
  REQUIRE(i1.has_value());
  CHECK(subformula_audit(i1->deriv) == AuditResult::Pass);
  // normal forms of the family pass the audit
  for (const auto& t : enumerate_terms(6, {"x", "y"})) {
    if (!classify(t).is_m) continue;
    auto inf = infer_simple(t);
    if (inf) CHECK(subformula_audit(inf->deriv) == AuditResult::Pass);
  }
  // non-normal subjects are flagged as precondition violations
  auto i2 = infer_simple(parse_term("(\\x.x)(u, y.y)"));
  REQUIRE(i2.has_value());
  CHECK(subformula_audit(i2->deriv) == AuditResult::PreconditionViolation);
}

TEST_CASE("check_sderiv rejects broken trees") {
  auto inf = infer_simple(parse_term("\\x.x"));
  REQUIRE(inf.has_value());
  auto bad = std::make_shared<SDeriv>(*inf->deriv);
  bad->type = parse_stype("a -> b");
  std::string err;
  CHECK_FALSE(check_sderiv(bad, &err));
}

TEST_CASE("subformula helper") {
  CHECK(is_subformula(parse_stype("a"), parse_stype("(a -> b) -> c")));
  CHECK(is_subformula(parse_stype("a -> b"), parse_stype("(a -> b) -> c")));
  CHECK_FALSE(is_subformula(parse_stype("c -> a"), parse_stype("(a -> b) -> c")));
}
