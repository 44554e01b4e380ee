#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lj/isn.hpp"

using namespace lj;

namespace {
TermPtr delta() { return parse_term("\\y.y(y, w.w)"); }
TermPtr omega() { return gapp(delta(), delta(), "x", var("x")); }
}  // namespace

TEST_CASE("isn_dbeta base rules") {
  auto v = isn_dbeta(var("x"));
  CHECK(v.kind == IsnVerdict::Kind::Holds);
  CHECK(v.witness->rule == "snvar");
  auto v2 = isn_dbeta(parse_term("\\x.x"));
  CHECK(v2.kind == IsnVerdict::Kind::Holds);
  CHECK(v2.witness->rule == "snabs");
}

TEST_CASE("isn_dbeta snapp side condition") {
  // x(u, y.r) with r in wh-nf
  auto v = isn_dbeta(parse_term("x(u, y.y)"));
  REQUIRE(v.kind == IsnVerdict::Kind::Holds);
  CHECK(v.witness->rule == "snapp");
  // x(u, y.r) with a reducible continuation goes through snbeta instead
  auto v2 = isn_dbeta(parse_term("x(u, y.(\\z.z)(u, q.q))"));
  REQUIRE(v2.kind == IsnVerdict::Kind::Holds);
  CHECK(v2.witness->rule == "snbeta");
}

TEST_CASE("isn_dbeta on Omega is unknown at any finite fuel") {
  auto v = isn_dbeta(omega(), 5000);
  CHECK(v.kind == IsnVerdict::Kind::Unknown);
}

TEST_CASE("isn_dbeta snbeta enters through the Example 1 context") {
  TermPtr ex1 =
      parse_term("x1(x2, y1.(\\z.z)(\\z.z, z.\\z.z))(x3, y.(\\w.w)(\\w.w, w.w))");
  auto v = isn_dbeta(ex1);
  REQUIRE(v.kind == IsnVerdict::Kind::Holds);
  CHECK(v.witness->rule == "snbeta");
  std::string err;
  CHECK(replay_witness(v.witness, "dbeta", &err));
}

TEST_CASE("witness replay rejects corrupted trees") {
  auto v = isn_dbeta(parse_term("x(u, y.y)"));
  REQUIRE(v.kind == IsnVerdict::Kind::Holds);
  auto bad = std::make_shared<IsnNode>(*v.witness);
  bad->rule = "snvar";
  std::string err;
  CHECK_FALSE(replay_witness(bad, "dbeta", &err));
  CHECK(!err.empty());
}

TEST_CASE("isn_betapi rules") {
  auto v = isn_betapi(var("x"));
  CHECK(v.witness->rule == "var");
  auto v2 = isn_betapi(parse_term("x(u, z.r)"));
  REQUIRE(v2.kind == IsnVerdict::Kind::Holds);
  CHECK(v2.witness->rule == "hvar");
  auto v3 = isn_betapi(parse_term("\\x.x"));
  CHECK(v3.witness->rule == "lambda");
  // (pi): x(u, y.r) S S..
  auto v4 = isn_betapi(parse_term("x(u, y.r)(c, z.s)"));
  REQUIRE(v4.kind == IsnVerdict::Kind::Holds);
  CHECK(v4.witness->rule == "pi");
  CHECK(alpha_eq(v4.witness->children[0]->subject, parse_term("x(u, y.r(c, z.s))")));
  // (beta)
  auto v5 = isn_betapi(parse_term("(\\x.x)(u, y.y)"));
  REQUIRE(v5.kind == IsnVerdict::Kind::Holds);
  CHECK(v5.witness->rule == "beta");
  CHECK(v5.witness->children.size() == 3);
  auto v6 = isn_betapi(omega(), 5000);
  CHECK(v6.kind == IsnVerdict::Kind::Unknown);
}

TEST_CASE("new ISN rules") {
  auto v = isn_lambdaj_new(var("x"));
  CHECK(v.witness->rule == "snvar");
  // W<n(u, y.a)S>: pushes the argument into the continuation (isnredex1)
  TermPtr t = parse_term("x(u, y.\\q.q)(v, z.z)");
  auto v2 = isn_lambdaj_new(t);
  REQUIRE(v2.kind == IsnVerdict::Kind::Holds);
  CHECK(v2.witness->rule == "isnredex1");
  CHECK(alpha_eq(v2.witness->children[0]->subject,
                 parse_term("x(u, y.(\\q.q)(v, z.z))")));
  // W<(\x.t)(u, y.r)>: (isnredex2) premises
  auto v3 = isn_lambdaj_new(parse_term("(\\x.x)(u, y.y)"));
  REQUIRE(v3.kind == IsnVerdict::Kind::Holds);
  CHECK(v3.witness->rule == "isnredex2");
  REQUIRE(v3.witness->children.size() == 3);
  CHECK(alpha_eq(v3.witness->children[0]->subject, var("u")));
  std::string err;
  CHECK(replay_witness(v3.witness, "new", &err));
}

TEST_CASE("the three predicates agree on the small family") {
  for (const auto& t : enumerate_terms(5, {"x", "y"})) {
    auto a = isn_dbeta(t);
    auto b = isn_betapi(t);
    auto c = isn_lambdaj_new(t);
    if (a.kind != IsnVerdict::Kind::Unknown && b.kind != IsnVerdict::Kind::Unknown)
      CHECK((a.kind == IsnVerdict::Kind::Holds) == (b.kind == IsnVerdict::Kind::Holds));
    if (b.kind != IsnVerdict::Kind::Unknown && c.kind != IsnVerdict::Kind::Unknown)
      CHECK((b.kind == IsnVerdict::Kind::Holds) == (c.kind == IsnVerdict::Kind::Holds));
  }
}

TEST_CASE("rule I with trivial premises") {
  // u = r = x: conclusion [w0(x, z.z)/x]x = w0(x, z.z)
  RuleInstanceI inst;
  inst.head_var = "w0";
  inst.target_var = "x";
  inst.u = var("x");
  inst.host = var("x");
  auto rep = admissible_rule_check_I({inst});
  CHECK(rep.instances == 1);
  CHECK(rep.resolved == 1);
  CHECK(rep.violations.empty());
}

TEST_CASE("rule II built from a beta-shaped premise") {
  // host = x S: conclusion is a beta redex applied to S
  RuleInstanceII inst;
  inst.lam_binder = "y";
  inst.cont_binder = "z";
  inst.target_var = "x";
  inst.t = parse_term("y(w1, q.q)");
  inst.u = parse_term("\\a.a");
  inst.r = var("z");
  inst.host = parse_term("x(v, k.k)");
  auto rep = admissible_rule_check_II({inst});
  CHECK(rep.instances == 1);
  CHECK(rep.violations.empty());
}

TEST_CASE("prefix pi closure over the family") {
  auto rep = admissible_rule_check_prefix_pi(enumerate_terms(5, {"x", "y"}));
  CHECK(rep.violations.empty());
  CHECK(rep.instances > 0);
}

TEST_CASE("witness text rendering names the rules") {
  auto v = isn_dbeta(parse_term("(\\x.x)(u, y.y)"));
  std::string text = witness_to_text(v.witness);
  CHECK(text.find("(snbeta)") != std::string::npos);
  CHECK(text.find("(snvar)") != std::string::npos);
}

TEST_CASE("fuel accounting") {
  auto v = isn_dbeta(parse_term("x(u, y.y)"), 2);
  CHECK(v.kind == IsnVerdict::Kind::Unknown);
  CHECK(v.fuel_spent >= 2);
  auto v2 = isn_dbeta(parse_term("x(u, y.y)"), 10);
  CHECK(v2.kind == IsnVerdict::Kind::Holds);
}
