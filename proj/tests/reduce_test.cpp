#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lj/reduce.hpp"
#include "lj/sn.hpp"

using namespace lj;

namespace {
TermPtr delta() { return parse_term("\\y.y(y, w.w)"); }
TermPtr omega() { return gapp(delta(), delta(), "x", var("x")); }
}  // namespace

TEST_CASE("beta root step") {
  TermPtr t = parse_term("(\\x.x)(u, y.y)");
  auto r = step_root(Rule::Beta, t);
  REQUIRE(r.has_value());
  CHECK(alpha_eq(*r, var("u")));
  CHECK_FALSE(step_root(Rule::Beta, parse_term("w(u, y.y)")).has_value());
}

TEST_CASE("pi root step") {
  TermPtr t = parse_term("a(b, y.r)(c, z.s)");
  auto r = step_root(Rule::Pi, t);
  REQUIRE(r.has_value());
  CHECK(alpha_eq(*r, parse_term("a(b, y.r(c, z.s))")));
  // capture of the inner binder is avoided
  TermPtr t2 = parse_term("a(b, y.y)(y, z.y)");
  auto r2 = step_root(Rule::Pi, t2);
  REQUIRE(r2.has_value());
  CHECK(alpha_eq(*r2, parse_term("a(b, q.q(y, z.y))")));
  CHECK(free_vars(*r2) == free_vars(t2));
}

TEST_CASE("p2 root step") {
  TermPtr t = parse_term("a(b, y.\\x.s)");
  auto r = step_root(Rule::P2, t);
  REQUIRE(r.has_value());
  CHECK(alpha_eq(*r, parse_term("\\x.a(b, y.s)")));
  TermPtr t2 = parse_term("x(b, y.\\x.x)");
  auto r2 = step_root(Rule::P2, t2);
  REQUIRE(r2.has_value());
  CHECK(alpha_eq(*r2, parse_term("\\q.x(b, y.q)")));
  CHECK(free_vars(*r2) == free_vars(t2));
}

TEST_CASE("dbeta identity redex") {
  TermPtr t = parse_term("(\\x.x)(u, y.y)");
  auto r = step_root(Rule::DBeta, t);
  REQUIRE(r.has_value());
  CHECK(alpha_eq(*r, var("u")));
}

TEST_CASE("dbeta through a distant context") {
  TermPtr t = parse_term("w(u, w'.\\x.x(x, q.q))(v, y.y(r, k.k))");
  auto r = step_root(Rule::DBeta, t);
  REQUIRE(r.has_value());
  CHECK(alpha_eq(*r, parse_term("w(u, w'.v(v, q.q))(r, k.k)")));
  CHECK_FALSE(step_root(Rule::Beta, t).has_value());
}

TEST_CASE("dbeta avoids capturing the argument in the distant context") {
  TermPtr t = parse_term("a(b, w.\\x.w(x, q.q))(w, y.y)");
  auto r = step_root(Rule::DBeta, t);
  REQUIRE(r.has_value());
  CHECK(alpha_eq(*r, parse_term("a(b, w'.w'(w, q.q))")));
  CHECK(free_vars(*r) == std::set<std::string>({"a", "b", "w"}));
}

TEST_CASE("erasing flags") {
  CHECK(root_step_erasing(Rule::DBeta, parse_term("(\\x.y)(u, z.z)")));
  CHECK(root_step_erasing(Rule::DBeta, parse_term("(\\x.x)(u, z.y)")));
  CHECK_FALSE(root_step_erasing(Rule::DBeta, parse_term("(\\x.x)(u, z.z)")));
}

TEST_CASE("reducts of a variable") {
  CHECK(reducts(RuleSet{Rule::DBeta}, var("x")).empty());
}

TEST_CASE("Omega loops under beta") {
  auto rs = reducts(RuleSet{Rule::Beta}, omega());
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].pos.empty());
  CHECK(alpha_eq(rs[0].result, omega()));
}

TEST_CASE("the 6.1 term has the pi reduct unblocking Omega") {
  TermPtr t = parse_term("w(u, w'.\\y.y(y, v.v))(\\y.y(y, v.v), x.x)");
  auto rs = reducts(RuleSet{Rule::Beta, Rule::Pi}, t);
  bool found = false;
  for (auto& st : rs)
    if (st.rule == Rule::Pi &&
        alpha_eq(st.result, gapp(var("w"), var("u"), "w'", omega())))
      found = true;
  CHECK(found);
}

TEST_CASE("wh_step basics") {
  CHECK_FALSE(wh_step(var("x")).has_value());
  CHECK_FALSE(wh_step(parse_term("\\x.(\\y.y)(u, z.z)")).has_value());
  auto ws = wh_step(parse_term("(\\x.x)(u, y.y)"));
  REQUIRE(ws.has_value());
  CHECK(ws->W.hole.empty());
  CHECK(alpha_eq(ws->result, var("u")));
}

TEST_CASE("wh_step on Example 1 keeps only the restricted decomposition") {
  TermPtr ex1 =
      parse_term("x1(x2, y1.(\\z.z)(\\z.z, z.\\z.z))(x3, y.(\\w.w)(\\w.w, w.w))");
  CHECK(step_root(Rule::DBeta, ex1).has_value());
  auto ws = wh_step(ex1);
  REQUIRE(ws.has_value());
  CHECK(ws->W.hole == Path{0, 2});
  CHECK(alpha_eq(ws->redex, parse_term("(\\z.z)(\\z.z, z.\\z.z)")));
  CHECK(path_is_weak_head(ex1, ws->W.hole));
  auto all = all_wh_decompositions(ex1);
  REQUIRE(all.size() == 1);
  CHECK(all[0] == ws->W.hole);
  CHECK(alpha_eq(ws->result,
                 parse_term("x1(x2, y1.\\z.z)(x3, y.(\\w.w)(\\w.w, w.w))")));
}

TEST_CASE("classify flags") {
  auto f1 = classify(parse_term("\\x.x"));
  CHECK(f1.is_m);
  CHECK(f1.is_answer_a);
  CHECK(f1.is_whnf);
  CHECK(f1.is_dbeta_nf);
  CHECK_FALSE(f1.is_neutral_n);
  auto f2 = classify(parse_term("x(u, y.\\z.z)"));
  CHECK(f2.is_answer_a);
  CHECK_FALSE(f2.is_neutral_n);
  CHECK(f2.is_whnf);
  auto f3 = classify(parse_term("x(u, y.y)"));
  CHECK(f3.is_neutral_n);
  CHECK_FALSE(f3.is_answer_a);
  auto f4 = classify(parse_term("w(u, w'.x)(v, y.r)"));
  CHECK(f4.is_m);
  CHECK(f4.is_mvar);
  auto f5 = classify(parse_term("w(u, w'.x)(v, y.\\z.z)"));
  CHECK(f5.is_m);
  CHECK_FALSE(f5.is_mvar);
}

TEST_CASE("pi normal form") {
  CHECK(alpha_eq(pi_normal_form(var("x")), var("x")));
  TermPtr t = parse_term("a(b, x.r)(c, y.s)");
  CHECK(alpha_eq(pi_normal_form(t), parse_term("a(b, x.r(c, y.s))")));
  for (const auto& u : enumerate_terms(6, {"x"})) {
    for (auto& st : reducts(RuleSet{Rule::Pi}, u))
      CHECK(alpha_eq(pi_normal_form(u), pi_normal_form(st.result)));
  }
}

TEST_CASE("sn_search verdicts") {
  auto v1 = sn_search(parse_term("\\x.x"), RuleSet{Rule::DBeta});
  CHECK(v1.kind == SnVerdict::Kind::Yes);
  CHECK(v1.maxred == 0);
  auto v2 = sn_search(omega(), RuleSet{Rule::Beta});
  CHECK(v2.kind == SnVerdict::Kind::No);
  TermPtr t = parse_term("w(u, w'.\\y.y(y, v.v))(\\y.y(y, v.v), x.x)");
  CHECK(sn_search(t, RuleSet{Rule::Beta}).kind == SnVerdict::Kind::Yes);
  CHECK(sn_search(t, RuleSet{Rule::Beta}).maxred == 0);
  CHECK(sn_search(t, RuleSet{Rule::DBeta}).kind == SnVerdict::Kind::No);
  SnOptions tight;
  tight.max_states = 1;
  auto v3 = sn_search(parse_term("(\\x.x)((\\x.x)(u, q.q), y.y)"), RuleSet{Rule::DBeta},
                      tight);
  CHECK(v3.kind == SnVerdict::Kind::Unknown);
}

TEST_CASE("maxred oracle examples") {
  CHECK(maxred_dbeta(var("x")) == 0);
  CHECK(maxred_dbeta(parse_term("w((\\a.a)(b, c.c), x.(\\d.d)(e, f.f))")) == 2);
  TermPtr t0 = gapp(delta(), delta(), "x", var("z"));
  CHECK(maxred_dbeta(t0) == 1);
  CHECK_FALSE(maxred_dbeta(omega(), 2000).has_value());
}

TEST_CASE("maxred agrees with brute force on the family") {
  for (const auto& t : enumerate_terms(6, {"x", "y"})) {
    auto v = sn_search(t, RuleSet{Rule::DBeta});
    auto m = maxred_dbeta(t);
    if (v.kind == SnVerdict::Kind::Yes && m) CHECK(*m == v.maxred);
  }
}

TEST_CASE("rbmaxred examples") {
  CHECK(rb_maxred_betapi(var("x")) == 0);
  TermPtr t = parse_term("(\\x.x)((\\a.a)(b, c.c), y.z)");
  CHECK(rb_maxred_betapi(t) == 2);
  for (const auto& u : enumerate_terms(6, {"x"}))
    for (auto& st : reducts(RuleSet{Rule::Pi}, u)) {
      auto a = rb_maxred_betapi(u), b = rb_maxred_betapi(st.result);
      if (a && b) CHECK(*a == *b);
    }
}

TEST_CASE("wh rule set is rejected by contextual closure") {
  CHECK_THROWS_AS(reducts(RuleSet{Rule::Wh}, var("x")), std::invalid_argument);
  CHECK_THROWS_AS(sn_search(var("x"), RuleSet{Rule::Wh}), std::invalid_argument);
}

TEST_CASE("trace serialization shape") {
  ReductionTrace tr;
  tr.start = parse_term("(\\x.x)(u, y.y)");
  StepRec st;
  st.rule = Rule::DBeta;
  st.pos = {};
  st.erasing = false;
  st.result = var("u");
  tr.steps.push_back(st);
  std::string text = trace_to_text(tr);
  CHECK(text.find("dbeta @ [] [non-erasing]") != std::string::npos);
}

TEST_CASE("classifier coherence on the family") {
  for (const auto& t : enumerate_terms(6, {"x", "y"})) {
    auto f = classify(t);
    CHECK_FALSE((f.is_neutral_n && f.is_answer_a));
    CHECK(f.is_whnf == (f.is_neutral_n || f.is_answer_a));
    CHECK(f.is_whnf == !wh_step(t).has_value());
    CHECK(f.is_m == reducts(RuleSet{Rule::DBeta}, t).empty());
  }
}
