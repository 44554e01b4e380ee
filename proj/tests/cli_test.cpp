#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "lj/cli.hpp"
#include "lj/json_io.hpp"
#include "lj/quant_ops.hpp"
#include "lj/verify.hpp"

using namespace lj;

namespace {
int run(std::vector<std::string> args) { return cli_dispatch(std::move(args)); }
}  // namespace

TEST_CASE("parse echoes terms and rejects garbage") {
  CHECK(run({"parse", "\\x.x(y, z.z)"}) == 0);
  CHECK(run({"parse", "(x"}) == 2);
  CHECK(run({"parse", "--calculus", "es", "x[y := z]"}) == 0);
  CHECK(run({"parse", "--calculus", "lam", "(\\x.x) y"}) == 0);
}

TEST_CASE("sn exit codes") {
  CHECK(run({"sn", "--method", "brute", "\\x.x"}) == 0);
  // Omega: brute no, isn unknown -> 3 under --method both
  CHECK(run({"sn", "--method", "brute", "(\\y.y(y,w.w))(\\y.y(y,w.w), x.x)"}) == 1);
  CHECK(run({"sn", "--method", "both", "(\\y.y(y,w.w))(\\y.y(y,w.w), x.x)"}) == 3);
  CHECK(run({"sn", "--method", "isn", "--emit-witness", "x(u, y.y)"}) == 0);
  CHECK(run({"sn", "--calculus", "es", "--rules", "db,s", "(\\x.x x) (\\x.x x)"}) == 1);
}

TEST_CASE("reduce and nf") {
  CHECK(run({"reduce", "--rules", "dbeta", "--trace", "(\\x.x)(u, y.y)"}) == 0);
  CHECK(run({"nf", "--rules", "dbeta", "(\\x.x)(u, y.y)"}) == 0);
  CHECK(run({"nf", "--classify", "x(u, y.y)"}) == 0);
  CHECK(run({"reduce", "--calculus", "lam", "--rules", "beta", "(\\x.x) y"}) == 0);
}

TEST_CASE("synthesized derivation JSON is accepted by check-derivation") {
  std::string json_path = "cli_test_deriv.json";
  {
    auto d = synthesize_quant(parse_term("(\\y.y(y,w.w))(\\y.y(y,w.w), x.z)"), 200000);
    REQUIRE(d.has_value());
    std::ofstream out(json_path);
    out << deriv_to_json(*d).dump(2) << "\n";
  }
  CHECK(run({"check-derivation", "--file", json_path}) == 0);
  // corrupt the type and expect rejection
  {
    std::ifstream in(json_path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    Json j = Json::parse(text);
    j["type"] = "q999";
    std::ofstream out(json_path);
    out << j.dump(2) << "\n";
  }
  CHECK(run({"check-derivation", "--file", json_path}) == 1);
  CHECK(run({"check-derivation", "not json at all"}) == 2);
  std::remove(json_path.c_str());
}

TEST_CASE("type exit codes") {
  CHECK(run({"type", "--system", "simple", "\\x.x"}) == 0);
  CHECK(run({"type", "--system", "simple", "\\y.y(y, w.w)"}) == 1);
  CHECK(run({"type", "--system", "quant", "--fuel", "2000",
             "(\\y.y(y,w.w))(\\y.y(y,w.w), x.x)"}) == 3);
}

TEST_CASE("translate maps") {
  CHECK(run({"translate", "--map", "star", "x(y, z.z)"}) == 0);
  CHECK(run({"translate", "--map", "bullet", "--calculus", "es", "m n"}) == 0);
  CHECK(run({"translate", "--map", "jlam", "x(y, z.z)"}) == 0);
}

TEST_CASE("verify exits zero on clean suites") {
  CHECK(run({"verify", "--suite", "paper-cases"}) == 0);
  CHECK(run({"verify", "--suite", "equiv", "--max-size", "4"}) == 0);
}

TEST_CASE("reports are deterministic across parallelism degrees") {
  SuiteConfig cfg;
  cfg.suite = "isn";
  cfg.max_size = 5;
  cfg.jobs = 1;
  auto r1 = run_suite(cfg);
  cfg.jobs = 4;
  auto r2 = run_suite(cfg);
  REQUIRE(r1.size() == r2.size());
  for (size_t i = 0; i < r1.size(); ++i) {
    // identical up to the wall-time comment line
    std::string a = report_to_text(r1[i]), b = report_to_text(r2[i]);
    a = a.substr(0, a.find("\n#"));
    b = b.substr(0, b.find("\n#"));
    CHECK(a == b);
  }
}
