// Acceptance suite: every criterion runs over the full term family
// (size <= 6, two free variables) at its stated tolerance and prints one
// pass/fail line.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <iostream>

#include "lj/verify.hpp"

using namespace lj;

namespace {

SuiteConfig family_config() {
  SuiteConfig cfg;
  cfg.max_size = 6;
  cfg.pool = {"x", "y"};
  cfg.fuel = 100000;
  cfg.jobs = 4;
  return cfg;
}

// Runs one harness suite and reports it under the criterion label.
SuiteReport criterion(const std::string& label, const std::string& suite) {
  SuiteConfig cfg = family_config();
  cfg.suite = suite;
  SuiteReport rep = run_suite(cfg).at(0);
  bool pass = rep.violations.empty();
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << label << ": instances="
            << rep.instances << " resolved=" << rep.resolved
            << " unknown=" << rep.unknown << " violations=" << rep.violations.size()
            << "\n";
  for (const auto& v : rep.violations) std::cout << "       " << v << "\n";
  return rep;
}

}  // namespace

TEST_CASE("criterion 1: ISN agrees with exhaustive search (Thm 2)") {
  auto rep = criterion("criterion 1 (SN_dbeta = ISN_dbeta)", "isn");
  CHECK(rep.violations.empty());
  CHECK(rep.instances > 0);
}

TEST_CASE("criterion 2: equivalent notions of strong normalization") {
  auto rep = criterion("criterion 2 (dbeta = beta,pi = beta,p2)", "equiv");
  CHECK(rep.violations.empty());
  CHECK(rep.unknown == 0);
}

TEST_CASE("criterion 3: faithfulness of the star translation") {
  auto rep = criterion("criterion 3 (SN_dbeta iff SN_dB,s of star)", "faithfulness");
  CHECK(rep.violations.empty());
  CHECK(rep.unknown == 0);
}

TEST_CASE("criterion 4: characterization and quantitative bound") {
  auto rep = criterion("criterion 4 (synthesis + bound)", "bound");
  CHECK(rep.violations.empty());
  CHECK(rep.unknown == 0);
}

TEST_CASE("criterion 5: paper worked cases replay") {
  auto rep = criterion("criterion 5 (worked cases)", "paper-cases");
  CHECK(rep.violations.empty());
  CHECK(rep.instances == 27);
}

TEST_CASE("criterion 6: determinism and classifiers") {
  auto rep = criterion("criterion 6 (wh determinism, classifiers, commutation)",
                       "determinism");
  CHECK(rep.violations.empty());
  CHECK(rep.unknown == 0);
}

TEST_CASE("criterion 7: quantitative lemma replay") {
  auto rep = criterion("criterion 7 (substitution/perml/SR/pi lemmas)", "lemmas");
  CHECK(rep.violations.empty());
}

TEST_CASE("criterion 8: simulations") {
  auto rep = criterion("criterion 8 (p2/s/dbeta simulations)", "simulations");
  CHECK(rep.violations.empty());
  CHECK(rep.unknown == 0);
}

TEST_CASE("criterion 9: reduction-length oracles") {
  auto rep = criterion("criterion 9 (maxred equalities, rbmaxred invariance)", "maxred");
  CHECK(rep.violations.empty());
  CHECK(rep.unknown == 0);
}

TEST_CASE("criterion 10: simple types") {
  auto rep = criterion("criterion 10 (ST soundness + subformula audit)", "simple");
  CHECK(rep.violations.empty());
  CHECK(rep.unknown == 0);
}
