#pragma once

#include <string>
#include <vector>

#include "lj/sn.hpp"
#include "lj/term.hpp"

namespace lj {

// Deterministic theorem-verification suites over enumerated term families.
struct SuiteConfig {
  std::string suite = "all";
  int max_size = 6;
  std::vector<std::string> pool = {"x", "y"};
  long fuel = 100000;
  SnOptions sn;
  int jobs = 1;
};

struct SuiteReport {
  std::string suite;
  long instances = 0;
  long resolved = 0;
  long unknown = 0;
  std::vector<std::string> violations;
  double wall_ms = 0;
};

// Known suites: isn, equiv, faithfulness, bound, determinism, lemmas,
// simulations, maxred, simple, paper-cases; "all" runs every one.
std::vector<SuiteReport> run_suite(const SuiteConfig& cfg);

// Deterministic text (the wall-time line is prefixed with '#').
std::string report_to_text(const SuiteReport& rep);

std::vector<std::string> known_suites();

}  // namespace lj
