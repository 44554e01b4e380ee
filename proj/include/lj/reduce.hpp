#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lj/term.hpp"

namespace lj {

enum class Rule : std::uint8_t { Beta, Pi, P2, DBeta, Wh };

std::string rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& s);

// A rule subset. Wh is a strategy and is rejected by the contextual
// closure operations.
struct RuleSet {
  std::uint32_t mask = 0;
  RuleSet() = default;
  RuleSet(std::initializer_list<Rule> rs) {
    for (Rule r : rs) add(r);
  }
  void add(Rule r) { mask |= 1u << static_cast<int>(r); }
  bool has(Rule r) const { return mask & (1u << static_cast<int>(r)); }
};

struct StepRec {
  Rule rule;
  Path pos;
  bool erasing = false;
  TermPtr result;
};

struct ReductionTrace {
  TermPtr start;
  std::vector<StepRec> steps;
  bool cycle = false;  // last step closes a loop (alpha-equal to an earlier term)
};

std::string trace_to_text(const ReductionTrace& tr);

// The dbeta contraction D<\x.s>(u, y.r) -> [D<[u/x]s>/y]r, decomposed.
// The lambda binder is first renamed to a globally fresh x~ so that
// D<[u/x]s> is the literal substitution [u/x~]D<s~>; this lets the
// derivation transformers replay the step with plain substitutions.
struct DBetaParts {
  std::string x_tilde;  // fresh name for the lambda binder
  TermPtr dns;          // D<s~>, with x~ free exactly where x was bound
  TermPtr contractum;   // [u/x~]dns
  TermPtr result;       // [contractum/y]r
};
DBetaParts dbeta_parts(const AbsShape& shape, const TermPtr& u, const std::string& y,
                       const TermPtr& r);

// Root contraction; None when t does not match the redex shape.
// DBeta consumes the maximal distant context in one step.
std::optional<TermPtr> step_root(Rule rule, const TermPtr& t);

// Whether the root redex of t (for beta or dbeta) is erasing.
bool root_step_erasing(Rule rule, const TermPtr& t);

// Complete one-step reducts under contextual closure, leftmost-outermost,
// deduplicated up to alpha per rule.
std::vector<StepRec> reducts(const RuleSet& rules, const TermPtr& t);

// The unique weak-head step W<Dn<\x.t>(u, y.r)> -> W<[Dn<[u/x]t>/y]r>.
struct WhStep {
  Context W;                 // weak-head context (hole at the redex)
  TermPtr redex;             // Dn<\x.s>(u, y.r)
  TermPtr result;            // whole term after the step
  std::vector<GLayer> dn;    // neutral distant context layers of the redex head
  std::string lam_binder;    // x
  TermPtr lam_body;          // s
  TermPtr redex_arg;         // u
  std::string cont_binder;   // y
  TermPtr redex_cont;        // r
  std::string x_tilde;       // see DBetaParts
  TermPtr dns;               // Dn<s~>
  TermPtr contractum;        // [u/x~]dns
};
std::optional<WhStep> wh_step(const TermPtr& t);

// All decompositions t = W<redex> with a restricted redex; the
// determinism lemma says there is at most one.
std::vector<Path> all_wh_decompositions(const TermPtr& t);

struct ClassifyFlags {
  bool is_m = false;         // dbeta-normal form
  bool is_mvar = false;      // dbeta-nf without abstraction shape
  bool is_neutral_n = false;
  bool is_answer_a = false;
  bool is_whnf = false;
  bool is_dbeta_nf = false;  // same as is_m
};
ClassifyFlags classify(const TermPtr& t);

bool is_neutral(const TermPtr& t);
bool is_answer(const TermPtr& t);

// Decomposes an answer as Dn<\x.s> (all layer heads neutral).
std::optional<AbsShape> answer_shape(const TermPtr& t);

// The unique pi-normal form.
TermPtr pi_normal_form(const TermPtr& t);

}  // namespace lj
