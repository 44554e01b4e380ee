#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lj/reduce.hpp"
#include "lj/sn.hpp"
#include "lj/term.hpp"

namespace lj {

// Witness trees for the inductive strong-normalization predicates.
struct IsnNode;
using IsnNodePtr = std::shared_ptr<const IsnNode>;
struct IsnNode {
  std::string rule;
  TermPtr subject;
  std::vector<IsnNodePtr> children;
};

struct IsnVerdict {
  enum class Kind { Holds, Fails, Unknown };
  Kind kind = Kind::Unknown;
  IsnNodePtr witness;
  long fuel_spent = 0;
  std::string reason;
};

inline constexpr long kIsnDefaultFuel = 100000;

// (snvar)(snapp)(snabs)(snbeta) over the unique wh decomposition.
IsnVerdict isn_dbeta(const TermPtr& t, long fuel = kIsnDefaultFuel);

// Fig. SN rules (var)(hvar)(lambda)(pi)(beta) over the x S.. generation.
IsnVerdict isn_betapi(const TermPtr& t, long fuel = kIsnDefaultFuel);

// (snvar)(snapp)(snabs) plus (isnredex1)(isnredex2).
IsnVerdict isn_lambdaj_new(const TermPtr& t, long fuel = kIsnDefaultFuel);

std::string witness_to_text(const IsnNodePtr& w, int indent = 0);

// Re-verifies every node of a witness: rule applicability, premise
// subjects, and side conditions. Flavor is "dbeta", "betapi" or "new".
bool replay_witness(const IsnNodePtr& w, const std::string& flavor, std::string* err);

// Admissible-rule property suite for isn_betapi.
struct AdmissibleReport {
  long instances = 0;
  long resolved = 0;
  long unknown = 0;
  std::vector<std::string> violations;
};

// Rule I: u, host in ISN  =>  [head_var(u, z.z)/target_var] host in ISN.
struct RuleInstanceI {
  std::string head_var = "y";
  std::string target_var = "x";
  TermPtr u, host;
};
// Rule II: [[[u/lam]t/cont]r / target] host, t, u in ISN and
// target not free in t,u,r  =>  [(\lam.t)(u, cont.r) / target] host in ISN.
struct RuleInstanceII {
  std::string lam_binder = "y";
  std::string cont_binder = "z";
  std::string target_var = "x";
  TermPtr t, u, r, host;
};

AdmissibleReport admissible_rule_check_I(const std::vector<RuleInstanceI>& instances,
                                         long fuel = kIsnDefaultFuel);
AdmissibleReport admissible_rule_check_II(const std::vector<RuleInstanceII>& instances,
                                          long fuel = kIsnDefaultFuel);
// Over every pi step t -> t' of every given term.
AdmissibleReport admissible_rule_check_prefix_pi(const std::vector<TermPtr>& terms,
                                                 long fuel = kIsnDefaultFuel);

}  // namespace lj
