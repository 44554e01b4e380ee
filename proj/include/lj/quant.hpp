#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lj/types.hpp"

namespace lj {

struct DerivError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Typing derivations for system cap-J. Subjects are tracked modulo
// alpha: premise subjects may be alpha-variants of the node subterms,
// which keeps environments (keyed on free variables) consistent.
//
// App nodes carry the indexed list (M_i, tau_i) explicitly, plus the
// chosen witness types when I or the union of the M_i is empty, so the
// checker never searches multiset matchings.
struct DerivJ;
using DerivJPtr = std::shared_ptr<const DerivJ>;

struct DerivJ {
  enum class Rule { Var, Abs, App, Many };
  Rule rule;
  TermPtr subject;
  TypeEnv env;
  QTypePtr type;    // var/abs/app
  MultiType mtype;  // many
  std::vector<DerivJPtr> children;
  // app payload: children are {head many, arg many, cont}
  std::vector<std::pair<MultiType, QTypePtr>> pairs;
  QTypePtr fun_witness;  // set iff pairs empty
  QTypePtr arg_witness;  // set iff union of the M_i is empty
};

// Builders compute environments and types from the children and throw
// DerivError on malformed use.
DerivJPtr dvar(const std::string& x, const QTypePtr& ty);
DerivJPtr dabs(const TermPtr& subject, const DerivJPtr& body);
DerivJPtr dmany(std::vector<DerivJPtr> elems);
DerivJPtr dapp(const TermPtr& subject, const DerivJPtr& head_many,
               const DerivJPtr& arg_many, const DerivJPtr& cont,
               std::vector<std::pair<MultiType, QTypePtr>> pairs,
               const QTypePtr& fun_witness, const QTypePtr& arg_witness);

struct CheckResult {
  bool ok = true;
  std::vector<std::string> errors;
};

// Node-wise validation of every rule instantiation.
CheckResult check_derivation_j(const DerivJPtr& d);

// Number of var/abs/app nodes.
long derivation_size(const DerivJPtr& d);

std::string print_derivation(const DerivJPtr& d, int indent = 0);

}  // namespace lj
