#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lj/types.hpp"

namespace lj {

struct SDeriv;
using SDerivPtr = std::shared_ptr<const SDeriv>;
struct SDeriv {
  std::string rule;  // var | abs | app
  std::map<std::string, STypePtr> env;
  TermPtr subject;
  STypePtr type;
  std::vector<SDerivPtr> children;
};

using SEnv = std::map<std::string, STypePtr>;

// System ST. check answers derivability of env |- t : sigma; infer
// computes a principal typing with base names canonicalized a, b, c, ...
std::optional<SDerivPtr> check_simple(const SEnv& env, const TermPtr& t,
                                      const STypePtr& sigma, std::string* err = nullptr);

struct SimpleTyping {
  SEnv env;
  STypePtr type;
  SDerivPtr deriv;
};
std::optional<SimpleTyping> infer_simple(const TermPtr& t, std::string* err = nullptr);

// Replays a derivation tree node by node.
bool check_sderiv(const SDerivPtr& d, std::string* err = nullptr);

enum class AuditResult { Pass, Fail, PreconditionViolation };
// Subformula property audit; the subject must be a dbeta-normal form.
AuditResult subformula_audit(const SDerivPtr& d);

}  // namespace lj
