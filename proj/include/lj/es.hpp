#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lj/sn.hpp"
#include "lj/term.hpp"

namespace lj {

// --- explicit substitutions: M, N ::= x | \x.M | M N | M[x := N] ------------

struct ESTerm;
using ESPtr = std::shared_ptr<const ESTerm>;
struct ESTerm {
  enum class Kind { Var, Abs, App, Sub };
  Kind kind;
  std::string name;  // Var name, Abs binder, Sub binder
  ESPtr a, b;        // Abs: a = body; App: a = fun, b = arg; Sub: a = M, b = N
  int size = 1;
};

ESPtr esvar(std::string name);
ESPtr esabs(std::string binder, ESPtr body);
ESPtr esapp(ESPtr fun, ESPtr arg);
ESPtr essub(ESPtr subject, std::string binder, ESPtr bound);  // subject[binder := bound]

std::set<std::string> es_free_vars(const ESPtr& t);
bool es_is_free_in(const std::string& x, const ESPtr& t);
std::set<std::string> es_all_names(const ESPtr& t);
std::string es_alpha_key(const ESPtr& t);
bool es_alpha_eq(const ESPtr& a, const ESPtr& b);
ESPtr es_substitute(const ESPtr& u, const std::string& x, const ESPtr& t);

enum class ESRule { DB, B, S, Sigma1, Sigma4 };
std::string es_rule_name(ESRule r);
std::optional<ESRule> es_rule_from_name(const std::string& s);

// Root contraction. DB fires through a list context; B is its empty
// restriction. Sigma1/Sigma4 are the structural moves used by the
// simulation checks, not part of the lambda-ES calculus itself.
std::optional<ESPtr> es_step_root(ESRule rule, const ESPtr& t);

struct ESStep {
  ESRule rule;
  Path pos;
  ESPtr result;
};
std::vector<ESStep> es_reducts(const std::vector<ESRule>& rules, const ESPtr& t);
SnVerdict es_sn_search(const ESPtr& t, const std::vector<ESRule>& rules,
                       const SnOptions& opt = {});

std::string print_es(const ESPtr& t);
ESPtr parse_es(const std::string& src);

// --- plain lambda-calculus ----------------------------------------------------

struct LamTerm;
using LamPtr = std::shared_ptr<const LamTerm>;
struct LamTerm {
  enum class Kind { Var, Abs, App };
  Kind kind;
  std::string name;
  LamPtr a, b;  // Abs: a = body; App: a = fun, b = arg
  int size = 1;
};

LamPtr lvar(std::string name);
LamPtr labs(std::string binder, LamPtr body);
LamPtr lapp(LamPtr fun, LamPtr arg);

std::set<std::string> lam_free_vars(const LamPtr& t);
bool lam_is_free_in(const std::string& x, const LamPtr& t);
std::string lam_alpha_key(const LamPtr& t);
bool lam_alpha_eq(const LamPtr& a, const LamPtr& b);
LamPtr lam_substitute(const LamPtr& u, const std::string& x, const LamPtr& t);

enum class LamRule { Beta, Sigma1, Sigma2 };
std::string lam_rule_name(LamRule r);
std::optional<LamRule> lam_rule_from_name(const std::string& s);
std::optional<LamPtr> lam_step_root(LamRule rule, const LamPtr& t);

struct LamStep {
  LamRule rule;
  Path pos;
  LamPtr result;
};
std::vector<LamStep> lam_reducts(const std::vector<LamRule>& rules, const LamPtr& t);
SnVerdict lam_sn_search(const LamPtr& t, const std::vector<LamRule>& rules,
                        const SnOptions& opt = {});

std::string print_lam(const LamPtr& t);
LamPtr parse_lam(const std::string& src);

}  // namespace lj
