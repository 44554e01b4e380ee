#pragma once

#include "lj/es.hpp"
#include "lj/quant.hpp"

namespace lj {

// Typing derivations for system cap-ES: var, abs, many as in cap-J, plus
//   app:  Gamma |- M : Mset -> sigma   Delta |- N : <<Mset>>
//   sub:  Gamma; x:Mset |- M : sigma   Delta |- N : <<Mset>>
// App/sub nodes carry the domain multiset and the argument witness when
// the domain is empty.
struct DerivES;
using DerivESPtr = std::shared_ptr<const DerivES>;

struct DerivES {
  enum class Rule { Var, Abs, App, Sub, Many };
  Rule rule;
  ESPtr subject;
  TypeEnv env;
  QTypePtr type;
  MultiType mtype;  // many
  std::vector<DerivESPtr> children;
  MultiType dom;         // app/sub: the multiset M
  QTypePtr arg_witness;  // set iff dom is empty
};

DerivESPtr esdvar(const std::string& x, const QTypePtr& ty);
DerivESPtr esdabs(const ESPtr& subject, const DerivESPtr& body);
DerivESPtr esdmany(std::vector<DerivESPtr> elems);
DerivESPtr esdapp(const ESPtr& subject, const DerivESPtr& fun, const DerivESPtr& arg_many,
                  MultiType dom, const QTypePtr& arg_witness);
DerivESPtr esdsub(const ESPtr& subject, const DerivESPtr& body, const DerivESPtr& arg_many,
                  MultiType dom, const QTypePtr& arg_witness);

CheckResult check_derivation_es(const DerivESPtr& d);
long es_derivation_size(const DerivESPtr& d);
std::string print_derivation_es(const DerivESPtr& d, int indent = 0);

// Substitution lemma inside cap-ES (used by the derivation translation).
DerivESPtr es_substitute_derivation(const DerivESPtr& d_t, const std::string& x,
                                    const DerivESPtr& d_u_many);
DerivESPtr es_deriv_rename_free(const DerivESPtr& d, const std::string& x,
                                const std::string& y);

}  // namespace lj
