#pragma once

#include <optional>

#include "lj/quant.hpp"
#include "lj/reduce.hpp"
#include "lj/sn.hpp"

namespace lj {

// Substitution lemma: from (Gamma; x:M |- t : sigma, size n) and a many
// derivation of u : M (size m), builds Gamma /\ Delta |- [u/x]t : sigma
// of size exactly n + m - |M|. Requires x free in the subject.
DerivJPtr substitute_derivation(const DerivJPtr& d_t, const std::string& x,
                                const DerivJPtr& d_u_many);

// Anti-substitution: splits a derivation of [u/x]t back into derivations
// of t (with x:M) and of u : M, with M nonempty. The derivation subject
// must be the literal result of substitute(u, x, t).
struct AntiSubst {
  DerivJPtr d_t;
  DerivJPtr d_u_many;
  MultiType m;
};
AntiSubst anti_substitute_derivation(const DerivJPtr& d, const TermPtr& t,
                                     const std::string& x, const TermPtr& u);

// perml: D<\x.t> : sigma typable iff \x.D<t> : sigma, same env and size.
// pull rewrites the first form to the second; push is the inverse,
// inserting the abstraction at `depth` continuation layers (-1: maximal).
DerivJPtr perml_pull(const DerivJPtr& d);
DerivJPtr perml_push(const DerivJPtr& d, int depth = -1);

// Non-erasing subject reduction along a dbeta (or beta) step at `pos`;
// the resulting derivation is strictly smaller.
DerivJPtr subject_reduce(const DerivJPtr& d, const Path& pos);

// Erasing subject reduction for the weak-head redex of the subject;
// returns the reduct derivation (env included in the original) plus the
// typing derivations of the discarded subterms.
struct ErasingResult {
  DerivJPtr deriv;
  std::vector<DerivJPtr> discarded;
};
ErasingResult erasing_reduce(const DerivJPtr& d);

// Typing of dbeta-normal forms; target allowed only for m_var subjects.
DerivJPtr type_normal_form(const TermPtr& t, const QTypePtr& target = nullptr);

// Completeness-driven synthesis: Some iff the term is decided strongly
// normalizing within fuel.
std::optional<DerivJPtr> synthesize_quant(const TermPtr& t, long fuel = 200000);

// Synthesis at a requested conclusion type; the subject must be neutral.
std::optional<DerivJPtr> synthesize_quant_at(const TermPtr& t, const QTypePtr& target,
                                             long fuel = 200000);

// Typing behavior of a root pi step at pos: same type, environment
// included in the original, size not larger.
DerivJPtr pi_transform(const DerivJPtr& d, const Path& pos = {});

// True iff the non-erasing step count of every maximal dbeta sequence is
// bounded by the derivation size (and maxred by the same size).
std::optional<bool> bound_check(const TermPtr& t, const DerivJPtr& d,
                                const SnOptions& opt = {});

// Renames a free term variable inside a derivation; y must be fresh.
DerivJPtr deriv_rename_free(const DerivJPtr& d, const std::string& x,
                            const std::string& y);

}  // namespace lj
