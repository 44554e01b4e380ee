#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lj {

// Terms of T_J:  t ::= x | \x.t | t(u, x.r)
// Immutable, shared. GApp(head, arg, x, cont) is the generalized
// application head(arg, x.cont); x binds in cont only.
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Var, Abs, GApp };
  Kind kind;
  std::string name;  // Var: the variable; Abs/GApp: the binder
  TermPtr a, b, c;   // Abs: a = body; GApp: a = head, b = arg, c = cont
  int size = 1;
};

TermPtr var(std::string name);
TermPtr abs(std::string binder, TermPtr body);
TermPtr gapp(TermPtr head, TermPtr arg, std::string binder, TermPtr cont);

inline bool is_var(const TermPtr& t) { return t->kind == Term::Kind::Var; }
inline bool is_abs(const TermPtr& t) { return t->kind == Term::Kind::Abs; }
inline bool is_gapp(const TermPtr& t) { return t->kind == Term::Kind::GApp; }
inline const TermPtr& body(const TermPtr& t) { return t->a; }
inline const TermPtr& head(const TermPtr& t) { return t->a; }
inline const TermPtr& arg(const TermPtr& t) { return t->b; }
inline const TermPtr& cont(const TermPtr& t) { return t->c; }

int term_size(const TermPtr& t);

// Paths address subterms: Abs child is 0; GApp children are head=0,
// arg=1, cont=2 (leftmost-outermost order).
using Path = std::vector<int>;

std::string path_to_string(const Path& p);

TermPtr subterm_at(const TermPtr& t, const Path& p);
TermPtr replace_at(const TermPtr& t, const Path& p, const TermPtr& s);

std::set<std::string> free_vars(const TermPtr& t);
bool is_free_in(const std::string& x, const TermPtr& t);
// Every name occurring in t, free or bound.
std::set<std::string> all_names(const TermPtr& t);

// Smallest x, x', x'', ... not in avoid.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

// Canonical locally-nameless key; two terms are alpha-equivalent iff
// their keys coincide.
std::string alpha_key(const TermPtr& t);
bool alpha_eq(const TermPtr& t1, const TermPtr& t2);

// Name-for-name structural equality (no alpha).
bool term_eq_literal(const TermPtr& a, const TermPtr& b);

// Capture-avoiding [u/x]t.
TermPtr substitute(const TermPtr& u, const std::string& x, const TermPtr& t);
// Renames free occurrences of x to y.
TermPtr rename_free(const TermPtr& t, const std::string& x, const std::string& y);

// One-hole contexts, represented as a subject plus the hole position.
// The kind records which grammar the path has been checked against.
struct Context {
  enum class Kind { General, Distant, NeutralDistant, WeakHead, List };
  Kind kind = Kind::General;
  TermPtr root;  // subject with the hole at `hole`
  Path hole;
};

// Plugging allows capture, as in the paper.
TermPtr plug(const Context& ctx, const TermPtr& s);

// Path-grammar checks against `root`.
bool path_is_distant(const TermPtr& root, const Path& p);
bool path_is_neutral_distant(const TermPtr& root, const Path& p);
bool path_is_weak_head(const TermPtr& root, const Path& p);

// One layer t(u, x.<>) of a distant context.
struct GLayer {
  TermPtr head, arg;
  std::string binder;
};

// t = D<\x.body> for the unique distant context D (maximal depth).
struct AbsShape {
  std::vector<GLayer> layers;  // outermost first
  std::string binder;
  TermPtr lambda_body;
};
std::optional<AbsShape> abstraction_shape(const TermPtr& t);

// Rebuilds D<core> renaming the layer binders away from `protect`.
TermPtr plug_layers_avoiding(const std::vector<GLayer>& layers, const TermPtr& core,
                             const std::set<std::string>& protect);

// Concrete syntax.
struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(const std::string& msg, size_t at) : std::runtime_error(msg), pos(at) {}
};

std::string print_term(const TermPtr& t);
TermPtr parse_term(const std::string& src);

// All terms up to alpha-equivalence with size <= max_size and free
// variables drawn from pool, by size then Var < Abs < GApp.
std::vector<TermPtr> enumerate_terms(int max_size, const std::vector<std::string>& pool);

}  // namespace lj
