#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lj/term.hpp"

namespace lj {

// --- Simple types: a | s -> t ----------------------------------------------

struct SType;
using STypePtr = std::shared_ptr<const SType>;
struct SType {
  bool is_base;
  std::string base;   // is_base
  STypePtr dom, cod;  // arrow
};

STypePtr sbase(std::string name);
STypePtr sarrow(STypePtr dom, STypePtr cod);
bool sequal(const STypePtr& a, const STypePtr& b);
std::string print_stype(const STypePtr& t);
STypePtr parse_stype(const std::string& src);
// a is a subformula of b
bool is_subformula(const STypePtr& a, const STypePtr& b);

// --- Non-idempotent intersection types: a | M -> t, M a multiset ------------

struct QType;
using QTypePtr = std::shared_ptr<const QType>;

// Bag of types kept sorted by the canonical order, so equality is
// element-wise.
struct MultiType {
  std::vector<QTypePtr> elems;
  size_t size() const { return elems.size(); }
  bool empty() const { return elems.empty(); }
};

struct QType {
  bool is_base;
  std::string base;
  MultiType dom;
  QTypePtr cod;
};

QTypePtr qbase(std::string name);
QTypePtr qarrow(MultiType dom, QTypePtr cod);

int qcompare(const QTypePtr& a, const QTypePtr& b);  // total order
bool qequal(const QTypePtr& a, const QTypePtr& b);

MultiType msingle(const QTypePtr& t);
MultiType mmake(std::vector<QTypePtr> elems);           // sorts
MultiType munion(const MultiType& a, const MultiType& b);
bool mequal(const MultiType& a, const MultiType& b);
bool mincluded(const MultiType& sub, const MultiType& super);  // multiset inclusion
// Removes one occurrence of each element of b from a; false if missing.
bool msubtract(const MultiType& a, const MultiType& b, MultiType& out);

// choice operator <<M>>
MultiType choice(const MultiType& m, const QTypePtr& witness);
// The distinguished default witness, base type o.
QTypePtr default_witness();

std::string print_qtype(const QTypePtr& t);
std::string print_multitype(const MultiType& m);
QTypePtr parse_qtype(const std::string& src);
MultiType parse_multitype(const std::string& src);

// Environments map variables to multiset types; absent means empty.
struct TypeEnv {
  std::map<std::string, MultiType> m;

  MultiType get(const std::string& x) const {
    auto it = m.find(x);
    return it == m.end() ? MultiType{} : it->second;
  }
  void set(const std::string& x, MultiType mt) {
    if (mt.empty()) m.erase(x);
    else m[x] = std::move(mt);
  }
  std::set<std::string> domain() const {
    std::set<std::string> d;
    for (auto& [k, v] : m) d.insert(k);
    return d;
  }
};

TypeEnv env_wedge(const TypeEnv& a, const TypeEnv& b);
TypeEnv env_minus(const TypeEnv& a, const std::string& x);
bool env_equal(const TypeEnv& a, const TypeEnv& b);
bool env_included(const TypeEnv& sub, const TypeEnv& super);  // pointwise multiset
std::string print_env(const TypeEnv& e);

}  // namespace lj
