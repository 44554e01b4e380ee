#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lj/reduce.hpp"
#include "lj/term.hpp"

namespace lj {

struct SnOptions {
  long max_states = 100000;  // node expansions
  int max_depth = 500;
  long rec_fuel = 200000;  // recursion budget for the equality oracles
};

struct SnVerdict {
  enum class Kind { Yes, No, Unknown };
  Kind kind = Kind::Unknown;
  long maxred = -1;                   // Yes: exact longest reduction length
  std::vector<std::string> witness;   // No: printed path closing a cycle
  long states = 0;
};

// Exhaustive DFS over the alpha-quotiented reduction graph. Yes carries
// the longest path length; No needs a cycle; exhausted fuel gives Unknown.
template <class Ptr>
SnVerdict sn_search_core(const Ptr& start,
                         const std::function<std::vector<Ptr>(const Ptr&)>& succs,
                         const std::function<std::string(const Ptr&)>& key,
                         const std::function<std::string(const Ptr&)>& show,
                         const SnOptions& opt) {
  SnVerdict verdict;
  std::map<std::string, long> done;  // key -> exact maxred
  std::map<std::string, int> on_stack;
  std::vector<Ptr> stack;
  bool out_of_fuel = false;

  // -1: unknown, -2: cycle found (witness filled), >=0: maxred
  std::function<long(const Ptr&, int)> visit = [&](const Ptr& t, int depth) -> long {
    std::string k = key(t);
    auto dit = done.find(k);
    if (dit != done.end()) return dit->second;
    auto sit = on_stack.find(k);
    if (sit != on_stack.end()) {
      for (size_t i = static_cast<size_t>(sit->second); i < stack.size(); ++i)
        verdict.witness.push_back(show(stack[i]));
      verdict.witness.push_back(show(t));
      return -2;
    }
    if (depth >= opt.max_depth || ++verdict.states > opt.max_states) {
      out_of_fuel = true;
      return -1;
    }
    on_stack[k] = static_cast<int>(stack.size());
    stack.push_back(t);
    long best = 0;
    bool unknown = false;
    for (const Ptr& s : succs(t)) {
      long v = visit(s, depth + 1);
      if (v == -2) {
        stack.pop_back();
        on_stack.erase(k);
        return -2;
      }
      if (v == -1) unknown = true;
      else if (v + 1 > best) best = v + 1;
    }
    stack.pop_back();
    on_stack.erase(k);
    if (unknown) return -1;
    done[k] = best;
    return best;
  };

  long r = visit(start, 0);
  if (r == -2) {
    verdict.kind = SnVerdict::Kind::No;
  } else if (r == -1) {
    verdict.kind = SnVerdict::Kind::Unknown;
    (void)out_of_fuel;
  } else {
    verdict.kind = SnVerdict::Kind::Yes;
    verdict.maxred = r;
  }
  return verdict;
}

// lambda-J instance.
SnVerdict sn_search(const TermPtr& t, const RuleSet& rules, const SnOptions& opt = {});

// Reduction-length oracles from the recursive equalities; nullopt on
// exhausted fuel.
std::optional<long> maxred_dbeta(const TermPtr& t, long fuel = SnOptions{}.rec_fuel);
std::optional<long> rb_maxred_betapi(const TermPtr& t, long fuel = SnOptions{}.rec_fuel);

// Max number of non-erasing steps over all maximal dbeta sequences.
std::optional<long> max_nonerasing_dbeta(const TermPtr& t, const SnOptions& opt = {});

}  // namespace lj
