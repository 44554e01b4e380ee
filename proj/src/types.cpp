#include "lj/types.hpp"

#include <algorithm>

namespace lj {

// --- simple types ------------------------------------------------------------

STypePtr sbase(std::string name) {
  auto t = std::make_shared<SType>();
  t->is_base = true;
  t->base = std::move(name);
  return t;
}

STypePtr sarrow(STypePtr dom, STypePtr cod) {
  auto t = std::make_shared<SType>();
  t->is_base = false;
  t->dom = std::move(dom);
  t->cod = std::move(cod);
  return t;
}

bool sequal(const STypePtr& a, const STypePtr& b) {
  if (a == b) return true;
  if (a->is_base != b->is_base) return false;
  if (a->is_base) return a->base == b->base;
  return sequal(a->dom, b->dom) && sequal(a->cod, b->cod);
}

std::string print_stype(const STypePtr& t) {
  if (t->is_base) return t->base;
  std::string lhs =
      t->dom->is_base ? print_stype(t->dom) : "(" + print_stype(t->dom) + ")";
  return lhs + " -> " + print_stype(t->cod);
}

namespace {

struct STypeParser {
  const std::string& src;
  size_t pos = 0;
  explicit STypeParser(const std::string& s) : src(s) {}
  void ws() {
    while (pos < src.size() && isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }
  bool eat(char c) {
    ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool eat_arrow() {
    ws();
    if (pos + 1 < src.size() && src[pos] == '-' && src[pos + 1] == '>') {
      pos += 2;
      return true;
    }
    return false;
  }
  std::string ident() {
    ws();
    size_t start = pos;
    while (pos < src.size() &&
           (isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_' ||
            src[pos] == '\''))
      ++pos;
    if (start == pos) throw ParseError("expected type identifier", pos);
    return src.substr(start, pos - start);
  }
  STypePtr type() {
    STypePtr lhs = atom();
    if (eat_arrow()) return sarrow(lhs, type());
    return lhs;
  }
  STypePtr atom() {
    if (eat('(')) {
      STypePtr t = type();
      if (!eat(')')) throw ParseError("expected ')'", pos);
      return t;
    }
    return sbase(ident());
  }
};

}  // namespace

STypePtr parse_stype(const std::string& src) {
  STypeParser p(src);
  auto t = p.type();
  p.ws();
  if (p.pos != src.size()) throw ParseError("trailing input in type", p.pos);
  return t;
}

bool is_subformula(const STypePtr& a, const STypePtr& b) {
  if (sequal(a, b)) return true;
  if (b->is_base) return false;
  return is_subformula(a, b->dom) || is_subformula(a, b->cod);
}

// --- quantitative types --------------------------------------------------------

QTypePtr qbase(std::string name) {
  auto t = std::make_shared<QType>();
  t->is_base = true;
  t->base = std::move(name);
  return t;
}

QTypePtr qarrow(MultiType dom, QTypePtr cod) {
  auto t = std::make_shared<QType>();
  t->is_base = false;
  t->dom = std::move(dom);
  t->cod = std::move(cod);
  return t;
}

static int mcompare(const MultiType& a, const MultiType& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i)
    if (int c = qcompare(a.elems[i], b.elems[i])) return c;
  return 0;
}

int qcompare(const QTypePtr& a, const QTypePtr& b) {
  if (a == b) return 0;
  if (a->is_base != b->is_base) return a->is_base ? -1 : 1;
  if (a->is_base) return a->base.compare(b->base);
  if (int c = mcompare(a->dom, b->dom)) return c;
  return qcompare(a->cod, b->cod);
}

bool qequal(const QTypePtr& a, const QTypePtr& b) { return qcompare(a, b) == 0; }

MultiType msingle(const QTypePtr& t) { return MultiType{{t}}; }

MultiType mmake(std::vector<QTypePtr> elems) {
  std::sort(elems.begin(), elems.end(),
            [](const QTypePtr& a, const QTypePtr& b) { return qcompare(a, b) < 0; });
  return MultiType{std::move(elems)};
}

MultiType munion(const MultiType& a, const MultiType& b) {
  std::vector<QTypePtr> out;
  out.reserve(a.size() + b.size());
  std::merge(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
             std::back_inserter(out),
             [](const QTypePtr& x, const QTypePtr& y) { return qcompare(x, y) < 0; });
  return MultiType{std::move(out)};
}

bool mequal(const MultiType& a, const MultiType& b) { return mcompare(a, b) == 0; }

bool mincluded(const MultiType& sub, const MultiType& super) {
  size_t j = 0;
  for (const auto& e : sub.elems) {
    while (j < super.size() && qcompare(super.elems[j], e) < 0) ++j;
    if (j >= super.size() || qcompare(super.elems[j], e) != 0) return false;
    ++j;
  }
  return true;
}

bool msubtract(const MultiType& a, const MultiType& b, MultiType& out) {
  out.elems.clear();
  size_t j = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (j < b.size() && qcompare(a.elems[i], b.elems[j]) == 0) {
      ++j;
      continue;
    }
    if (j < b.size() && qcompare(b.elems[j], a.elems[i]) < 0) return false;
    out.elems.push_back(a.elems[i]);
  }
  return j == b.size();
}

MultiType choice(const MultiType& m, const QTypePtr& witness) {
  return m.empty() ? msingle(witness) : m;
}

QTypePtr default_witness() {
  static const QTypePtr o = qbase("o");
  return o;
}

std::string print_qtype(const QTypePtr& t) {
  if (t->is_base) return t->base;
  return print_multitype(t->dom) + " -> " + print_qtype(t->cod);
}

std::string print_multitype(const MultiType& m) {
  std::string out = "[";
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) out += ",";
    out += print_qtype(m.elems[i]);
  }
  return out + "]";
}

namespace {

struct QTypeParser {
  const std::string& src;
  size_t pos = 0;
  explicit QTypeParser(const std::string& s) : src(s) {}
  void ws() {
    while (pos < src.size() && isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }
  bool peek(char c) {
    ws();
    return pos < src.size() && src[pos] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }
  bool eat_arrow() {
    ws();
    if (pos + 1 < src.size() && src[pos] == '-' && src[pos + 1] == '>') {
      pos += 2;
      return true;
    }
    return false;
  }
  std::string ident() {
    ws();
    size_t start = pos;
    while (pos < src.size() &&
           (isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_' ||
            src[pos] == '\''))
      ++pos;
    if (start == pos) throw ParseError("expected type identifier", pos);
    return src.substr(start, pos - start);
  }
  QTypePtr type() {
    if (peek('[')) {
      MultiType dom = multi();
      if (!eat_arrow()) throw ParseError("expected '->' after multiset", pos);
      return qarrow(dom, type());
    }
    return qbase(ident());
  }
  MultiType multi() {
    if (!eat('[')) throw ParseError("expected '['", pos);
    std::vector<QTypePtr> elems;
    if (!eat(']')) {
      elems.push_back(type());
      while (eat(',')) elems.push_back(type());
      if (!eat(']')) throw ParseError("expected ']'", pos);
    }
    return mmake(std::move(elems));
  }
};

}  // namespace

QTypePtr parse_qtype(const std::string& src) {
  QTypeParser p(src);
  auto t = p.type();
  p.ws();
  if (p.pos != src.size()) throw ParseError("trailing input in type", p.pos);
  return t;
}

MultiType parse_multitype(const std::string& src) {
  QTypeParser p(src);
  auto m = p.multi();
  p.ws();
  if (p.pos != src.size()) throw ParseError("trailing input in multiset", p.pos);
  return m;
}

TypeEnv env_wedge(const TypeEnv& a, const TypeEnv& b) {
  TypeEnv out = a;
  for (auto& [k, v] : b.m) out.set(k, munion(out.get(k), v));
  return out;
}

TypeEnv env_minus(const TypeEnv& a, const std::string& x) {
  TypeEnv out = a;
  out.m.erase(x);
  return out;
}

bool env_equal(const TypeEnv& a, const TypeEnv& b) {
  if (a.m.size() != b.m.size()) return false;
  for (auto& [k, v] : a.m)
    if (!mequal(v, b.get(k))) return false;
  return true;
}

bool env_included(const TypeEnv& sub, const TypeEnv& super) {
  for (auto& [k, v] : sub.m)
    if (!mincluded(v, super.get(k))) return false;
  return true;
}

std::string print_env(const TypeEnv& e) {
  std::string out = "{";
  bool first = true;
  for (auto& [k, v] : e.m) {
    if (!first) out += ", ";
    first = false;
    out += k + ":" + print_multitype(v);
  }
  return out + "}";
}

}  // namespace lj
