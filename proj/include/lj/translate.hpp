#pragma once

#include "lj/es_types.hpp"
#include "lj/quant.hpp"

namespace lj {

// Term translations.
ESPtr j_to_es_naive(const TermPtr& t);       // r°[y := t° u°]
ESPtr j_to_es_star(const TermPtr& t);        // ([x1 x2/x] r*)[x2 := u*][x1 := t*]
TermPtr es_to_j_bullet(const ESPtr& m);      // (MN)° = M°(N°, z.z), subs via I
TermPtr es_to_j_bullet2(const ESPtr& m);     // (MN)°° = I(N°°, y.M°°(y, z.z))
LamPtr es_to_lam_sharp(const ESPtr& m);      // subs become beta redexes
LamPtr j_to_lam_traditional(const TermPtr& t);  // (\y.r)(t u)
LamPtr j_to_lam_star_sharp(const TermPtr& t);
TermPtr j_to_j_star_bullet(const TermPtr& t);

enum class MapId {
  Naive,
  Star,
  Bullet,
  Bullet2,
  Sharp,
  Jlam,
  StarSharp,
  StarBullet,
};
std::optional<MapId> map_from_name(const std::string& s);
std::string map_name(MapId m);

// Derivation translations. ES -> J preserves the sequent exactly. For
// J -> ES, app nodes whose pairs carry empty domains force the argument
// witness premise to be duplicated (one copy per empty domain); whenever
// that happens the environment (and an enclosing abstraction type) can
// grow by the duplicated components. `duplicated`, when given, reports
// whether any duplication occurred; without duplication the sequent is
// preserved exactly.
DerivESPtr translate_derivation_j_to_es(const DerivJPtr& d, bool* duplicated = nullptr);
DerivJPtr translate_derivation_es_to_j(const DerivESPtr& d);

// Simulation checks over one-step sources.
struct SimReport {
  long instances = 0;
  long unknown = 0;
  std::vector<std::string> violations;
};

enum class SimKind {
  JlamDBeta,     // dbeta step -> nonempty beta/sigma1 path
  StarSharpBeta, // beta step -> nonempty beta path
  StarSharpP2,   // p2 step -> exactly two sigma2 steps
  StarPi,        // pi step -> exactly two sigma4 steps on the star image
  NaivePi,       // pi step -> sigma1 then sigma4 on the naive image
};
SimReport simulation_check(SimKind kind, const std::vector<TermPtr>& terms,
                           long max_states = 20000);

enum class ESSimKind {
  Bullet2S,  // s step -> exactly one beta step
  Bullet2B,  // B step -> exactly one beta step
  BulletS,   // s step -> exactly one beta step under the plain bullet map
};
SimReport es_simulation_check(ESSimKind kind, const std::vector<ESPtr>& terms);

}  // namespace lj
