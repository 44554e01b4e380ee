#include "lj/verify.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <thread>

#include "lj/es.hpp"
#include "lj/isn.hpp"
#include "lj/quant_ops.hpp"
#include "lj/simple.hpp"
#include "lj/translate.hpp"

namespace lj {

namespace {

struct Partial {
  long instances = 0;
  long resolved = 0;
  long unknown = 0;
  std::vector<std::string> violations;
};

void merge(Partial& into, const Partial& p) {
  into.instances += p.instances;
  into.resolved += p.resolved;
  into.unknown += p.unknown;
  into.violations.insert(into.violations.end(), p.violations.begin(), p.violations.end());
}

// Per-term fan-out with ordered merge; deterministic for any job count.
Partial parallel_sweep(const std::vector<TermPtr>& terms, int jobs,
                       const std::function<Partial(const TermPtr&)>& work) {
  std::vector<Partial> results(terms.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < terms.size(); ++i) results[i] = work(terms[i]);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= results.size()) return;
          results[i] = work(terms[i]);
        }
      });
    for (auto& th : pool) th.join();
  }
  Partial out;
  for (const auto& p : results) merge(out, p);
  return out;
}

bool resolved(const SnVerdict& v) { return v.kind != SnVerdict::Kind::Unknown; }
bool yes(const SnVerdict& v) { return v.kind == SnVerdict::Kind::Yes; }
bool holds(const IsnVerdict& v) { return v.kind == IsnVerdict::Kind::Holds; }
bool isn_resolved(const IsnVerdict& v) { return v.kind != IsnVerdict::Kind::Unknown; }

TermPtr delta_j() { return parse_term("\\y.y(y, w.w)"); }
TermPtr omega_j() { return parse_term("(\\y.y(y, w.w))(\\y.y(y, w.w), x.x)"); }

// --- isn suite ---------------------------------------------------------------

Partial isn_work(const TermPtr& t, const SuiteConfig& cfg) {
  Partial p;
  {
    ++p.instances;
    auto brute = sn_search(t, RuleSet{Rule::DBeta}, cfg.sn);
    auto ind = isn_dbeta(t, cfg.fuel);
    if (!resolved(brute) || !isn_resolved(ind)) ++p.unknown;
    else {
      ++p.resolved;
      if (yes(brute) != holds(ind))
        p.violations.push_back("isn_dbeta vs brute: " + print_term(t));
      if (holds(ind)) {
        std::string err;
        if (!replay_witness(ind.witness, "dbeta", &err))
          p.violations.push_back("witness replay: " + err + " on " + print_term(t));
      }
    }
  }
  {
    ++p.instances;
    auto brute = sn_search(t, RuleSet{Rule::Beta, Rule::Pi}, cfg.sn);
    auto ind = isn_betapi(t, cfg.fuel);
    if (!resolved(brute) || !isn_resolved(ind)) ++p.unknown;
    else {
      ++p.resolved;
      if (yes(brute) != holds(ind))
        p.violations.push_back("isn_betapi vs brute: " + print_term(t));
    }
  }
  {
    ++p.instances;
    auto a = isn_lambdaj_new(t, cfg.fuel);
    auto b = isn_betapi(t, cfg.fuel);
    if (!isn_resolved(a) || !isn_resolved(b)) ++p.unknown;
    else {
      ++p.resolved;
      if (holds(a) != holds(b))
        p.violations.push_back("new ISN vs isn_betapi: " + print_term(t));
      if (holds(a)) {
        std::string err;
        if (!replay_witness(a.witness, "new", &err))
          p.violations.push_back("new witness replay: " + err + " on " + print_term(t));
      }
    }
  }
  // admissible rules for isn_betapi
  {
    auto pi = admissible_rule_check_prefix_pi({t}, cfg.fuel);
    p.instances += pi.instances;
    p.resolved += pi.resolved;
    p.unknown += pi.unknown;
    for (auto& v : pi.violations) p.violations.push_back("prefix-pi: " + v);

    RuleInstanceI i1;
    i1.head_var = "w0";
    i1.target_var = cfg.pool.empty() ? "x" : cfg.pool[0];
    i1.u = t;
    i1.host = t;
    auto ri = admissible_rule_check_I({i1}, cfg.fuel);
    p.instances += ri.instances;
    p.resolved += ri.resolved;
    p.unknown += ri.unknown;
    for (auto& v : ri.violations) p.violations.push_back("rule I: " + v);

    RuleInstanceII i2;
    i2.target_var = cfg.pool.empty() ? "x" : cfg.pool[0];
    i2.t = parse_term("w0");
    i2.u = parse_term("w1");
    i2.r = parse_term("w2(w0, v.v)");
    i2.host = t;
    auto rii = admissible_rule_check_II({i2}, cfg.fuel);
    p.instances += rii.instances;
    p.resolved += rii.resolved;
    p.unknown += rii.unknown;
    for (auto& v : rii.violations) p.violations.push_back("rule II: " + v);
  }
  return p;
}

// --- equivalence suite ---------------------------------------------------------

Partial equiv_work(const TermPtr& t, const SuiteConfig& cfg) {
  Partial p;
  ++p.instances;
  auto a = sn_search(t, RuleSet{Rule::DBeta}, cfg.sn);
  auto b = sn_search(t, RuleSet{Rule::Beta, Rule::Pi}, cfg.sn);
  auto c = sn_search(t, RuleSet{Rule::Beta, Rule::P2}, cfg.sn);
  if (!resolved(a) || !resolved(b) || !resolved(c)) {
    ++p.unknown;
    return p;
  }
  ++p.resolved;
  if (yes(a) != yes(b)) p.violations.push_back("dbeta vs beta,pi: " + print_term(t));
  if (yes(a) != yes(c)) p.violations.push_back("dbeta vs beta,p2: " + print_term(t));
  return p;
}

// --- faithfulness suite ----------------------------------------------------------

Partial faithfulness_work(const TermPtr& t, const SuiteConfig& cfg) {
  Partial p;
  ++p.instances;
  auto a = sn_search(t, RuleSet{Rule::DBeta}, cfg.sn);
  ESPtr star = j_to_es_star(t);
  auto b = es_sn_search(star, {ESRule::DB, ESRule::S}, cfg.sn);
  if (!resolved(a) || !resolved(b)) ++p.unknown;
  else {
    ++p.resolved;
    if (yes(a) != yes(b)) p.violations.push_back("faithfulness: " + print_term(t));
  }
  ++p.instances;
  auto c = es_sn_search(star, {ESRule::B, ESRule::S}, cfg.sn);
  if (!resolved(b) || !resolved(c)) ++p.unknown;
  else {
    ++p.resolved;
    if (yes(b) != yes(c)) p.violations.push_back("dB,s vs B,s: " + print_es(star));
  }
  return p;
}

// --- bound / characterization suite ------------------------------------------------

Partial bound_work(const TermPtr& t, const SuiteConfig& cfg) {
  Partial p;
  ++p.instances;
  auto brute = sn_search(t, RuleSet{Rule::DBeta}, cfg.sn);
  if (!resolved(brute)) {
    ++p.unknown;
    return p;
  }
  auto d = synthesize_quant(t, cfg.fuel);
  if (yes(brute)) {
    ++p.resolved;
    if (!d) {
      p.violations.push_back("SN but synthesis failed: " + print_term(t));
      return p;
    }
    auto chk = check_derivation_j(*d);
    if (!chk.ok) {
      p.violations.push_back("synthesized derivation rejected: " + print_term(t) + " | " +
                             chk.errors[0]);
      return p;
    }
    if ((*d)->env.domain() != free_vars(t))
      p.violations.push_back("relevance violated: " + print_term(t));
    auto ok = bound_check(t, *d, cfg.sn);
    if (!ok) ++p.unknown;
    else if (!*ok)
      p.violations.push_back("bound exceeded: " + print_term(t));
    auto bp = sn_search(t, RuleSet{Rule::Beta, Rule::Pi}, cfg.sn);
    if (resolved(bp) && !yes(bp))
      p.violations.push_back("typed term not SN(beta,pi): " + print_term(t));
  } else {
    ++p.resolved;
    if (d) p.violations.push_back("non-SN term synthesized: " + print_term(t));
  }
  return p;
}

// --- determinism / classifier suite -------------------------------------------------

Partial determinism_work(const TermPtr& t, const SuiteConfig& cfg) {
  (void)cfg;
  Partial p;
  ++p.instances;
  ++p.resolved;
  auto decomp = all_wh_decompositions(t);
  if (decomp.size() > 1) p.violations.push_back("two wh decompositions: " + print_term(t));
  auto ws = wh_step(t);
  auto flags = classify(t);
  if (flags.is_whnf != !ws)
    p.violations.push_back("whnf flag vs wh_step: " + print_term(t));
  if (ws && (decomp.size() != 1 || decomp[0] != ws->W.hole))
    p.violations.push_back("wh_step decomposition mismatch: " + print_term(t));
  bool no_reduct = reducts(RuleSet{Rule::DBeta}, t).empty();
  if (flags.is_m != no_reduct)
    p.violations.push_back("m flag vs dbeta reducts: " + print_term(t));
  if (flags.is_neutral_n && flags.is_answer_a)
    p.violations.push_back("neutral and answer overlap: " + print_term(t));
  for (auto& st : reducts(RuleSet{Rule::DBeta}, t)) {
    if (flags.is_neutral_n && !classify(st.result).is_neutral_n)
      p.violations.push_back("neutral not stable: " + print_term(t));
    if (flags.is_answer_a && !classify(st.result).is_answer_a)
      p.violations.push_back("answer not stable: " + print_term(t));
  }
  ++p.instances;
  ++p.resolved;
  if (flags.is_m)
    for (auto& st : reducts(RuleSet{Rule::Pi}, t))
      if (!classify(st.result).is_m)
        p.violations.push_back("pi breaks dbeta-nf: " + print_term(t));
  TermPtr pnf = pi_normal_form(t);
  if (!reducts(RuleSet{Rule::Pi}, pnf).empty())
    p.violations.push_back("pi_normal_form not normal: " + print_term(t));
  for (auto& st : reducts(RuleSet{Rule::Pi}, t))
    if (!alpha_eq(pi_normal_form(st.result), pnf))
      p.violations.push_back("pi_normal_form not confluent: " + print_term(t));
  // local commutation: t ->beta t2, t ->pi t3 gives t4 with t3 ->beta t4, t2 ->pi* t4
  ++p.instances;
  ++p.resolved;
  for (auto& b : reducts(RuleSet{Rule::Beta}, t)) {
    for (auto& q : reducts(RuleSet{Rule::Pi}, t)) {
      bool found = false;
      for (auto& b2 : reducts(RuleSet{Rule::Beta}, q.result)) {
        std::vector<TermPtr> frontier{b.result};
        std::set<std::string> seen{alpha_key(b.result)};
        for (size_t i = 0; i < frontier.size() && i < 500 && !found; ++i) {
          if (alpha_eq(frontier[i], b2.result)) found = true;
          for (auto& nx : reducts(RuleSet{Rule::Pi}, frontier[i]))
            if (seen.insert(alpha_key(nx.result)).second) frontier.push_back(nx.result);
        }
        if (found) break;
      }
      if (!found) {
        p.violations.push_back("beta/pi commutation fails: " + print_term(t));
        break;
      }
    }
  }
  // every dbeta step is matched by a nonempty (beta,p2) sequence
  ++p.instances;
  ++p.resolved;
  for (auto& st : reducts(RuleSet{Rule::DBeta}, t)) {
    std::vector<TermPtr> frontier{t};
    std::set<std::string> seen{alpha_key(t)};
    bool found = false;
    for (size_t i = 0; i < frontier.size() && i < 2000 && !found; ++i) {
      if (i > 0 && alpha_eq(frontier[i], st.result)) found = true;
      for (auto& nx : reducts(RuleSet{Rule::Beta, Rule::P2}, frontier[i]))
        if (seen.insert(alpha_key(nx.result)).second) frontier.push_back(nx.result);
    }
    if (!found) {
      p.violations.push_back("dbeta not in (beta,p2)+: " + print_term(t));
      break;
    }
  }
  return p;
}

// --- quantitative lemma suite ---------------------------------------------------------

Partial lemmas_work(const TermPtr& t, const SuiteConfig& cfg) {
  Partial p;
  auto brute = sn_search(t, RuleSet{Rule::DBeta}, cfg.sn);
  if (!yes(brute)) return p;
  auto dopt = synthesize_quant(t, cfg.fuel);
  if (!dopt) {
    ++p.instances;
    ++p.unknown;
    return p;
  }
  DerivJPtr d = *dopt;
  long n = derivation_size(d);
  auto complain = [&](const std::string& what) {
    p.violations.push_back(what + ": " + print_term(t));
  };

  // substitution lemma + anti-substitution round-trip on neutral arguments
  for (const auto& x : free_vars(t)) {
    for (const char* usrc : {"w0", "w0(w1, v.v)"}) {
      ++p.instances;
      ++p.resolved;
      try {
        TermPtr u = parse_term(usrc);
        MultiType m = d->env.get(x);
        std::vector<DerivJPtr> elems;
        for (const auto& sigma : m.elems) {
          auto du = synthesize_quant_at(u, sigma, cfg.fuel);
          if (!du) throw DerivError("unresolved");
          elems.push_back(*du);
        }
        DerivJPtr dm = dmany(std::move(elems));
        long msz = derivation_size(dm);
        DerivJPtr ds = substitute_derivation(d, x, dm);
        if (derivation_size(ds) != n + msz - static_cast<long>(m.size()))
          complain("substitution size law");
        if (!check_derivation_j(ds).ok) complain("substituted derivation rejected");
        if (!alpha_eq(ds->subject, substitute(u, x, d->subject)))
          complain("substituted subject mismatch");
        TypeEnv expect = env_wedge(env_minus(d->env, x), dm->env);
        if (!env_equal(ds->env, expect)) complain("substitution env law");
        // anti-substitution round-trip
        AntiSubst anti = anti_substitute_derivation(ds, d->subject, x, u);
        if (!mequal(anti.m, m)) complain("anti-substitution multiset");
        if (!check_derivation_j(anti.d_t).ok || !check_derivation_j(anti.d_u_many).ok)
          complain("anti-substitution results rejected");
        DerivJPtr ds2 = substitute_derivation(anti.d_t, x, anti.d_u_many);
        if (derivation_size(ds2) != derivation_size(ds) ||
            !env_equal(ds2->env, ds->env) || !qequal(ds2->type, ds->type))
          complain("anti-substitution round-trip");
      } catch (const DerivError&) {
        --p.resolved;
        ++p.unknown;
      }
    }
  }

  // perml on abstraction shapes
  if (auto shape = abstraction_shape(t); shape && !shape->layers.empty()) {
    ++p.instances;
    ++p.resolved;
    try {
      DerivJPtr pulled = perml_pull(d);
      if (derivation_size(pulled) != n) complain("perml size changed");
      if (!env_equal(pulled->env, d->env) || !qequal(pulled->type, d->type))
        complain("perml sequent changed");
      if (!check_derivation_j(pulled).ok) complain("perml result rejected");
      DerivJPtr back = perml_push(pulled, static_cast<int>(shape->layers.size()));
      if (derivation_size(back) != n || !env_equal(back->env, d->env) ||
          !qequal(back->type, d->type) || !alpha_eq(back->subject, d->subject))
        complain("perml push/pull round-trip");
    } catch (const DerivError&) {
      complain("perml raised");
    }
  }

  // subject reduction
  for (auto& st : reducts(RuleSet{Rule::DBeta}, t)) {
    ++p.instances;
    ++p.resolved;
    try {
      if (!st.erasing) {
        DerivJPtr ds = subject_reduce(d, st.pos);
        if (derivation_size(ds) >= n) complain("subject_reduce size not decreasing");
        if (!env_equal(ds->env, d->env) || !qequal(ds->type, d->type))
          complain("subject_reduce sequent changed");
        if (!check_derivation_j(ds).ok) complain("subject_reduce result rejected");
        if (!alpha_eq(ds->subject, st.result)) complain("subject_reduce subject");
      }
    } catch (const DerivError&) {
      complain("subject_reduce raised");
    }
  }

  // erasing subject reduction at the weak-head redex
  if (auto ws = wh_step(t)) {
    bool x_used = is_free_in(ws->lam_binder, ws->lam_body);
    bool y_used = is_free_in(ws->cont_binder, ws->redex_cont);
    if (!(x_used && y_used)) {
      ++p.instances;
      ++p.resolved;
      try {
        ErasingResult er = erasing_reduce(d);
        if (!check_derivation_j(er.deriv).ok) complain("erasing_reduce result rejected");
        if (!env_included(er.deriv->env, d->env)) complain("erasing_reduce env grows");
        if (!qequal(er.deriv->type, d->type)) complain("erasing_reduce type changed");
        // the lemma gives k > 1 + k' + the sizes of the discarded parts
        long rhs = 1 + derivation_size(er.deriv);
        for (const auto& e : er.discarded) {
          rhs += derivation_size(e);
          if (!check_derivation_j(e).ok) complain("discarded derivation rejected");
        }
        if (n <= rhs) complain("erasing_reduce size inequality");
        if (!alpha_eq(er.deriv->subject, ws->result)) complain("erasing_reduce subject");
      } catch (const DerivError&) {
        complain("erasing_reduce raised");
      }
    }
  }

  // typing behavior of pi
  for (auto& st : reducts(RuleSet{Rule::Pi}, t)) {
    ++p.instances;
    ++p.resolved;
    try {
      DerivJPtr dp = pi_transform(d, st.pos);
      if (!check_derivation_j(dp).ok) complain("pi_transform result rejected");
      if (!qequal(dp->type, d->type)) complain("pi_transform type changed");
      if (!env_included(dp->env, d->env)) complain("pi_transform env not included");
      if (derivation_size(dp) > n) complain("pi_transform size grew");
      if (!alpha_eq(dp->subject, st.result)) complain("pi_transform subject");
    } catch (const DerivError&) {
      complain("pi_transform raised");
    }
  }

  // typability transfer through the star translation; the sequent is
  // preserved exactly unless a witness premise had to be duplicated
  {
    ++p.instances;
    ++p.resolved;
    try {
      bool duplicated = false;
      DerivESPtr des = translate_derivation_j_to_es(d, &duplicated);
      if (!check_derivation_es(des).ok) complain("translated ES derivation rejected");
      if (!duplicated && !qequal(des->type, d->type))
        complain("translation changed the type");
      if (!duplicated && !env_equal(des->env, d->env))
        complain("translation changed the environment");
      if (duplicated && !env_included(d->env, des->env))
        complain("translation dropped environment");
      if (!es_alpha_eq(des->subject, j_to_es_star(t))) complain("translation subject");
      DerivJPtr dj2 = translate_derivation_es_to_j(des);
      if (!check_derivation_j(dj2).ok) complain("round-trip J derivation rejected");
      if (!qequal(dj2->type, des->type) || !env_equal(dj2->env, des->env))
        complain("round-trip sequent mismatch");
      if (!alpha_eq(dj2->subject, j_to_j_star_bullet(t))) complain("round-trip subject");
    } catch (const DerivError&) {
      complain("translation raised");
    }
  }

  // typing normal forms
  if (classify(t).is_m) {
    ++p.instances;
    ++p.resolved;
    try {
      DerivJPtr dn = type_normal_form(t);
      if (!check_derivation_j(dn).ok) complain("type_normal_form rejected");
      if (classify(t).is_mvar) {
        QTypePtr sigma = qbase("probe");
        DerivJPtr dv = type_normal_form(t, sigma);
        if (!qequal(dv->type, sigma)) complain("type_normal_form target ignored");
        if (!check_derivation_j(dv).ok) complain("targeted type_normal_form rejected");
      }
    } catch (const DerivError&) {
      complain("type_normal_form raised");
    }
  }
  return p;
}

// --- maxred suite ------------------------------------------------------------------

Partial maxred_work(const TermPtr& t, const SuiteConfig& cfg) {
  Partial p;
  ++p.instances;
  auto brute = sn_search(t, RuleSet{Rule::DBeta}, cfg.sn);
  auto mr = maxred_dbeta(t, cfg.sn.rec_fuel);
  if (!resolved(brute) || !mr) ++p.unknown;
  else {
    ++p.resolved;
    if (yes(brute) && *mr != brute.maxred)
      p.violations.push_back("maxred equalities vs brute: " + print_term(t));
  }
  for (auto& st : reducts(RuleSet{Rule::Pi}, t)) {
    ++p.instances;
    auto a = rb_maxred_betapi(t, cfg.sn.rec_fuel);
    auto b = rb_maxred_betapi(st.result, cfg.sn.rec_fuel);
    if (!a || !b) ++p.unknown;
    else {
      ++p.resolved;
      if (*a != *b) p.violations.push_back("rbmaxred not pi-invariant: " + print_term(t));
    }
  }
  return p;
}

// --- simple-type suite ----------------------------------------------------------------

Partial simple_work(const TermPtr& t, const SuiteConfig& cfg) {
  Partial p;
  ++p.instances;
  auto inf = infer_simple(t);
  if (!inf) {
    ++p.resolved;
    return p;
  }
  auto brute = sn_search(t, RuleSet{Rule::DBeta}, cfg.sn);
  if (!resolved(brute)) {
    ++p.unknown;
    return p;
  }
  ++p.resolved;
  if (!yes(brute)) p.violations.push_back("simply typable but not SN: " + print_term(t));
  std::string err;
  if (!check_sderiv(inf->deriv, &err))
    p.violations.push_back("inferred derivation rejected: " + err);
  if (!check_simple(inf->env, t, inf->type))
    p.violations.push_back("inference does not re-check: " + print_term(t));
  if (classify(t).is_m && subformula_audit(inf->deriv) != AuditResult::Pass)
    p.violations.push_back("subformula audit failed: " + print_term(t));
  return p;
}

// --- simulation suite -------------------------------------------------------------------

Partial simulations_work(const TermPtr& t, const SuiteConfig& cfg) {
  (void)cfg;
  Partial p;
  auto add = [&](const SimReport& r, const char* tag) {
    p.instances += r.instances;
    p.unknown += r.unknown;
    p.resolved += r.instances - r.unknown;
    for (auto& v : r.violations) p.violations.push_back(std::string(tag) + ": " + v);
  };
  add(simulation_check(SimKind::JlamDBeta, {t}), "jlam dbeta");
  add(simulation_check(SimKind::StarSharpBeta, {t}), "star-sharp beta");
  add(simulation_check(SimKind::StarSharpP2, {t}), "star-sharp p2");
  add(simulation_check(SimKind::StarPi, {t}), "star pi");
  add(simulation_check(SimKind::NaivePi, {t}), "naive pi");
  std::vector<ESPtr> es = {j_to_es_star(t), j_to_es_naive(t)};
  add(es_simulation_check(ESSimKind::Bullet2S, es), "bullet2 s");
  add(es_simulation_check(ESSimKind::Bullet2B, es), "bullet2 B");
  add(es_simulation_check(ESSimKind::BulletS, es), "bullet s");
  return p;
}

// --- paper worked cases -------------------------------------------------------------------

Partial paper_cases(const SuiteConfig& cfg) {
  Partial p;
  auto check = [&](bool ok, const std::string& what) {
    ++p.instances;
    ++p.resolved;
    if (!ok) p.violations.push_back(what);
  };

  TermPtr delta = delta_j();
  TermPtr omega = omega_j();
  // Omega loops under beta
  {
    auto rs = reducts(RuleSet{Rule::Beta}, omega);
    check(rs.size() == 1 && alpha_eq(rs[0].result, omega), "Omega -> Omega under beta");
    auto v = sn_search(omega, RuleSet{Rule::Beta}, cfg.sn);
    check(v.kind == SnVerdict::Kind::No, "Omega not SN(beta)");
  }
  // the 6.1 term: beta-normal, divergent for dbeta / beta,pi / beta,p2
  {
    TermPtr t = parse_term("w(u, w'.\\y.y(y, v.v))(\\y.y(y, v.v), x.x)");
    check(reducts(RuleSet{Rule::Beta}, t).empty(), "6.1 term beta-normal");
    check(sn_search(t, RuleSet{Rule::Beta}, cfg.sn).kind == SnVerdict::Kind::Yes,
          "6.1 term SN(beta)");
    check(sn_search(t, RuleSet{Rule::DBeta}, cfg.sn).kind == SnVerdict::Kind::No,
          "6.1 term not SN(dbeta)");
    check(sn_search(t, RuleSet{Rule::Beta, Rule::Pi}, cfg.sn).kind == SnVerdict::Kind::No,
          "6.1 term not SN(beta,pi)");
    check(sn_search(t, RuleSet{Rule::Beta, Rule::P2}, cfg.sn).kind == SnVerdict::Kind::No,
          "6.1 term not SN(beta,p2)");
    bool has_pi_to_omega = false;
    for (auto& st : reducts(RuleSet{Rule::Pi}, t))
      if (alpha_eq(st.result, parse_term("w(u, w'.(\\y.y(y, v.v))(\\y.y(y, v.v), x.x))")))
        has_pi_to_omega = true;
    check(has_pi_to_omega, "6.1 term pi-reduct unblocks Omega");
  }
  // Example 1: the unique restricted wh decomposition
  {
    TermPtr ex1 = parse_term("x1(x2, y1.(\\z.z)(\\z.z, z.\\z.z))(x3, y.(\\w.w)(\\w.w, w.w))");
    auto decomp = all_wh_decompositions(ex1);
    check(decomp.size() == 1 && decomp[0] == Path{0, 2}, "Ex.1 unique decomposition");
    auto ws = wh_step(ex1);
    check(ws.has_value() &&
              alpha_eq(ws->redex, parse_term("(\\z.z)(\\z.z, z.\\z.z)")) &&
              ws->W.hole == Path{0, 2},
          "Ex.1 wh redex");
    // the root is an unrestricted dbeta redex but not the wh one
    check(step_root(Rule::DBeta, ex1).has_value(), "Ex.1 root is a distant redex");
  }
  // t0 = delta(delta, x.z) types as z:[tau] |- tau
  {
    TermPtr t0 = gapp(delta, delta, "x", var("z"));
    auto d = synthesize_quant(t0, cfg.fuel);
    check(d.has_value(), "t0 synthesizes");
    if (d) {
      check(check_derivation_j(*d).ok, "t0 derivation checks");
      check((*d)->env.m.size() == 1 && (*d)->env.get("z").size() == 1 &&
                qequal((*d)->env.get("z").elems[0], (*d)->type),
            "t0 concludes z:[tau] |- tau");
    }
    auto v = sn_search(t0, RuleSet{Rule::DBeta}, cfg.sn);
    check(v.kind == SnVerdict::Kind::Yes && v.maxred == 1, "t0 one step to z");
    check(!synthesize_quant(omega, 2000).has_value(), "Omega does not synthesize");
  }
  // 4.3: the pi step loses quantitative information
  {
    TermPtr t1 = parse_term("x(y, a.z)(w, b.b(b, c.c))");
    TermPtr t2 = parse_term("x(y, a.z(w, b.b(b, c.c)))");
    auto rs = reducts(RuleSet{Rule::Pi}, t1);
    check(rs.size() == 1 && alpha_eq(rs[0].result, t2), "4.3 pi step");
    // hand-built derivation for t1 with x:[s1,s1], y:[s2,s2]
    QTypePtr s = qbase("s"), tau = qbase("t"), s1 = qbase("s1"), s2 = qbase("s2");
    QTypePtr rho1 = qarrow(msingle(s), tau);
    QTypePtr rho2 = qarrow(msingle(s), qarrow(msingle(tau), tau));
    auto phi = [&](const QTypePtr& rho) {
      DerivJPtr hx = dvar("x", s1);
      DerivJPtr hy = dvar("y", s2);
      DerivJPtr hz = dvar("z", rho);
      return dapp(parse_term("x(y, a.z)"), dmany({hx}), dmany({hy}), hz, {}, s1, s2);
    };
    DerivJPtr psi;
    {
      DerivJPtr hb1 = dvar("b", qarrow(msingle(tau), tau));
      DerivJPtr hb2 = dvar("b", tau);
      DerivJPtr hc = dvar("c", tau);
      psi = dapp(parse_term("b(b, c.c)"), dmany({hb1}), dmany({hb2}), hc,
                 {{msingle(tau), tau}}, nullptr, nullptr);
    }
    DerivJPtr d1;
    {
      DerivJPtr inner = dmany({phi(rho1), phi(rho2)});
      DerivJPtr wm = dmany({dvar("w", s), dvar("w", s)});
      d1 = dapp(t1, inner, wm, psi,
                {{msingle(s), tau}, {msingle(s), qarrow(msingle(tau), tau)}}, nullptr,
                nullptr);
    }
    check(check_derivation_j(d1).ok, "4.3 Gamma1 derivation accepted");
    check(d1->env.get("x").size() == 2 && d1->env.get("y").size() == 2,
          "4.3 Gamma1 has x:[s1,s1], y:[s2,s2]");
    try {
      DerivJPtr d2 = pi_transform(d1, {});
      check(check_derivation_j(d2).ok, "4.3 transformed derivation accepted");
      check(alpha_eq(d2->subject, t2), "4.3 transformed subject");
      check(env_included(d2->env, d1->env) && !env_equal(d2->env, d1->env),
            "4.3 environment strictly shrinks");
      check(d2->env.get("x").size() == 1 && d2->env.get("y").size() == 1,
            "4.3 Gamma2 has x:[s1], y:[s2]");
      check(derivation_size(d2) <= derivation_size(d1), "4.3 size does not grow");
    } catch (const DerivError& e) {
      check(false, std::string("4.3 pi_transform raised: ") + e.what());
    }
  }
  // naive translation counterexample
  {
    TermPtr t = gapp(delta, delta, "y", var("x"));
    check(sn_search(t, RuleSet{Rule::DBeta}, cfg.sn).kind == SnVerdict::Kind::Yes,
          "delta(delta, y.x) is SN(dbeta)");
    ESPtr naive = j_to_es_naive(t);
    check(es_sn_search(naive, {ESRule::DB, ESRule::S}, cfg.sn).kind ==
              SnVerdict::Kind::No,
          "naive image diverges");
    ESPtr star = j_to_es_star(t);
    check(es_sn_search(star, {ESRule::DB, ESRule::S}, cfg.sn).kind ==
              SnVerdict::Kind::Yes,
          "star image is SN");
  }
  return p;
}

SuiteReport run_one(const std::string& name, const SuiteConfig& cfg,
                    const std::vector<TermPtr>& family) {
  SuiteReport rep;
  rep.suite = name;
  auto start = std::chrono::steady_clock::now();
  Partial p;
  std::function<Partial(const TermPtr&)> work;
  if (name == "isn") work = [&](const TermPtr& t) { return isn_work(t, cfg); };
  else if (name == "equiv") work = [&](const TermPtr& t) { return equiv_work(t, cfg); };
  else if (name == "faithfulness")
    work = [&](const TermPtr& t) { return faithfulness_work(t, cfg); };
  else if (name == "bound") work = [&](const TermPtr& t) { return bound_work(t, cfg); };
  else if (name == "determinism")
    work = [&](const TermPtr& t) { return determinism_work(t, cfg); };
  else if (name == "lemmas") work = [&](const TermPtr& t) { return lemmas_work(t, cfg); };
  else if (name == "simulations")
    work = [&](const TermPtr& t) { return simulations_work(t, cfg); };
  else if (name == "maxred") work = [&](const TermPtr& t) { return maxred_work(t, cfg); };
  else if (name == "simple") work = [&](const TermPtr& t) { return simple_work(t, cfg); };
  if (name == "paper-cases") p = paper_cases(cfg);
  else if (work) p = parallel_sweep(family, cfg.jobs, work);
  else rep.violations.push_back("unknown suite: " + name);
  rep.instances = p.instances;
  rep.resolved = p.resolved;
  rep.unknown = p.unknown;
  rep.violations = std::move(p.violations);
  auto end = std::chrono::steady_clock::now();
  rep.wall_ms = std::chrono::duration<double, std::milli>(end - start).count();
  return rep;
}

}  // namespace

std::vector<std::string> known_suites() {
  return {"isn",    "equiv",       "faithfulness", "bound",  "determinism",
          "lemmas", "simulations", "maxred",       "simple", "paper-cases"};
}

std::vector<SuiteReport> run_suite(const SuiteConfig& cfg) {
  std::vector<std::string> names;
  if (cfg.suite == "all") names = known_suites();
  else names = {cfg.suite};
  std::vector<TermPtr> family = enumerate_terms(cfg.max_size, cfg.pool);
  std::vector<SuiteReport> out;
  for (const auto& n : names) out.push_back(run_one(n, cfg, family));
  return out;
}

std::string report_to_text(const SuiteReport& rep) {
  std::string out;
  out += "suite " + rep.suite + ": instances=" + std::to_string(rep.instances) +
         " resolved=" + std::to_string(rep.resolved) +
         " unknown=" + std::to_string(rep.unknown) +
         " violations=" + std::to_string(rep.violations.size()) + "\n";
  for (const auto& v : rep.violations) out += "  violation: " + v + "\n";
  out += "# wall_ms=" + std::to_string(rep.wall_ms) + "\n";
  return out;
}

}  // namespace lj
