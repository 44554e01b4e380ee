#include "lj/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lj/es.hpp"
#include "lj/isn.hpp"
#include "lj/json_io.hpp"
#include "lj/quant_ops.hpp"
#include "lj/simple.hpp"
#include "lj/translate.hpp"
#include "lj/verify.hpp"

namespace lj {

namespace {

constexpr int kOk = 0, kFail = 1, kParse = 2, kUnknown = 3;

long env_fuel(long fallback) {
  if (const char* s = std::getenv("LJC_FUEL")) {
    try {
      return std::stol(s);
    } catch (...) {
    }
  }
  return fallback;
}

std::string slurp(const std::string& file, const std::string& inline_text) {
  if (!inline_text.empty()) return inline_text;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw ParseError("cannot open " + file, 0);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::stringstream ss;
  ss << std::cin.rdbuf();
  return ss.str();
}

std::string trim(std::string s) {
  while (!s.empty() && isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t i = 0;
  while (i < s.size() && isspace(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

RuleSet parse_rules_j(const std::string& spec) {
  RuleSet rs;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto r = rule_from_name(trim(item));
    if (!r) throw ParseError("unknown rule " + item, 0);
    rs.add(*r);
  }
  return rs;
}

std::vector<ESRule> parse_rules_es(const std::string& spec) {
  std::vector<ESRule> rs;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto r = es_rule_from_name(trim(item));
    if (!r) throw ParseError("unknown rule " + item, 0);
    rs.push_back(*r);
  }
  return rs;
}

std::vector<LamRule> parse_rules_lam(const std::string& spec) {
  std::vector<LamRule> rs;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto r = lam_rule_from_name(trim(item));
    if (!r) throw ParseError("unknown rule " + item, 0);
    rs.push_back(*r);
  }
  return rs;
}

// Normal-order reduction for lambda-J: the weak-head step when dbeta is
// enabled, otherwise the leftmost-outermost reduct.
std::optional<StepRec> pick_step_j(const RuleSet& rules, const TermPtr& t) {
  if (rules.has(Rule::DBeta)) {
    if (auto ws = wh_step(t)) {
      StepRec st;
      st.rule = Rule::DBeta;
      st.pos = ws->W.hole;
      st.erasing = root_step_erasing(Rule::DBeta, ws->redex);
      st.result = ws->result;
      return st;
    }
  }
  auto all = reducts(rules, t);
  if (all.empty()) return std::nullopt;
  return all[0];
}

int cmd_parse(const std::string& calc, const std::string& text) {
  if (calc == "j") std::cout << print_term(parse_term(text)) << "\n";
  else if (calc == "es") std::cout << print_es(parse_es(text)) << "\n";
  else std::cout << print_lam(parse_lam(text)) << "\n";
  return kOk;
}

int cmd_reduce(const std::string& calc, const std::string& rules_spec, bool trace,
               long max_steps, const std::string& format, const std::string& text) {
  if (calc == "j") {
    TermPtr t = parse_term(text);
    RuleSet rules = parse_rules_j(rules_spec);
    ReductionTrace tr;
    tr.start = t;
    TermPtr cur = t;
    for (long i = 0; i < max_steps; ++i) {
      auto st = pick_step_j(rules, cur);
      if (!st) break;
      tr.steps.push_back(*st);
      cur = st->result;
    }
    if (format == "json") std::cout << trace_to_json(tr).dump(2) << "\n";
    else if (trace) std::cout << trace_to_text(tr);
    else std::cout << print_term(cur) << "\n";
    return kOk;
  }
  if (calc == "es") {
    ESPtr t = parse_es(text);
    auto rules = parse_rules_es(rules_spec);
    ESPtr cur = t;
    for (long i = 0; i < max_steps; ++i) {
      auto all = es_reducts(rules, cur);
      if (all.empty()) break;
      if (trace)
        std::cout << es_rule_name(all[0].rule) << " @ " << path_to_string(all[0].pos)
                  << "\n";
      cur = all[0].result;
    }
    std::cout << print_es(cur) << "\n";
    return kOk;
  }
  LamPtr t = parse_lam(text);
  auto rules = parse_rules_lam(rules_spec);
  LamPtr cur = t;
  for (long i = 0; i < max_steps; ++i) {
    auto all = lam_reducts(rules, cur);
    if (all.empty()) break;
    if (trace)
      std::cout << lam_rule_name(all[0].rule) << " @ " << path_to_string(all[0].pos)
                << "\n";
    cur = all[0].result;
  }
  std::cout << print_lam(cur) << "\n";
  return kOk;
}

int cmd_nf(const std::string& calc, const std::string& rules_spec, bool show_flags,
           long max_steps, const std::string& text) {
  if (calc == "j") {
    TermPtr t = parse_term(text);
    if (show_flags) {
      auto f = classify(t);
      std::cout << "is_m=" << f.is_m << " is_mvar=" << f.is_mvar
                << " is_neutral=" << f.is_neutral_n << " is_answer=" << f.is_answer_a
                << " is_whnf=" << f.is_whnf << " is_dbeta_nf=" << f.is_dbeta_nf << "\n";
      return kOk;
    }
    RuleSet rules = parse_rules_j(rules_spec);
    TermPtr cur = t;
    long i = 0;
    for (; i < max_steps; ++i) {
      auto st = pick_step_j(rules, cur);
      if (!st) break;
      cur = st->result;
    }
    if (i == max_steps) {
      std::cout << "unknown (step budget exhausted)\n";
      return kUnknown;
    }
    std::cout << print_term(cur) << "\n";
    return kOk;
  }
  return cmd_reduce(calc, rules_spec, false, max_steps, "text", text);
}

int cmd_sn(const std::string& calc, const std::string& rules_spec,
           const std::string& method, bool emit_witness, long fuel,
           const SnOptions& opt, const std::string& text) {
  if (calc == "es") {
    ESPtr t = parse_es(text);
    auto v = es_sn_search(t, parse_rules_es(rules_spec), opt);
    if (v.kind == SnVerdict::Kind::Yes)
      std::cout << "yes maxred=" << v.maxred << "\n";
    else if (v.kind == SnVerdict::Kind::No)
      std::cout << "no\n";
    else
      std::cout << "unknown\n";
    return v.kind == SnVerdict::Kind::Yes   ? kOk
           : v.kind == SnVerdict::Kind::No ? kFail
                                           : kUnknown;
  }
  if (calc == "lam") {
    LamPtr t = parse_lam(text);
    auto v = lam_sn_search(t, parse_rules_lam(rules_spec), opt);
    if (v.kind == SnVerdict::Kind::Yes)
      std::cout << "yes maxred=" << v.maxred << "\n";
    else if (v.kind == SnVerdict::Kind::No)
      std::cout << "no\n";
    else
      std::cout << "unknown\n";
    return v.kind == SnVerdict::Kind::Yes   ? kOk
           : v.kind == SnVerdict::Kind::No ? kFail
                                           : kUnknown;
  }
  TermPtr t = parse_term(text);
  RuleSet rules = parse_rules_j(rules_spec);
  int code = kOk;
  bool ran_brute = method == "brute" || method == "both";
  bool ran_isn = method == "isn" || method == "both";
  if (ran_brute) {
    auto v = sn_search(t, rules, opt);
    if (v.kind == SnVerdict::Kind::Yes)
      std::cout << "brute: yes maxred=" << v.maxred << "\n";
    else if (v.kind == SnVerdict::Kind::No) {
      std::cout << "brute: no\n";
      for (const auto& w : v.witness) std::cout << "  " << w << "\n";
    } else
      std::cout << "brute: unknown\n";
    code = v.kind == SnVerdict::Kind::Yes   ? kOk
           : v.kind == SnVerdict::Kind::No ? kFail
                                           : kUnknown;
  }
  if (ran_isn) {
    IsnVerdict v;
    if (rules.has(Rule::DBeta)) v = isn_dbeta(t, fuel);
    else if (rules.has(Rule::Pi)) v = isn_betapi(t, fuel);
    else v = isn_lambdaj_new(t, fuel);
    if (v.kind == IsnVerdict::Kind::Holds) {
      std::cout << "isn: holds\n";
      if (emit_witness) std::cout << witness_to_text(v.witness);
    } else if (v.kind == IsnVerdict::Kind::Fails)
      std::cout << "isn: fails\n";
    else
      std::cout << "isn: unknown (fuel " << v.fuel_spent << ")\n";
    int ic = v.kind == IsnVerdict::Kind::Holds   ? kOk
             : v.kind == IsnVerdict::Kind::Fails ? kFail
                                                 : kUnknown;
    code = std::max(code, ic);
  }
  if (method == "maxred") {
    auto m = maxred_dbeta(t, opt.rec_fuel);
    if (m) std::cout << "maxred=" << *m << "\n";
    else std::cout << "unknown\n";
    code = m ? kOk : kUnknown;
  }
  return code;
}

int cmd_type(const std::string& system, bool emit, const std::string& target,
             long fuel, const std::string& text) {
  TermPtr t = parse_term(text);
  if (system == "simple") {
    auto inf = infer_simple(t);
    if (!inf) {
      std::cout << "untypable\n";
      return kFail;
    }
    std::cout << "|-";
    for (auto& [k, v] : inf->env) std::cout << " " << k << ":" << print_stype(v);
    std::cout << " => " << print_stype(inf->type) << "\n";
    if (emit) std::cout << sderiv_to_json(inf->deriv).dump(2) << "\n";
    return kOk;
  }
  std::optional<DerivJPtr> d;
  if (!target.empty()) d = synthesize_quant_at(t, parse_qtype(target), fuel);
  else d = synthesize_quant(t, fuel);
  if (!d) {
    std::cout << "unknown (fuel exhausted; the term may not be strongly normalizing)\n";
    return kUnknown;
  }
  std::cout << print_env((*d)->env) << " |- " << print_term(t) << " : "
            << print_qtype((*d)->type) << "  size=" << derivation_size(*d) << "\n";
  if (emit) std::cout << deriv_to_json(*d).dump(2) << "\n";
  return kOk;
}

int cmd_check_derivation(const std::string& calc, const std::string& system,
                         const std::string& text) {
  Json j = Json::parse(text);
  if (system == "simple") {
    auto d = sderiv_from_json(j);
    std::string err;
    if (check_sderiv(d, &err)) {
      std::cout << "ok\n";
      return kOk;
    }
    std::cout << "invalid: " << err << "\n";
    return kFail;
  }
  if (calc == "es") {
    auto d = es_deriv_from_json(j);
    auto res = check_derivation_es(d);
    if (res.ok) {
      std::cout << "ok\n";
      return kOk;
    }
    for (const auto& e : res.errors) std::cout << "invalid: " << e << "\n";
    return kFail;
  }
  auto d = deriv_from_json(j);
  auto res = check_derivation_j(d);
  if (res.ok) {
    std::cout << "ok\n";
    return kOk;
  }
  for (const auto& e : res.errors) std::cout << "invalid: " << e << "\n";
  return kFail;
}

int cmd_translate(const std::string& map, const std::string& text) {
  auto id = map_from_name(map);
  if (!id) throw ParseError("unknown map " + map, 0);
  switch (*id) {
    case MapId::Naive: std::cout << print_es(j_to_es_naive(parse_term(text))) << "\n"; break;
    case MapId::Star: std::cout << print_es(j_to_es_star(parse_term(text))) << "\n"; break;
    case MapId::Bullet:
      std::cout << print_term(es_to_j_bullet(parse_es(text))) << "\n";
      break;
    case MapId::Bullet2:
      std::cout << print_term(es_to_j_bullet2(parse_es(text))) << "\n";
      break;
    case MapId::Sharp:
      std::cout << print_lam(es_to_lam_sharp(parse_es(text))) << "\n";
      break;
    case MapId::Jlam:
      std::cout << print_lam(j_to_lam_traditional(parse_term(text))) << "\n";
      break;
    case MapId::StarSharp:
      std::cout << print_lam(j_to_lam_star_sharp(parse_term(text))) << "\n";
      break;
    case MapId::StarBullet:
      std::cout << print_term(j_to_j_star_bullet(parse_term(text))) << "\n";
      break;
  }
  return kOk;
}

}  // namespace

int cli_dispatch(std::vector<std::string> args) {
  CLI::App app{"lambda-J calculus toolkit"};
  app.require_subcommand(1);

  std::string calc = "j", format = "text", rules = "dbeta", method = "both";
  std::string term_text, file, system = "quant", target, map, suite = "all";
  bool trace = false, emit = false, show_flags = false;
  long max_steps = 10000;
  SuiteConfig cfg;
  SnOptions opt;
  long fuel = env_fuel(kIsnDefaultFuel);
  int vars = 2;

  auto add_common = [&](CLI::App* sub, bool with_rules) {
    sub->add_option("--calculus", calc, "j|es|lam")->default_val("j");
    sub->add_option("--format", format, "text|json")->default_val("text");
    sub->add_option("term", term_text, "term text (reads stdin if absent)");
    sub->add_option("--file", file, "read the term from a file");
    if (with_rules) sub->add_option("--rules", rules, "comma separated rule names");
  };

  auto* p_parse = app.add_subcommand("parse", "parse and reprint");
  add_common(p_parse, false);

  auto* p_reduce = app.add_subcommand("reduce", "reduce step by step");
  add_common(p_reduce, true);
  p_reduce->add_flag("--trace", trace, "print each step");
  p_reduce->add_option("--max-steps", max_steps);

  auto* p_nf = app.add_subcommand("nf", "normal form / classifier flags");
  add_common(p_nf, true);
  p_nf->add_flag("--classify", show_flags, "print classifier flags instead");
  p_nf->add_option("--max-steps", max_steps);

  auto* p_sn = app.add_subcommand("sn", "strong normalization verdicts");
  add_common(p_sn, true);
  p_sn->add_option("--method", method, "brute|isn|both|maxred")->default_val("both");
  p_sn->add_flag("--emit-witness", emit, "dump the ISN rule tree");
  p_sn->add_option("--fuel", fuel);
  p_sn->add_option("--max-states", opt.max_states);
  p_sn->add_option("--max-depth", opt.max_depth);

  auto* p_type = app.add_subcommand("type", "type checking / synthesis");
  add_common(p_type, false);
  p_type->add_option("--system", system, "simple|quant")->default_val("quant");
  p_type->add_flag("--emit-derivation", emit, "dump the derivation as JSON");
  p_type->add_option("--target", target, "conclusion type (neutral subjects)");
  p_type->add_option("--fuel", fuel);

  auto* p_check = app.add_subcommand("check-derivation", "validate a derivation JSON");
  add_common(p_check, false);
  p_check->add_option("--system", system, "quant|simple")->default_val("quant");

  auto* p_tr = app.add_subcommand("translate", "apply a translation map");
  add_common(p_tr, false);
  p_tr->add_option("--map", map,
                   "naive|star|bullet|bullet2|sharp|jlam|star-sharp|star-bullet")
      ->required();

  auto* p_verify = app.add_subcommand("verify", "run a verification suite");
  p_verify->add_option("--suite", suite, "suite id or 'all'")->default_val("all");
  p_verify->add_option("--max-size", cfg.max_size)->default_val(6);
  p_verify->add_option("--vars", vars)->default_val(2);
  p_verify->add_option("--fuel", fuel);
  p_verify->add_option("--jobs", cfg.jobs)->default_val(1);
  p_verify->add_option("--max-states", cfg.sn.max_states);
  p_verify->add_option("--format", format, "text|json")->default_val("text");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (p_verify->parsed()) {
      cfg.suite = suite;
      cfg.fuel = env_fuel(fuel);
      cfg.sn.max_states = cfg.sn.max_states;
      cfg.pool.clear();
      const char* names[] = {"x", "y", "z0", "z1", "z2", "z3"};
      for (int i = 0; i < vars && i < 6; ++i) cfg.pool.push_back(names[i]);
      auto reports = run_suite(cfg);
      long violations = 0, unknown = 0;
      if (format == "json") {
        Json arr = Json::array();
        for (const auto& r : reports) {
          Json j;
          j["suite"] = r.suite;
          j["instances"] = r.instances;
          j["resolved"] = r.resolved;
          j["unknown"] = r.unknown;
          j["violations"] = r.violations;
          arr.push_back(j);
          violations += static_cast<long>(r.violations.size());
          unknown += r.unknown;
        }
        std::cout << arr.dump(2) << "\n";
      } else {
        for (const auto& r : reports) {
          std::cout << report_to_text(r);
          violations += static_cast<long>(r.violations.size());
          unknown += r.unknown;
        }
      }
      return violations ? kFail : kOk;
    }
    fuel = env_fuel(fuel);
    std::string text = trim(slurp(file, term_text));
    if (p_parse->parsed()) return cmd_parse(calc, text);
    if (p_reduce->parsed()) return cmd_reduce(calc, rules, trace, max_steps, format, text);
    if (p_nf->parsed()) return cmd_nf(calc, rules, show_flags, max_steps, text);
    if (p_sn->parsed()) return cmd_sn(calc, rules, method, emit, fuel, opt, text);
    if (p_type->parsed()) return cmd_type(system, emit, target, fuel, text);
    if (p_check->parsed()) return cmd_check_derivation(calc, system, text);
    if (p_tr->parsed()) return cmd_translate(map, text);
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.pos << ": " << e.what() << "\n";
    return kParse;
  } catch (const Json::exception& e) {
    std::cerr << "json error: " << e.what() << "\n";
    return kParse;
  } catch (const DerivError& e) {
    std::cerr << "derivation error: " << e.what() << "\n";
    return kFail;
  }
  return kOk;
}

}  // namespace lj
