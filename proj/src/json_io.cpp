#include "lj/json_io.hpp"

namespace lj {

namespace {

Json env_to_json(const TypeEnv& e) {
  Json j = Json::object();
  for (auto& [k, v] : e.m) {
    Json arr = Json::array();
    for (const auto& ty : v.elems) arr.push_back(print_qtype(ty));
    j[k] = arr;
  }
  return j;
}

TypeEnv env_from_json(const Json& j) {
  TypeEnv e;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::vector<QTypePtr> tys;
    for (const auto& s : it.value()) tys.push_back(parse_qtype(s.get<std::string>()));
    e.set(it.key(), mmake(std::move(tys)));
  }
  return e;
}

Json mult_to_json(const MultiType& m) {
  Json arr = Json::array();
  for (const auto& ty : m.elems) arr.push_back(print_qtype(ty));
  return arr;
}

MultiType mult_from_json(const Json& j) {
  std::vector<QTypePtr> tys;
  for (const auto& s : j) tys.push_back(parse_qtype(s.get<std::string>()));
  return mmake(std::move(tys));
}

std::string jrule_name(DerivJ::Rule r) {
  switch (r) {
    case DerivJ::Rule::Var: return "var";
    case DerivJ::Rule::Abs: return "abs";
    case DerivJ::Rule::App: return "app";
    case DerivJ::Rule::Many: return "many";
  }
  return "?";
}

}  // namespace

Json deriv_to_json(const DerivJPtr& d) {
  Json j;
  j["rule"] = jrule_name(d->rule);
  j["env"] = env_to_json(d->env);
  j["term"] = print_term(d->subject);
  if (d->rule == DerivJ::Rule::Many) j["type"] = print_multitype(d->mtype);
  else j["type"] = print_qtype(d->type);
  if (d->rule == DerivJ::Rule::App) {
    Json pairs = Json::array();
    for (auto& [m, tau] : d->pairs) {
      Json p;
      p["dom"] = mult_to_json(m);
      p["cod"] = print_qtype(tau);
      pairs.push_back(p);
    }
    j["pairs"] = pairs;
    Json w = Json::object();
    if (d->fun_witness) w["fun"] = print_qtype(d->fun_witness);
    if (d->arg_witness) w["arg"] = print_qtype(d->arg_witness);
    j["witnesses"] = w;
  }
  Json kids = Json::array();
  for (const auto& k : d->children) kids.push_back(deriv_to_json(k));
  j["children"] = kids;
  return j;
}

DerivJPtr deriv_from_json(const Json& j) {
  auto d = std::make_shared<DerivJ>();
  std::string rule = j.at("rule").get<std::string>();
  if (rule == "var") d->rule = DerivJ::Rule::Var;
  else if (rule == "abs") d->rule = DerivJ::Rule::Abs;
  else if (rule == "app") d->rule = DerivJ::Rule::App;
  else if (rule == "many") d->rule = DerivJ::Rule::Many;
  else throw ParseError("unknown derivation rule " + rule, 0);
  d->env = env_from_json(j.at("env"));
  d->subject = parse_term(j.at("term").get<std::string>());
  std::string ty = j.at("type").get<std::string>();
  if (d->rule == DerivJ::Rule::Many) d->mtype = parse_multitype(ty);
  else d->type = parse_qtype(ty);
  if (d->rule == DerivJ::Rule::App) {
    for (const auto& p : j.at("pairs"))
      d->pairs.push_back(
          {mult_from_json(p.at("dom")), parse_qtype(p.at("cod").get<std::string>())});
    const auto& w = j.at("witnesses");
    if (w.contains("fun")) d->fun_witness = parse_qtype(w.at("fun").get<std::string>());
    if (w.contains("arg")) d->arg_witness = parse_qtype(w.at("arg").get<std::string>());
  }
  for (const auto& k : j.at("children")) d->children.push_back(deriv_from_json(k));
  return d;
}

namespace {

std::string esrule_name(DerivES::Rule r) {
  switch (r) {
    case DerivES::Rule::Var: return "var";
    case DerivES::Rule::Abs: return "abs";
    case DerivES::Rule::App: return "app";
    case DerivES::Rule::Sub: return "sub";
    case DerivES::Rule::Many: return "many";
  }
  return "?";
}

}  // namespace

Json es_deriv_to_json(const DerivESPtr& d) {
  Json j;
  j["rule"] = esrule_name(d->rule);
  j["env"] = env_to_json(d->env);
  j["term"] = print_es(d->subject);
  if (d->rule == DerivES::Rule::Many) j["type"] = print_multitype(d->mtype);
  else j["type"] = print_qtype(d->type);
  if (d->rule == DerivES::Rule::App || d->rule == DerivES::Rule::Sub) {
    j["dom"] = mult_to_json(d->dom);
    Json w = Json::object();
    if (d->arg_witness) w["arg"] = print_qtype(d->arg_witness);
    j["witnesses"] = w;
  }
  Json kids = Json::array();
  for (const auto& k : d->children) kids.push_back(es_deriv_to_json(k));
  j["children"] = kids;
  return j;
}

DerivESPtr es_deriv_from_json(const Json& j) {
  auto d = std::make_shared<DerivES>();
  std::string rule = j.at("rule").get<std::string>();
  if (rule == "var") d->rule = DerivES::Rule::Var;
  else if (rule == "abs") d->rule = DerivES::Rule::Abs;
  else if (rule == "app") d->rule = DerivES::Rule::App;
  else if (rule == "sub") d->rule = DerivES::Rule::Sub;
  else if (rule == "many") d->rule = DerivES::Rule::Many;
  else throw ParseError("unknown derivation rule " + rule, 0);
  d->env = env_from_json(j.at("env"));
  d->subject = parse_es(j.at("term").get<std::string>());
  std::string ty = j.at("type").get<std::string>();
  if (d->rule == DerivES::Rule::Many) d->mtype = parse_multitype(ty);
  else d->type = parse_qtype(ty);
  if (d->rule == DerivES::Rule::App || d->rule == DerivES::Rule::Sub) {
    d->dom = mult_from_json(j.at("dom"));
    const auto& w = j.at("witnesses");
    if (w.contains("arg")) d->arg_witness = parse_qtype(w.at("arg").get<std::string>());
  }
  for (const auto& k : j.at("children")) d->children.push_back(es_deriv_from_json(k));
  return d;
}

Json sderiv_to_json(const SDerivPtr& d) {
  Json j;
  j["rule"] = d->rule;
  Json env = Json::object();
  for (auto& [k, v] : d->env) env[k] = print_stype(v);
  j["env"] = env;
  j["term"] = print_term(d->subject);
  j["type"] = print_stype(d->type);
  Json kids = Json::array();
  for (const auto& k : d->children) kids.push_back(sderiv_to_json(k));
  j["children"] = kids;
  return j;
}

SDerivPtr sderiv_from_json(const Json& j) {
  auto d = std::make_shared<SDeriv>();
  d->rule = j.at("rule").get<std::string>();
  for (auto it = j.at("env").begin(); it != j.at("env").end(); ++it)
    d->env[it.key()] = parse_stype(it.value().get<std::string>());
  d->subject = parse_term(j.at("term").get<std::string>());
  d->type = parse_stype(j.at("type").get<std::string>());
  for (const auto& k : j.at("children")) d->children.push_back(sderiv_from_json(k));
  return d;
}

Json trace_to_json(const ReductionTrace& tr) {
  Json j;
  j["start"] = print_term(tr.start);
  Json steps = Json::array();
  for (const auto& st : tr.steps) {
    Json s;
    s["rule"] = rule_name(st.rule);
    s["path"] = st.pos;
    s["erasing"] = st.erasing;
    s["term"] = print_term(st.result);
    steps.push_back(s);
  }
  j["steps"] = steps;
  j["cycle"] = tr.cycle;
  return j;
}

}  // namespace lj
