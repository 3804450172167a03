#include "config.hpp"

#include <sstream>

namespace loccov {

using nlohmann::json;
using nlohmann::ordered_json;

KbCaps ExperimentConfig::caps(const KgModel& kg, const LatticeSpacetime& M) const {
  KbCaps c;
  c.max_width = cap_base_width;
  c.max_components = cap_components;
  for (int t = kg.margin(); t <= M.T() - 1 - kg.margin(); ++t) c.rows.push_back(t);
  return c;
}

ExperimentConfig default_config() { return ExperimentConfig{}; }

namespace {

std::vector<int> int_list(const json& j) {
  std::vector<int> v;
  for (const auto& x : j) v.push_back(x.get<int>());
  return v;
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  if (j.contains("seed")) c.seed = j["seed"].get<uint64_t>();
  if (j.contains("margin")) c.margin = j["margin"].get<int>();
  if (c.margin < 2) throw std::invalid_argument("margin must be >= 2");
  if (j.contains("theory")) {
    const auto& t = j["theory"];
    if (t.contains("xi")) c.xi = parse_rat(t["xi"].get<std::string>());
    if (t.contains("mass2")) c.mass2 = parse_rat(t["mass2"].get<std::string>());
  }
  if (j.contains("caps")) {
    const auto& k = j["caps"];
    if (k.contains("base_width")) c.cap_base_width = k["base_width"].get<int>();
    if (k.contains("components")) c.cap_components = k["components"].get<int>();
    if (k.contains("audit_rounds")) c.audit_rounds = k["audit_rounds"].get<int>();
    if (c.cap_base_width < 1 || c.cap_components < 1 || c.audit_rounds < 0)
      throw std::invalid_argument("caps must be positive");
  }
  if (j.contains("appendix_a")) {
    const auto& a = j["appendix_a"];
    if (a.contains("Ns")) c.appendix_Ns = int_list(a["Ns"]);
    if (a.contains("Ts")) c.appendix_Ts = int_list(a["Ts"]);
    if (a.contains("random_regions")) c.appendix_random_regions = a["random_regions"].get<int>();
  }
  if (j.contains("subobject_laws")) {
    const auto& s = j["subobject_laws"];
    if (s.contains("instances")) c.subobject_instances = s["instances"].get<int>();
    if (s.contains("max_dim")) c.subobject_max_dim = s["max_dim"].get<int>();
  }
  if (j.contains("kg")) {
    if (j["kg"].contains("N")) c.kg_N = j["kg"]["N"].get<int>();
    if (j["kg"].contains("T")) c.kg_T = j["kg"]["T"].get<int>();
  }
  if (j.contains("rce")) {
    const auto& r = j["rce"];
    if (r.contains("N")) c.rce_N = r["N"].get<int>();
    if (r.contains("T")) c.rce_T = r["T"].get<int>();
    if (r.contains("independence_samples"))
      c.rce_independence_samples = r["independence_samples"].get<int>();
  }
  if (j.contains("nets")) {
    if (j["nets"].contains("Ns")) c.nets_Ns = int_list(j["nets"]["Ns"]);
    if (j["nets"].contains("T")) c.nets_T = j["nets"]["T"].get<int>();
  }
  if (j.contains("probes")) {
    const auto& p = j["probes"];
    if (p.contains("Ns")) c.probes.Ns = int_list(p["Ns"]);
    if (p.contains("T")) c.probes.T = p["T"].get<int>();
    if (p.contains("mu_values")) {
      c.probes.mu_values.clear();
      for (const auto& s : p["mu_values"]) c.probes.mu_values.push_back(parse_rat(s));
    }
    if (p.contains("hot_site")) c.probes.hot_site = p["hot_site"].get<bool>();
    if (p.contains("hot_value")) c.probes.hot_value = parse_rat(p["hot_value"].get<std::string>());
  }
  if (j.contains("spass") && j["spass"].contains("g"))
    c.wrap_power = j["spass"]["g"].get<int>();
  return c;
}

ordered_json config_to_json(const ExperimentConfig& c) {
  ordered_json j;
  j["seed"] = c.seed;
  j["margin"] = c.margin;
  j["theory"] = {{"xi", rat_str(c.xi)}, {"mass2", rat_str(c.mass2)}};
  j["caps"] = {{"base_width", c.cap_base_width},
               {"components", c.cap_components},
               {"audit_rounds", c.audit_rounds}};
  j["appendix_a"] = {{"Ns", c.appendix_Ns},
                     {"Ts", c.appendix_Ts},
                     {"random_regions", c.appendix_random_regions}};
  j["subobject_laws"] = {{"instances", c.subobject_instances}, {"max_dim", c.subobject_max_dim}};
  j["kg"] = {{"N", c.kg_N}, {"T", c.kg_T}};
  j["rce"] = {{"N", c.rce_N},
              {"T", c.rce_T},
              {"independence_samples", c.rce_independence_samples}};
  j["nets"] = {{"Ns", c.nets_Ns}, {"T", c.nets_T}};
  ordered_json mus = ordered_json::array();
  for (const auto& m : c.probes.mu_values) mus.push_back(rat_str(m));
  j["probes"] = {{"Ns", c.probes.Ns},
                 {"T", c.probes.T},
                 {"mu_values", mus},
                 {"hot_site", c.probes.hot_site},
                 {"hot_value", rat_str(c.probes.hot_value)}};
  j["spass"] = {{"g", c.wrap_power}};
  return j;
}

std::string config_hash(const ExperimentConfig& c) {
  std::string s = config_to_json(c).dump();
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

SpacetimePtr spacetime_from_json(const json& j) {
  int N = j.at("N").get<int>();
  int T = j.at("T").get<int>();
  Rat dflt(0);
  if (j.contains("mu_default")) dflt = parse_rat(j["mu_default"].get<std::string>());
  std::vector<Rat> mu(std::size_t(N) * T, dflt);
  if (j.contains("mu")) {
    const auto& m = j["mu"];
    if (m.is_string()) {
      Rat v = parse_rat(m.get<std::string>());
      for (auto& x : mu) x = v;
    } else {
      for (const auto& triple : m) {
        int t = triple.at(0).get<int>();
        int x = triple.at(1).get<int>();
        if (t < 0 || t >= T || x < 0 || x >= N)
          throw std::invalid_argument("mu override outside the grid");
        mu[std::size_t(t) * N + x] = parse_rat(triple.at(2).get<std::string>());
      }
    }
  }
  std::optional<PointSet> carrier;
  if (j.contains("carrier")) {
    PointSet s(N, T);
    for (const auto& pt : j["carrier"]) s.set(Point{pt.at(0).get<int>(), pt.at(1).get<int>()});
    carrier = s;
  }
  return std::make_shared<const LatticeSpacetime>(N, T, std::move(mu), carrier);
}

ordered_json spacetime_to_json(const LatticeSpacetime& m) {
  ordered_json j;
  j["N"] = m.N();
  j["T"] = m.T();
  ordered_json mu = ordered_json::array();
  for (auto p : m.carrier().points())
    if (m.mu(p) != 0) mu.push_back({p.t, p.x, rat_str(m.mu(p))});
  j["mu"] = mu;
  if (!m.full_carrier()) {
    ordered_json c = ordered_json::array();
    for (auto p : m.carrier().points()) c.push_back({p.t, p.x});
    j["carrier"] = c;
  }
  return j;
}

std::map<Point, Rat> sparse_values_from_json(const json& j) {
  std::map<Point, Rat> v;
  for (const auto& triple : j)
    v[Point{triple.at(0).get<int>(), triple.at(1).get<int>()}] =
        parse_rat(triple.at(2).get<std::string>());
  return v;
}

json sparse_values_to_json(const std::map<Point, Rat>& v) {
  json j = json::array();
  for (const auto& [p, val] : v)
    if (val != 0) j.push_back({p.t, p.x, rat_str(val)});
  return j;
}

}  // namespace loccov
