#pragma once

#include <json.hpp>

#include "theory.hpp"

namespace loccov {

// Everything an experiment run needs, with exact-rational literals. The
// JSON form accepts partial documents layered over these defaults.
struct ExperimentConfig {
  uint64_t seed = 1;
  int margin = 2;
  Rat xi{1};
  Rat mass2{0};

  int cap_base_width = 3;
  int cap_components = 2;
  int audit_rounds = 3;

  std::vector<int> appendix_Ns{4, 5, 6, 7, 8};
  std::vector<int> appendix_Ts{6, 7, 8, 9, 10};
  int appendix_random_regions = 12;

  int subobject_instances = 1000;
  int subobject_max_dim = 12;

  int kg_N = 8;
  int kg_T = 12;

  int rce_N = 8;
  int rce_T = 12;
  int rce_independence_samples = 50;

  std::vector<int> nets_Ns{5, 6, 7};
  int nets_T = 12;

  ProbeParams probes;
  int wrap_power = 2;

  KbCaps caps(const KgModel& kg, const LatticeSpacetime& M) const;
};

ExperimentConfig default_config();
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::ordered_json config_to_json(const ExperimentConfig& c);
std::string config_hash(const ExperimentConfig& c);

// {"N":., "T":., "mu": "p/q" | [[t,x,"p/q"],...], "mu_default": "p/q",
//  "carrier": [[t,x],...]}
SpacetimePtr spacetime_from_json(const nlohmann::json& j);
nlohmann::ordered_json spacetime_to_json(const LatticeSpacetime& m);

// Sparse [t,x,"p/q"] triples.
std::map<Point, Rat> sparse_values_from_json(const nlohmann::json& j);
nlohmann::json sparse_values_to_json(const std::map<Point, Rat>& v);

}  // namespace loccov
