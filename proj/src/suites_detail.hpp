#pragma once

#include <functional>

#include "report.hpp"

namespace loccov::detail {

struct Outcome {
  std::string status = "pass";
  nlohmann::json witness;
};

inline Outcome pass(nlohmann::json witness = nullptr) { return {"pass", std::move(witness)}; }
inline Outcome fail(nlohmann::json witness) { return {"fail", std::move(witness)}; }
inline Outcome flagged(nlohmann::json witness) { return {"flagged", std::move(witness)}; }

// Aggregate helper: pass iff no failures were collected.
struct Tally {
  long tested = 0;
  nlohmann::json failures = nlohmann::json::array();
  nlohmann::json extra;

  void count(bool ok, const std::function<nlohmann::json()>& describe) {
    ++tested;
    if (!ok && failures.size() < 16) failures.push_back(describe());
    if (!ok) ++failed;
  }
  long failed = 0;

  Outcome outcome() const {
    nlohmann::json w{{"tested", tested}, {"failed", failed}};
    if (failed > 0) w["failures"] = failures;
    if (!extra.is_null()) w["detail"] = extra;
    return failed == 0 ? pass(w) : fail(w);
  }
};

struct Check {
  std::string id;
  std::string law;
  std::function<Outcome()> run;
};

using Checks = std::vector<Check>;

Checks suite_causal_appendix(const ExperimentConfig& cfg);
Checks suite_subobject_laws(const ExperimentConfig& cfg);
Checks suite_kg_functor(const ExperimentConfig& cfg);
Checks suite_rce_laws(const ExperimentConfig& cfg);
Checks suite_nets(const ExperimentConfig& cfg);
Checks suite_dynlocal(const ExperimentConfig& cfg);
Checks suite_spass_demo(const ExperimentConfig& cfg);

std::string points_str(const PointSet& s);
nlohmann::json vec_json(const std::vector<Rat>& v);

}  // namespace loccov::detail
