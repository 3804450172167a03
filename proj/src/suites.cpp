#include "suites.hpp"

#include <chrono>
#include <stdexcept>
#include <thread>

#include "suites_detail.hpp"

namespace loccov {

using detail::Check;
using detail::Checks;

std::vector<std::string> suite_names() {
  return {"causal-appendix", "subobject-laws", "kg-functor", "rce-laws",
          "nets",            "dynlocal",       "spass-demo", "all"};
}

namespace {

Checks checks_for(const std::string& name, const ExperimentConfig& cfg) {
  if (name == "causal-appendix") return detail::suite_causal_appendix(cfg);
  if (name == "subobject-laws") return detail::suite_subobject_laws(cfg);
  if (name == "kg-functor") return detail::suite_kg_functor(cfg);
  if (name == "rce-laws") return detail::suite_rce_laws(cfg);
  if (name == "nets") return detail::suite_nets(cfg);
  if (name == "dynlocal") return detail::suite_dynlocal(cfg);
  if (name == "spass-demo") return detail::suite_spass_demo(cfg);
  if (name == "all") {
    Checks all;
    for (const auto& n : suite_names()) {
      if (n == "all") continue;
      auto cs = checks_for(n, cfg);
      all.insert(all.end(), std::make_move_iterator(cs.begin()),
                 std::make_move_iterator(cs.end()));
    }
    return all;
  }
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace

Report run_suite(const std::string& name, const ExperimentConfig& cfg, int jobs) {
  Checks checks = checks_for(name, cfg);
  if (jobs < 1) jobs = 1;

  Report rep;
  rep.suite = name;
  rep.seed = cfg.seed;
  rep.config_hash = config_hash(cfg);
  rep.caps = {{"base_width", cfg.cap_base_width},
              {"components", cfg.cap_components},
              {"audit_rounds", cfg.audit_rounds},
              {"margin", cfg.margin}};
  rep.checks.resize(checks.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= checks.size()) break;
      auto t0 = std::chrono::steady_clock::now();
      CheckRecord rec;
      rec.id = checks[i].id;
      rec.law = checks[i].law;
      try {
        auto out = checks[i].run();
        rec.status = out.status;
        rec.witness = std::move(out.witness);
      } catch (const std::exception& e) {
        rec.status = "fail";
        rec.witness = {{"error", e.what()}};
      }
      rec.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
      rep.checks[i] = std::move(rec);
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rep;
}

}  // namespace loccov
