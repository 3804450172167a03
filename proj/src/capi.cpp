#include "loccov/loccov.h"

#include <cstring>

#include "suites.hpp"

using namespace loccov;

struct loccov_spacetime {
  SpacetimePtr m;
};

struct loccov_report {
  Report r;
};

namespace {

thread_local std::string g_last_error;

loccov_status set_error(loccov_status s, const char* what) {
  g_last_error = what ? what : "";
  return s;
}

template <typename Fn>
loccov_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::domain_error& e) {
    return set_error(LOCCOV_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return set_error(LOCCOV_ERR_INVALID_ARGUMENT, e.what());
  } catch (const nlohmann::json::exception& e) {
    return set_error(LOCCOV_ERR_PARSE, e.what());
  } catch (const std::exception& e) {
    return set_error(LOCCOV_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

PointSet points_from_json(const LatticeSpacetime& m, const char* json) {
  auto j = nlohmann::json::parse(json);
  PointSet s(m.N(), m.T());
  for (const auto& p : j) s.set(Point{p.at(0).get<int>(), p.at(1).get<int>()});
  return s;
}

std::string points_to_json(const PointSet& s) {
  nlohmann::json j = nlohmann::json::array();
  for (auto p : s.points()) j.push_back({p.t, p.x});
  return j.dump();
}

using RegionOp = PointSet (*)(const LatticeSpacetime&, const PointSet&);

loccov_status region_op(const loccov_spacetime* m, const char* points_json, char** out_json,
                        RegionOp op) {
  if (!m || !points_json || !out_json)
    return set_error(LOCCOV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    PointSet s = points_from_json(*m->m, points_json);
    *out_json = dup_string(points_to_json(op(*m->m, s)));
    return LOCCOV_OK;
  });
}

}  // namespace

extern "C" {

const char* loccov_version(void) { return "0.1.0"; }

const char* loccov_status_name(loccov_status s) {
  switch (s) {
    case LOCCOV_OK: return "ok";
    case LOCCOV_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case LOCCOV_ERR_PARSE: return "parse-error";
    case LOCCOV_ERR_DOMAIN: return "domain-error";
    case LOCCOV_ERR_IO: return "io-error";
    case LOCCOV_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* loccov_last_error(void) { return g_last_error.c_str(); }

void loccov_string_free(char* s) { std::free(s); }

loccov_status loccov_spacetime_from_json(const char* json, loccov_spacetime** out) {
  if (!json || !out) return set_error(LOCCOV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto j = nlohmann::json::parse(json);
    auto m = spacetime_from_json(j);
    *out = new loccov_spacetime{std::move(m)};
    return LOCCOV_OK;
  });
}

void loccov_spacetime_free(loccov_spacetime* m) { delete m; }

loccov_status loccov_spacetime_dims(const loccov_spacetime* m, int* n, int* t) {
  if (!m || !n || !t) return set_error(LOCCOV_ERR_INVALID_ARGUMENT, "null argument");
  *n = m->m->N();
  *t = m->m->T();
  return LOCCOV_OK;
}

loccov_status loccov_causal_future_json(const loccov_spacetime* m, const char* points_json,
                                        char** out_json) {
  return region_op(m, points_json, out_json,
                   [](const LatticeSpacetime& M, const PointSet& s) {
                     return causal_future(M, s);
                   });
}

loccov_status loccov_causal_past_json(const loccov_spacetime* m, const char* points_json,
                                      char** out_json) {
  return region_op(m, points_json, out_json,
                   [](const LatticeSpacetime& M, const PointSet& s) {
                     return causal_past(M, s);
                   });
}

loccov_status loccov_causal_complement_json(const loccov_spacetime* m,
                                            const char* points_json, char** out_json) {
  return region_op(m, points_json, out_json,
                   [](const LatticeSpacetime& M, const PointSet& s) {
                     return causal_complement(M, s);
                   });
}

loccov_status loccov_domain_of_dependence_json(const loccov_spacetime* m,
                                               const char* points_json, char** out_json) {
  return region_op(m, points_json, out_json,
                   [](const LatticeSpacetime& M, const PointSet& s) {
                     return domain_of_dependence(M, s);
                   });
}

loccov_status loccov_run_suite(const char* suite, const char* config_json, uint64_t seed,
                               int jobs, loccov_report** out) {
  if (!suite || !out) return set_error(LOCCOV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto j = config_json ? nlohmann::json::parse(config_json) : nlohmann::json::object();
    ExperimentConfig cfg = config_from_json(j);
    if (seed != 0) cfg.seed = seed;
    Report r = run_suite(suite, cfg, jobs);
    *out = new loccov_report{std::move(r)};
    return LOCCOV_OK;
  });
}

loccov_status loccov_report_from_json(const char* json, loccov_report** out) {
  if (!json || !out) return set_error(LOCCOV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new loccov_report{report_from_json(nlohmann::json::parse(json))};
    return LOCCOV_OK;
  });
}

loccov_status loccov_report_to_json(const loccov_report* r, char** out_json) {
  if (!r || !out_json) return set_error(LOCCOV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out_json = dup_string(report_to_json(r->r).dump(2));
    return LOCCOV_OK;
  });
}

loccov_status loccov_report_summary(const loccov_report* r, int* passed, int* failed,
                                    int* flagged) {
  if (!r) return set_error(LOCCOV_ERR_INVALID_ARGUMENT, "null argument");
  if (passed) *passed = r->r.passed();
  if (failed) *failed = r->r.failed();
  if (flagged) *flagged = r->r.flagged();
  return LOCCOV_OK;
}

loccov_status loccov_report_write_tables(const loccov_report* r, const char* out_dir) {
  if (!r || !out_dir) return set_error(LOCCOV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    write_tables(r->r, out_dir);
    return LOCCOV_OK;
  });
}

void loccov_report_free(loccov_report* r) { delete r; }

}  // extern "C"
