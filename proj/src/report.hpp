#pragma once

#include <json.hpp>

#include "config.hpp"

namespace loccov {

// One executed check. `law` is a stable identifier of the verified
// mathematical statement; failures always carry a witness payload.
struct CheckRecord {
  std::string id;
  std::string law;
  std::string status;  // "pass" | "fail" | "flagged"
  nlohmann::json witness;
  long millis = 0;
};

struct Report {
  std::string suite;
  uint64_t seed = 0;
  std::string config_hash;
  nlohmann::ordered_json caps;
  std::vector<CheckRecord> checks;

  int passed() const;
  int failed() const;
  int flagged() const;
};

nlohmann::ordered_json report_to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

// checks.csv (one row per check) and dims.csv (one row per net value that
// reported a dimension).
void write_tables(const Report& r, const std::string& out_dir);

}  // namespace loccov
