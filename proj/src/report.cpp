#include "report.hpp"

#include <filesystem>
#include <fstream>

namespace loccov {

using nlohmann::json;
using nlohmann::ordered_json;

int Report::passed() const {
  int n = 0;
  for (const auto& c : checks) n += c.status == "pass";
  return n;
}
int Report::failed() const {
  int n = 0;
  for (const auto& c : checks) n += c.status == "fail";
  return n;
}
int Report::flagged() const {
  int n = 0;
  for (const auto& c : checks) n += c.status == "flagged";
  return n;
}

ordered_json report_to_json(const Report& r) {
  ordered_json j;
  j["schema"] = "1";
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["config_hash"] = r.config_hash;
  j["caps"] = r.caps;
  j["summary"] = {{"pass", r.passed()}, {"fail", r.failed()}, {"flagged", r.flagged()}};
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json jc;
    jc["id"] = c.id;
    jc["law"] = c.law;
    jc["status"] = c.status;
    jc["witness"] = c.witness;
    jc["timing"] = {{"millis", c.millis}};
    checks.push_back(jc);
  }
  j["checks"] = checks;
  return j;
}

Report report_from_json(const json& j) {
  if (j.at("schema").get<std::string>() != "1")
    throw std::invalid_argument("unsupported report schema");
  Report r;
  r.suite = j.at("suite").get<std::string>();
  r.seed = j.at("seed").get<uint64_t>();
  r.config_hash = j.at("config_hash").get<std::string>();
  r.caps = j.at("caps");
  for (const auto& jc : j.at("checks")) {
    CheckRecord c;
    c.id = jc.at("id").get<std::string>();
    c.law = jc.at("law").get<std::string>();
    c.status = jc.at("status").get<std::string>();
    c.witness = jc.at("witness");
    if (jc.contains("timing")) c.millis = jc["timing"].value("millis", 0L);
    r.checks.push_back(std::move(c));
  }
  return r;
}

namespace {

std::string csv_escape(const std::string& s) {
  bool needs = s.find_first_of(",\"\n") != std::string::npos;
  if (!needs) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void write_tables(const Report& r, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream f(out_dir + "/checks.csv");
    f << "id,law,status,witness\n";
    for (const auto& c : r.checks)
      f << csv_escape(c.id) << "," << csv_escape(c.law) << "," << c.status << ","
        << csv_escape(c.witness.is_null() ? "" : c.witness.dump()) << "\n";
  }
  {
    std::ofstream f(out_dir + "/dims.csv");
    f << "check_id,kind,index,dim,caps,audit_rounds\n";
    for (const auto& c : r.checks) {
      if (!c.witness.is_object() || !c.witness.contains("net_values")) continue;
      for (const auto& v : c.witness["net_values"])
        f << csv_escape(c.id) << "," << v.value("kind", "") << ","
          << csv_escape(v.value("index", "")) << "," << v.value("dim", -1) << ","
          << csv_escape(v.contains("caps") ? v["caps"].dump() : "") << ","
          << v.value("audit_rounds", 0) << "\n";
    }
  }
}

}  // namespace loccov
