// Command line front end. Talks to the core exclusively through the C API.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "loccov/loccov.h"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("--config", "cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

int default_jobs() {
  if (const char* env = std::getenv("LOCCOV_JOBS")) {
    int j = std::atoi(env);
    if (j >= 1) return j;
  }
  return 1;
}

[[noreturn]] void die(const char* context, loccov_status s) {
  std::cerr << context << ": " << loccov_status_name(s) << ": " << loccov_last_error()
            << "\n";
  std::exit(2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"loccov — locally covariant field theory on finite circle lattices"};
  app.require_subcommand(1);

  std::string suite, config_path, out_dir = ".";
  uint64_t seed = 0;
  int jobs = default_jobs();

  auto* run = app.add_subcommand("run", "run a verification suite");
  run->add_option("suite", suite, "suite name (use `all` for everything)")->required();
  run->add_option("--config", config_path, "experiment config JSON")->required();
  run->add_option("--seed", seed, "seed override (0 keeps the config value)");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--jobs", jobs, "concurrent checks (default LOCCOV_JOBS or 1)");

  std::string report_path, tables_dir = ".";
  auto* tables = app.add_subcommand("tables", "flatten a report into CSV tables");
  tables->add_option("report", report_path, "report JSON file")->required();
  tables->add_option("--out", tables_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    std::string config = read_file(config_path);
    loccov_report* rep = nullptr;
    if (auto s = loccov_run_suite(suite.c_str(), config.c_str(), seed, jobs, &rep))
      die("run", s);
    char* json = nullptr;
    if (auto s = loccov_report_to_json(rep, &json)) die("serialize", s);
    std::filesystem::create_directories(out_dir);
    std::string out_path = out_dir + "/report-" + suite + ".json";
    std::ofstream(out_path) << json << "\n";
    loccov_string_free(json);

    int passed = 0, failed = 0, flagged = 0;
    loccov_report_summary(rep, &passed, &failed, &flagged);
    std::cout << suite << ": " << passed << " passed, " << failed << " failed, " << flagged
              << " flagged -> " << out_path << "\n";
    loccov_report_free(rep);
    return failed > 0 ? 1 : 0;
  }

  if (tables->parsed()) {
    std::string json = read_file(report_path);
    loccov_report* rep = nullptr;
    if (auto s = loccov_report_from_json(json.c_str(), &rep)) die("parse", s);
    if (auto s = loccov_report_write_tables(rep, tables_dir.c_str())) die("tables", s);
    std::cout << "wrote " << tables_dir << "/checks.csv and " << tables_dir
              << "/dims.csv\n";
    loccov_report_free(rep);
    return 0;
  }
  return 0;
}
