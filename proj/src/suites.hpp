#pragma once

#include "report.hpp"

namespace loccov {

std::vector<std::string> suite_names();

// Executes the named verification suite ("all" fans out) with up to `jobs`
// concurrent checks. The report content is independent of `jobs`.
Report run_suite(const std::string& name, const ExperimentConfig& cfg, int jobs = 1);

}  // namespace loccov
