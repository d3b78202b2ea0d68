#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "report.hpp"

namespace charsum::harness {

struct SuiteInfo {
  std::string name;
  bool hard;              // rows carry pass/fail asserts
  std::string statement;  // what the rows test
};

const std::vector<SuiteInfo>& suites();
const SuiteInfo* find_suite(const std::string& name);

// Throws ConfigError for an unknown suite or invalid configuration.
Report run_suite(const ExperimentConfig& cfg);

}  // namespace charsum::harness
