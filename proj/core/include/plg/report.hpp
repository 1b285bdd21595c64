#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace plg::report {

struct CheckResult {
  std::string id;
  long samples = 0;
  double max_defect = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// One verification run. Serialization is deterministic: checks are sorted
/// by id and doubles use the shortest round-trip representation, so equal
/// runs produce byte-identical reports.
struct VerificationReport {
  int schema = 1;
  std::string model;
  std::string suite;
  std::uint64_t seed = 0;
  long samples = 0;  // 0: per-check defaults were used
  std::string precision = "double";
  std::vector<CheckResult> checks;

  bool pass() const;
  nlohmann::json to_json() const;
};

}  // namespace plg::report
