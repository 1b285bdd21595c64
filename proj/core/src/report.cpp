#include "plg/report.hpp"

#include <algorithm>

namespace plg::report {

bool VerificationReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json VerificationReport::to_json() const {
  std::vector<CheckResult> sorted = checks;
  std::sort(sorted.begin(), sorted.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : sorted) {
    arr.push_back({{"id", c.id},
                   {"samples", c.samples},
                   {"max_defect", c.max_defect},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass}});
  }
  return nlohmann::json{{"schema", schema},   {"model", model},
                        {"suite", suite},     {"seed", seed},
                        {"samples", samples}, {"precision", precision},
                        {"checks", arr},      {"pass", pass()}};
}

}  // namespace plg::report
