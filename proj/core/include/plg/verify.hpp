#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plg/report.hpp"

namespace plg::verify {

/// Runs a named check suite against a registered model. samples <= 0 keeps
/// every check at its own default count; a positive value overrides the
/// count of the randomized checks (exhaustive ones are unaffected).
/// Deterministic: each check draws from its own generator seeded from
/// (check id, seed).
report::VerificationReport run(const std::string& model,
                               const std::string& suite, std::uint64_t seed,
                               long samples);

std::vector<std::string> suite_names();

}  // namespace plg::verify
