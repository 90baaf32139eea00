// Named verification suites over the w_delta Hessian laboratory, shared by
// the command-line driver and the acceptance harness. Every check record
// carries a replayable input map; run_recorded_check re-executes one record
// and must reproduce its status for any worker count.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "hsl/report.hpp"

namespace hsl {

// Canonical execution order:
//   factorization, interlacing, position, resultant, hyperbolicity,
//   ellipticity, isaacs, separation.
const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

// Runs one named suite. Randomized checks draw per-instance generators from
// Rng::subseed(cfg.seed, index), so results do not depend on cfg.workers.
// Throws std::invalid_argument on an unknown name or an invalid
// (suite, dim, delta) combination.
SuiteResult run_suite(const std::string& name, const RunConfig& cfg);

// Runs cfg.suites in canonical order and assembles the report.
VerificationReport run_all(const RunConfig& cfg);

// Re-executes one check from its recorded inputs. When tolerance_override
// is non-negative it replaces the record's tolerance-like inputs (keys
// "tol", "slack", "gate"); residuals are unchanged by that, only the
// pass/fail cut moves. The returned record keeps the stored id.
CheckResult run_recorded_check(const CheckResult& recorded, int workers,
                               double tolerance_override = -1.0);

}  // namespace hsl
