// Machine-readable verification reports. A run produces one report: a
// config echo plus one block per suite, each block a list of check records
// whose inputs are complete replay data (seeds, counts, exact parameter
// spellings). Serialization is deterministic given (config, seed) so that
// reruns and replays can be compared bytewise, wall times excepted.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hsl/check_status.hpp"

namespace hsl {

inline constexpr int kReportSchemaVersion = 1;

// One delta value as given on the command line. Rational spellings "p/q"
// (and bare integers) stay exact; decimal spellings become doubles. The
// original spelling is kept so reports echo what the user wrote.
struct DeltaSpec {
  bool exact = false;
  long long num = 0;                    // exact case
  long long den = 1;                    // exact case, positive
  double value = 0.0;                   // the double view in both cases
  std::string spelling;

  static DeltaSpec from_rational(long long p, long long q);
  static DeltaSpec from_double(double v);
};

// Throws std::invalid_argument on malformed text or delta outside [0, 1).
DeltaSpec parse_delta(const std::string& text);

struct RunConfig {
  std::vector<std::string> suites;      // resolved names, no "all"
  std::vector<DeltaSpec> deltas;        // empty = per-suite defaults
  int dim = 12;
  std::uint64_t samples = 1000;         // randomized-instance counts
  std::uint64_t points = 100;           // exact-site counts
  std::uint64_t seed = 0x48534c32303236ULL;
  bool exact = false;                   // reject non-rational deltas
  double tolerance = 1e-9;
  std::string report_path;              // empty = stdout summary only
  std::string format = "json";          // json | csv
  int workers = 0;                      // 0 = hardware concurrency
};

struct CheckResult {
  std::string id;
  // Replay data: "kind" plus every parameter the runner needs. All values
  // are strings; doubles use shortest round-trip spelling.
  std::map<std::string, std::string> inputs;
  std::string expected;
  std::string observed;
  double residual = 0.0;
  CheckStatus status = CheckStatus::INCONCLUSIVE;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  double wall_ms = 0.0;

  std::uint64_t count(CheckStatus s) const;
  bool pass() const;  // zero FAIL records
};

struct VerificationReport {
  int schema_version = kReportSchemaVersion;
  RunConfig config;
  std::vector<SuiteResult> suites;

  bool all_pass() const;  // zero FAIL records across suites
};

// Shortest decimal spelling that round-trips the double exactly.
std::string double_repr(double v);

// Pretty JSON with sorted object keys; stable across runs.
std::string report_to_json(const VerificationReport& rep);

// One row per check: suite,id,status,residual,expected,observed,inputs.
std::string report_to_csv(const VerificationReport& rep);

// Throws std::runtime_error on I/O failure.
void write_report_file(const VerificationReport& rep, const std::string& path);

// Parses a JSON report produced by report_to_json; used by replay.
// Throws std::runtime_error on parse failure or schema mismatch.
VerificationReport report_from_json(const std::string& text);

// Locates a check by id. Returns nullptr when absent.
const CheckResult* find_check(const VerificationReport& rep, const std::string& id);

}  // namespace hsl
