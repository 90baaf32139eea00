// Command-line driver: runs verification suites over the singular Hessian
// and Isaacs solutions, writes machine-readable reports, and replays
// individual recorded checks. Exit codes: 0 all checks pass, 1 at least one
// FAIL record, 2 usage error, 3 I/O failure.
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hsl/report.hpp"
#include "hsl/suites.hpp"

namespace {

using hsl::CheckStatus;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

bool parse_u64(const std::string& text, std::uint64_t& out) {
  if (text.empty()) return false;
  errno = 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (errno != 0 || end != text.c_str() + text.size()) return false;
  out = v;
  return true;
}

const char* status_tag(CheckStatus s) {
  switch (s) {
    case CheckStatus::PASS: return "[PASS]";
    case CheckStatus::FAIL: return "[FAIL]";
    default: return "[INCONCLUSIVE]";
  }
}

void print_check(const hsl::CheckResult& c) {
  std::cout << status_tag(c.status) << " " << c.id << "  " << c.observed
            << " (residual " << hsl::double_repr(c.residual) << ")\n";
}

void print_report(const hsl::VerificationReport& rep) {
  for (const hsl::SuiteResult& s : rep.suites) {
    for (const hsl::CheckResult& c : s.checks) print_check(c);
    std::cout << "suite " << s.name << ": " << s.count(CheckStatus::PASS)
              << " pass, " << s.count(CheckStatus::FAIL) << " fail, "
              << s.count(CheckStatus::INCONCLUSIVE) << " inconclusive ("
              << hsl::double_repr(s.wall_ms) << " ms)\n";
  }
  std::cout << "overall: " << (rep.all_pass() ? "PASS" : "FAIL") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification laboratory for singular solutions of uniformly "
               "elliptic Hessian and Isaacs equations"};
  app.require_subcommand(1);

  std::string suite;
  std::vector<std::string> delta_texts;
  int dim = 12;
  std::uint64_t samples = 1000, points = 100;
  std::string seed_text;
  bool exact = false;
  double tolerance = 1e-9;
  std::string report_path;
  std::string format = "json";
  int workers = -1;

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite,
                     "factorization | interlacing | position | resultant | "
                     "hyperbolicity | ellipticity | isaacs | separation | all")
      ->required();
  verify->add_option("--delta", delta_texts,
                     "delta in [0,1); rational \"p/q\" or decimal; repeatable");
  verify->add_option("--dim", dim, "ambient dimension")
      ->check(CLI::IsMember({11, 12}));
  verify->add_option("--samples", samples, "randomized-instance count per check");
  verify->add_option("--points", points, "exact-site count per check");
  verify->add_option("--seed", seed_text, "64-bit seed (default env HSL_SEED)");
  verify->add_flag("--exact", exact, "reject non-rational delta spellings");
  verify->add_option("--tolerance", tolerance, "float comparison tolerance");
  verify->add_option("--report", report_path, "write the report to this path");
  verify->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--workers", workers,
                     "worker threads (default env HSL_WORKERS, then hardware)");

  std::string replay_path, check_id;
  double replay_tol = -1.0;
  int replay_workers = -1;
  CLI::App* replay = app.add_subcommand("replay",
                                        "re-execute one recorded check from a report");
  replay->add_option("report", replay_path, "JSON report written by verify")->required();
  replay->add_option("check-id", check_id, "id of the check to re-execute")->required();
  replay->add_option("--tolerance", replay_tol,
                     "override tolerance-like inputs of the recorded check");
  replay->add_option("--workers", replay_workers, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  auto resolve_env_workers = [&](int flag_value) {
    if (flag_value >= 0) return flag_value;
    if (const char* env = std::getenv("HSL_WORKERS")) {
      std::uint64_t w = 0;
      if (parse_u64(env, w) && w <= 1024) return int(w);
      std::cerr << "invalid HSL_WORKERS: " << env << "\n";
      return -2;
    }
    return 0;
  };

  if (verify->parsed()) {
    hsl::RunConfig cfg;
    if (suite == "all") {
      cfg.suites = hsl::suite_names();
    } else if (hsl::is_suite_name(suite)) {
      cfg.suites = {suite};
    } else {
      std::cerr << "unknown suite: " << suite << "\n";
      return kExitUsage;
    }
    for (const std::string& t : delta_texts) {
      try {
        cfg.deltas.push_back(hsl::parse_delta(t));
      } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
      }
    }
    if (exact) {
      for (const hsl::DeltaSpec& d : cfg.deltas) {
        if (!d.exact) {
          std::cerr << "--exact rejects non-rational delta: " << d.spelling << "\n";
          return kExitUsage;
        }
      }
    }
    cfg.exact = exact;
    cfg.dim = dim;
    cfg.samples = samples;
    cfg.points = points;
    cfg.tolerance = tolerance;
    cfg.report_path = report_path;
    cfg.format = format;
    if (!seed_text.empty()) {
      if (!parse_u64(seed_text, cfg.seed)) {
        std::cerr << "invalid --seed: " << seed_text << "\n";
        return kExitUsage;
      }
    } else if (const char* env = std::getenv("HSL_SEED")) {
      if (!parse_u64(env, cfg.seed)) {
        std::cerr << "invalid HSL_SEED: " << env << "\n";
        return kExitUsage;
      }
    }
    int w = resolve_env_workers(workers);
    if (w == -2) return kExitUsage;
    cfg.workers = w;

    hsl::VerificationReport rep;
    try {
      rep = hsl::run_all(cfg);
    } catch (const std::invalid_argument& e) {
      std::cerr << e.what() << "\n";
      return kExitUsage;
    }
    print_report(rep);
    if (!cfg.report_path.empty()) {
      try {
        hsl::write_report_file(rep, cfg.report_path);
      } catch (const std::runtime_error& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
      }
    }
    return rep.all_pass() ? kExitPass : kExitFail;
  }

  // replay
  std::ifstream f(replay_path, std::ios::binary);
  if (!f) {
    std::cerr << "cannot open report: " << replay_path << "\n";
    return kExitIo;
  }
  std::ostringstream buf;
  buf << f.rdbuf();
  hsl::VerificationReport rep;
  try {
    rep = hsl::report_from_json(buf.str());
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return kExitIo;
  }
  const hsl::CheckResult* rec = hsl::find_check(rep, check_id);
  if (rec == nullptr) {
    std::cerr << "check-id not found in report: " << check_id << "\n";
    return kExitUsage;
  }
  int w = resolve_env_workers(replay_workers);
  if (w == -2) return kExitUsage;
  hsl::CheckResult fresh;
  try {
    fresh = hsl::run_recorded_check(*rec, w, replay_tol);
  } catch (const std::exception& e) {
    std::cerr << "replay failure: " << e.what() << "\n";
    return kExitUsage;
  }
  std::cout << "recorded: " << status_tag(rec->status) << " " << rec->id << "\n";
  print_check(fresh);
  std::cout << (fresh.status == rec->status ? "status reproduced"
                                            : "status changed")
            << "\n";
  return fresh.status == CheckStatus::FAIL ? kExitFail : kExitPass;
}
