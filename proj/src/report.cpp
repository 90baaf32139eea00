#include "hsl/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace hsl {

namespace {

using nlohmann::json;

void validate_range(double v, const std::string& text) {
  if (!(v >= 0.0 && v < 1.0))
    throw std::invalid_argument("delta outside [0, 1): " + text);
}

std::string csv_escape(const std::string& s) {
  bool needs = s.find_first_of(",\"\n") != std::string::npos;
  if (!needs) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

json config_to_json(const RunConfig& c) {
  json deltas = json::array();
  for (const DeltaSpec& d : c.deltas) deltas.push_back(d.spelling);
  return json{{"suites", c.suites},
              {"deltas", deltas},
              {"dim", c.dim},
              {"samples", c.samples},
              {"points", c.points},
              {"seed", c.seed},
              {"exact", c.exact},
              {"tolerance", double_repr(c.tolerance)},
              {"format", c.format},
              {"workers", c.workers}};
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.suites = j.at("suites").get<std::vector<std::string>>();
  for (const auto& d : j.at("deltas")) c.deltas.push_back(parse_delta(d.get<std::string>()));
  c.dim = j.at("dim").get<int>();
  c.samples = j.at("samples").get<std::uint64_t>();
  c.points = j.at("points").get<std::uint64_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.exact = j.at("exact").get<bool>();
  c.tolerance = std::stod(j.at("tolerance").get<std::string>());
  c.format = j.at("format").get<std::string>();
  c.workers = j.at("workers").get<int>();
  return c;
}

CheckStatus status_from_string(const std::string& s) {
  if (s == "PASS") return CheckStatus::PASS;
  if (s == "FAIL") return CheckStatus::FAIL;
  if (s == "INCONCLUSIVE") return CheckStatus::INCONCLUSIVE;
  throw std::runtime_error("unknown status: " + s);
}

}  // namespace

DeltaSpec DeltaSpec::from_rational(long long p, long long q) {
  if (q <= 0) throw std::invalid_argument("delta denominator must be positive");
  DeltaSpec d;
  d.exact = true;
  d.num = p;
  d.den = q;
  d.value = double(p) / double(q);
  d.spelling = std::to_string(p) + "/" + std::to_string(q);
  validate_range(d.value, d.spelling);
  return d;
}

DeltaSpec DeltaSpec::from_double(double v) {
  DeltaSpec d;
  d.exact = false;
  d.value = v;
  d.spelling = double_repr(v);
  validate_range(v, d.spelling);
  return d;
}

DeltaSpec parse_delta(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty delta");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    long long p = 0, q = 0;
    auto r1 = std::from_chars(text.data(), text.data() + slash, p);
    auto r2 = std::from_chars(text.data() + slash + 1, text.data() + text.size(), q);
    if (r1.ec != std::errc{} || r1.ptr != text.data() + slash ||
        r2.ec != std::errc{} || r2.ptr != text.data() + text.size() || q <= 0)
      throw std::invalid_argument("malformed rational delta: " + text);
    DeltaSpec d = DeltaSpec::from_rational(p, q);
    d.spelling = text;
    return d;
  }
  // A bare integer is still exact; anything else is a double spelling.
  {
    long long p = 0;
    auto r = std::from_chars(text.data(), text.data() + text.size(), p);
    if (r.ec == std::errc{} && r.ptr == text.data() + text.size()) {
      DeltaSpec d = DeltaSpec::from_rational(p, 1);
      d.spelling = text;
      return d;
    }
  }
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed delta: " + text);
  }
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite delta: " + text);
  DeltaSpec d = DeltaSpec::from_double(v);
  d.spelling = text;
  return d;
}

std::uint64_t SuiteResult::count(CheckStatus s) const {
  std::uint64_t n = 0;
  for (const CheckResult& c : checks)
    if (c.status == s) ++n;
  return n;
}

bool SuiteResult::pass() const { return count(CheckStatus::FAIL) == 0; }

bool VerificationReport::all_pass() const {
  for (const SuiteResult& s : suites)
    if (!s.pass()) return false;
  return true;
}

std::string double_repr(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string report_to_json(const VerificationReport& rep) {
  json suites = json::array();
  for (const SuiteResult& s : rep.suites) {
    json checks = json::array();
    for (const CheckResult& c : s.checks) {
      checks.push_back(json{{"id", c.id},
                            {"inputs", c.inputs},
                            {"expected", c.expected},
                            {"observed", c.observed},
                            {"residual", double_repr(c.residual)},
                            {"status", to_string(c.status)}});
    }
    suites.push_back(json{
        {"name", s.name},
        {"checks", checks},
        {"summary",
         json{{"pass", s.count(CheckStatus::PASS)},
              {"fail", s.count(CheckStatus::FAIL)},
              {"inconclusive", s.count(CheckStatus::INCONCLUSIVE)},
              {"wall_ms", s.wall_ms}}}});
  }
  json root{{"schema_version", rep.schema_version},
            {"config", config_to_json(rep.config)},
            {"suites", suites}};
  return root.dump(2) + "\n";
}

std::string report_to_csv(const VerificationReport& rep) {
  std::string out = "suite,id,status,residual,expected,observed,inputs\n";
  for (const SuiteResult& s : rep.suites) {
    for (const CheckResult& c : s.checks) {
      std::string inputs;
      for (const auto& [k, v] : c.inputs) {
        if (!inputs.empty()) inputs += ';';
        inputs += k + "=" + v;
      }
      out += csv_escape(s.name) + ',' + csv_escape(c.id) + ',' +
             to_string(c.status) + ',' + double_repr(c.residual) + ',' +
             csv_escape(c.expected) + ',' + csv_escape(c.observed) + ',' +
             csv_escape(inputs) + '\n';
    }
  }
  return out;
}

void write_report_file(const VerificationReport& rep, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open report file: " + path);
  f << (rep.config.format == "csv" ? report_to_csv(rep) : report_to_json(rep));
  f.flush();
  if (!f) throw std::runtime_error("cannot write report file: " + path);
}

VerificationReport report_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("report parse failure: ") + e.what());
  }
  VerificationReport rep;
  try {
    rep.schema_version = root.at("schema_version").get<int>();
    if (rep.schema_version != kReportSchemaVersion)
      throw std::runtime_error("unsupported report schema_version " +
                               std::to_string(rep.schema_version));
    rep.config = config_from_json(root.at("config"));
    for (const auto& js : root.at("suites")) {
      SuiteResult s;
      s.name = js.at("name").get<std::string>();
      if (js.contains("summary") && js.at("summary").contains("wall_ms"))
        s.wall_ms = js.at("summary").at("wall_ms").get<double>();
      for (const auto& jc : js.at("checks")) {
        CheckResult c;
        c.id = jc.at("id").get<std::string>();
        c.inputs = jc.at("inputs").get<std::map<std::string, std::string>>();
        c.expected = jc.at("expected").get<std::string>();
        c.observed = jc.at("observed").get<std::string>();
        c.residual = std::stod(jc.at("residual").get<std::string>());
        c.status = status_from_string(jc.at("status").get<std::string>());
        s.checks.push_back(std::move(c));
      }
      rep.suites.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("report field failure: ") + e.what());
  }
  return rep;
}

const CheckResult* find_check(const VerificationReport& rep, const std::string& id) {
  for (const SuiteResult& s : rep.suites)
    for (const CheckResult& c : s.checks)
      if (c.id == id) return &c;
  return nullptr;
}

}  // namespace hsl
