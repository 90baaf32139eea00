// Python bindings for the float-level operations and the suite runner.
// Exact rational verification stays on the C++ side; the module exposes
// enough to sample sites, build Hessians, and drive the named suites.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hsl/check_status.hpp"
#include "hsl/factorization.hpp"
#include "hsl/functional.hpp"
#include "hsl/hessian.hpp"
#include "hsl/hyperbolicity.hpp"
#include "hsl/report.hpp"
#include "hsl/spectra.hpp"
#include "hsl/suites.hpp"
#include "hsl/sym_matrix.hpp"
#include "hsl/vec12.hpp"

namespace py = pybind11;

namespace {

hsl::V12<double> to_v12(const std::array<double, 12>& x) {
  hsl::V12<double> v;
  for (std::size_t i = 0; i < 12; ++i) v[i] = x[i];
  return v;
}

std::vector<std::vector<double>> to_rows(const hsl::SymMatrix<double>& m) {
  std::vector<std::vector<double>> rows(m.size(), std::vector<double>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) rows[i][j] = m.at(i, j);
  return rows;
}

hsl::SymMatrix<double> from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  hsl::SymMatrix<double> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw std::invalid_argument("matrix must be square");
    for (std::size_t j = i; j < n; ++j) {
      if (std::abs(rows[i][j] - rows[j][i]) > 1e-12 * (1.0 + std::abs(rows[i][j])))
        throw std::invalid_argument("matrix must be symmetric");
      m.set(i, j, rows[i][j]);
    }
  }
  return m;
}

py::dict check_to_dict(const hsl::CheckResult& c) {
  py::dict d;
  d["id"] = c.id;
  d["status"] = std::string(to_string(c.status));
  d["expected"] = c.expected;
  d["observed"] = c.observed;
  d["residual"] = c.residual;
  py::dict in;
  for (const auto& [k, v] : c.inputs) in[py::str(k)] = v;
  d["inputs"] = in;
  return d;
}

double norm_of(const std::array<double, 12>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

PYBIND11_MODULE(_hsl, m) {
  m.doc() =
      "verification laboratory for the homogeneous cubic-over-radius "
      "solutions of uniformly elliptic Hessian and Isaacs equations";
  m.attr("__version__") = "0.1.0";

  m.def(
      "cubic_form",
      [](const std::array<double, 12>& x) {
        double r = norm_of(x);
        if (r == 0.0) return 0.0;
        hsl::V12<double> u = to_v12(x);
        for (std::size_t i = 0; i < 12; ++i) u[i] /= r;
        return r * r * r * hsl::w_value_at_unit(u);
      },
      py::arg("x"), "cubic form P(x) on R^12, homogeneous of degree 3");

  m.def(
      "w_delta",
      [](const std::array<double, 12>& x, double delta) {
        if (delta < 0.0 || delta >= 1.0)
          throw std::invalid_argument("delta must lie in [0, 1)");
        double r = norm_of(x);
        if (r == 0.0) return 0.0;
        hsl::V12<double> u = to_v12(x);
        for (std::size_t i = 0; i < 12; ++i) u[i] /= r;
        return std::pow(r, 2.0 - delta) * hsl::w_value_at_unit(u);
      },
      py::arg("x"), py::arg("delta"),
      "the solution P(x) / |x|^(1+delta), written as |x|^(2-delta) P(x/|x|)");

  m.def(
      "invariants",
      [](const std::array<double, 12>& x) {
        double r = norm_of(x);
        if (r == 0.0) throw std::invalid_argument("zero vector has no invariants");
        hsl::V12<double> u = to_v12(x);
        for (std::size_t i = 0; i < 12; ++i) u[i] /= r;
        hsl::Invariants<double> inv = hsl::invariants(u);
        py::dict d;
        d["W"] = inv.W;
        d["m2"] = inv.m2;
        d["n2"] = inv.n2;
        d["L"] = inv.L;
        d["M"] = inv.M;
        return d;
      },
      py::arg("x"),
      "rotation invariants (W, m2, n2, L, M) of the direction x / |x|");

  m.def(
      "hessian",
      [](const std::array<double, 12>& x, double delta) {
        if (delta < 0.0 || delta >= 1.0)
          throw std::invalid_argument("delta must lie in [0, 1)");
        if (norm_of(x) == 0.0)
          throw std::invalid_argument("hessian is singular at the origin");
        return to_rows(hsl::hessian(to_v12(x), delta));
      },
      py::arg("x"), py::arg("delta"),
      "Hessian of w_delta at x, as a 12 x 12 nested list");

  m.def(
      "eigenvalues",
      [](const std::vector<std::vector<double>>& rows) {
        return hsl::eigenvalues(from_rows(rows));
      },
      py::arg("matrix"), "eigenvalues of a symmetric matrix, non-increasing");

  m.def("site_from_invariants",
        [](double r0, double mm, double nn) {
          hsl::V12<double> v = hsl::site_from_invariants(r0, mm, nn);
          std::array<double, 12> out{};
          for (std::size_t i = 0; i < 12; ++i) out[i] = v[i];
          return out;
        },
        py::arg("r0"), py::arg("m"), py::arg("n"),
        "unit-sphere site realizing the given invariants");

  m.def("c_delta", &hsl::c_delta, py::arg("delta"),
        "ellipticity ratio bound (26 + 3 delta - delta^2) / (1 - delta)");

  m.def("cone_lambda", &hsl::cone_lambda, py::arg("delta"), py::arg("dim"),
        "cone constant used by the supporting functional");

  m.def(
      "interlacing",
      [](double r0, double mm, double nn, double delta, double slack) {
        hsl::InterlacingCheck c =
            hsl::verify_interlacing_at(r0, mm, nn, delta, slack);
        py::dict d;
        d["pass"] = c.pass;
        d["min_slack"] = c.min_slack;
        d["mu"] = c.mu;
        d["nu"] = c.nu;
        d["float_gap"] = c.float_gap;
        return d;
      },
      py::arg("r0"), py::arg("m"), py::arg("n"), py::arg("delta"),
      py::arg("slack") = 1e-10,
      "exact interlacing check at the site with the given invariants");

  m.def("suite_names", [] { return hsl::suite_names(); },
        "the eight verification suites, in canonical order");

  m.def(
      "run_suite",
      [](const std::string& name, const std::vector<std::string>& deltas,
         int dim, std::uint64_t samples, std::uint64_t points,
         std::uint64_t seed, double tolerance, int workers) {
        hsl::RunConfig cfg;
        cfg.suites = {name};
        for (const std::string& t : deltas)
          cfg.deltas.push_back(hsl::parse_delta(t));
        cfg.dim = dim;
        cfg.samples = samples;
        cfg.points = points;
        cfg.seed = seed;
        cfg.tolerance = tolerance;
        cfg.workers = workers;
        hsl::SuiteResult s = hsl::run_suite(name, cfg);
        py::dict d;
        d["name"] = s.name;
        d["wall_ms"] = s.wall_ms;
        d["pass"] = s.pass();
        py::list checks;
        for (const hsl::CheckResult& c : s.checks) checks.append(check_to_dict(c));
        d["checks"] = checks;
        return d;
      },
      py::arg("name"), py::kw_only(),
      py::arg("deltas") = std::vector<std::string>{}, py::arg("dim") = 12,
      py::arg("samples") = std::uint64_t(1000),
      py::arg("points") = std::uint64_t(100),
      py::arg("seed") = std::uint64_t(0x48534c32303236ULL),
      py::arg("tolerance") = 1e-9, py::arg("workers") = 0,
      "run one named suite and return its checks as dicts");

  m.def(
      "run_check",
      [](const std::map<std::string, std::string>& inputs, int workers) {
        hsl::CheckResult rec;
        rec.inputs = inputs;
        auto it = inputs.find("kind");
        rec.id = it == inputs.end() ? "" : it->second;
        return check_to_dict(hsl::run_recorded_check(rec, workers));
      },
      py::arg("inputs"), py::arg("workers") = 0,
      "dispatch a single check from its string-keyed inputs map");
}
