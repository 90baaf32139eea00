#include "hsl/suites.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <future>
#include <initializer_list>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hsl/factorization.hpp"
#include "hsl/functional.hpp"
#include "hsl/hessian.hpp"
#include "hsl/hyperbolicity.hpp"
#include "hsl/isaacs.hpp"
#include "hsl/poly_families.hpp"
#include "hsl/rational.hpp"
#include "hsl/rng.hpp"
#include "hsl/spectra.hpp"
#include "hsl/sym_matrix.hpp"
#include "hsl/vec12.hpp"

namespace hsl {

namespace {

using Inputs = std::map<std::string, std::string>;

constexpr double kWBar = 0.19245008972987525;  // 1/(3 sqrt 3)
constexpr std::uint64_t kNoIndex = ~std::uint64_t(0);

int resolve_workers(int requested) {
  if (requested > 0) return std::min(requested, 64);
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 4 : int(std::min(hc, 16u));
}

// Order-independent aggregate over instance indices. Every instance derives
// its generator from its own index, so the chunking below only schedules.
struct Agg {
  std::uint64_t passes = 0, fails = 0, inconclusive = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  double max_resid = 0.0;
  std::uint64_t first_bad = kNoIndex;

  void note(std::uint64_t i, bool ok) {
    if (ok) {
      ++passes;
    } else {
      ++fails;
      first_bad = std::min(first_bad, i);
    }
  }
  void merge(const Agg& o) {
    passes += o.passes;
    fails += o.fails;
    inconclusive += o.inconclusive;
    min_slack = std::min(min_slack, o.min_slack);
    max_resid = std::max(max_resid, o.max_resid);
    first_bad = std::min(first_bad, o.first_bad);
  }
};

template <class F>
Agg parallel_scan(std::uint64_t n, int workers, F body) {
  int w = std::max(1, workers);
  if (n > 0) w = int(std::min<std::uint64_t>(std::uint64_t(w), n));
  if (w == 1 || n < 32) {
    Agg a;
    for (std::uint64_t i = 0; i < n; ++i) body(i, a);
    return a;
  }
  std::vector<Agg> parts(static_cast<std::size_t>(w));
  std::vector<std::thread> threads;
  std::exception_ptr err;
  std::mutex err_mu;
  std::uint64_t chunk = (n + std::uint64_t(w) - 1) / std::uint64_t(w);
  for (int t = 0; t < w; ++t) {
    threads.emplace_back([&, t]() {
      std::uint64_t lo = std::uint64_t(t) * chunk;
      std::uint64_t hi = std::min(n, lo + chunk);
      try {
        for (std::uint64_t i = lo; i < hi; ++i) body(i, parts[std::size_t(t)]);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  if (err) std::rethrow_exception(err);
  Agg a;
  for (const Agg& p : parts) a.merge(p);
  return a;
}

const std::string& req(const Inputs& in, const char* key) {
  auto it = in.find(key);
  if (it == in.end())
    throw std::runtime_error(std::string("check inputs missing key: ") + key);
  return it->second;
}

std::uint64_t in_u64(const Inputs& in, const char* key) {
  return std::stoull(req(in, key));
}
int in_int(const Inputs& in, const char* key) { return std::stoi(req(in, key)); }
double in_dbl(const Inputs& in, const char* key) { return std::stod(req(in, key)); }
DeltaSpec in_delta(const Inputs& in, const char* key) {
  return parse_delta(req(in, key));
}

Rational rational_of_spec(const DeltaSpec& d) {
  if (d.exact) return frac(long(d.num), long(d.den));
  return rational_of_double(d.value);
}

Rational random_rational(Rng& g, long denom = 4) {
  return frac(long(g.below(std::uint64_t(2 * denom + 1))) - denom, denom);
}

// Exact unit site from a stereographic chart with denominator-4 entries.
V12<Rational> rational_unit_site(Rng& g) {
  std::array<Rational, 11> u;
  for (auto& ui : u) ui = random_rational(g);
  return sphere_point_from_chart(u);
}

// Chart supported on {0,3,4,7,8} keeps coordinates 2,3,6,7,10,11 zero.
V12<Rational> rational_complex_site(Rng& g) {
  std::array<Rational, 11> u;
  u.fill(Rational(0));
  for (std::size_t i : {0, 3, 4, 7, 8}) u[i] = random_rational(g);
  return sphere_point_from_chart(u);
}

// Exact unit site inside the coordinate hyperplane x_11 = 0.
V12<Rational> rational_hyperplane_site(Rng& g) {
  std::array<Rational, 3> u = {random_rational(g), random_rational(g),
                               random_rational(g)};
  Quat<Rational> q = unit_quaternion_from_chart(u);
  return canonical_site(q[0], q[1], q[2], q[3]);
}

V12<double> random_unit(Rng& g, bool zero_last = false) {
  for (;;) {
    V12<double> a;
    for (std::size_t k = 0; k < 12; ++k) a[k] = g.gaussian();
    if (zero_last) a[11] = 0.0;
    if (norm2(a) > 1e-12) return normalized(a);
  }
}

std::string fmt_count(std::uint64_t fails, std::uint64_t total,
                      std::uint64_t first_bad) {
  if (fails == 0) return std::to_string(total) + "/" + std::to_string(total) + " ok";
  return std::to_string(fails) + " failures out of " + std::to_string(total) +
         ", first at index " + std::to_string(first_bad);
}

// ---------------------------------------------------------------------------
// factorization

CheckResult run_factorization_coefficients(const Inputs& in, int workers) {
  const Rational delta = rational_of_spec(in_delta(in, "delta"));
  const std::uint64_t points = in_u64(in, "points");
  const std::uint64_t seed = in_u64(in, "seed");
  Agg a = parallel_scan(points, workers, [&](std::uint64_t i, Agg& acc) {
    Rng g(Rng::subseed(seed, i));
    V12<Rational> site = rational_unit_site(g);
    FactorizationCheck c = verify_factorization(site, delta);
    bool ok = c.pass;
    for (const Rational& r : c.residuals) ok = ok && r == Rational(0);
    acc.note(i, ok);
  });
  CheckResult r;
  r.inputs = in;
  r.expected = "charpoly(H_delta) = p1^2 p2 with exactly zero coefficient residuals";
  r.observed = fmt_count(a.fails, points, a.first_bad);
  r.residual = double(a.fails);
  r.status = a.fails == 0 ? CheckStatus::PASS : CheckStatus::FAIL;
  return r;
}

CheckResult run_factorization_blocks(const Inputs& in, int workers) {
  const Rational delta = rational_of_spec(in_delta(in, "delta"));
  const std::uint64_t points = in_u64(in, "points");
  const std::uint64_t seed = in_u64(in, "seed");
  Agg a = parallel_scan(points, workers, [&](std::uint64_t i, Agg& acc) {
    Rng g(Rng::subseed(seed, i));
    V12<Rational> site = rational_complex_site(g);
    bool ok = is_complex_site(site) && verify_block_factorization(site, delta).pass;
    acc.note(i, ok);
  });
  CheckResult r;
  r.inputs = in;
  r.expected = "block split at complex sites carries the p1^2 p2 factorization";
  r.observed = fmt_count(a.fails, points, a.first_bad);
  r.residual = double(a.fails);
  r.status = a.fails == 0 ? CheckStatus::PASS : CheckStatus::FAIL;
  return r;
}

// ---------------------------------------------------------------------------
// interlacing

CheckResult run_interlacing_chain(const Inputs& in, int workers) {
  const double delta = in_delta(in, "delta").value;
  const std::uint64_t sites = in_u64(in, "sites");
  const std::uint64_t seed = in_u64(in, "seed");
  const double slack = in_dbl(in, "slack");
  Agg a = parallel_scan(sites, workers, [&](std::uint64_t i, Agg& acc) {
    Rng g(Rng::subseed(seed, i));
    // Dyadic invariants inside the open ball keep the exact coefficients
    // small, so the Sturm isolation behind the verifier stays fast.
    double r0, m, n;
    for (;;) {
      r0 = std::ldexp(double(std::int64_t(g.below(4097)) - 2048), -12);
      m = std::ldexp(double(g.below(4096)), -12);
      n = std::ldexp(double(g.below(4096)), -12);
      if (r0 * r0 + m * m + n * n < 1.0) break;
    }
    InterlacingCheck c = verify_interlacing_at(r0, m, n, delta, slack);
    acc.note(i, c.pass);
    acc.min_slack = std::min(acc.min_slack, c.min_slack);
    acc.max_resid = std::max(acc.max_resid, c.float_gap);
  });
  CheckResult r;
  r.inputs = in;
  r.expected = "mu1 >= nu1 >= nu2 >= nu3 >= mu2 >= nu4 >= nu5 >= nu6 >= mu3, slack >= -" +
               double_repr(slack);
  r.observed = fmt_count(a.fails, sites, a.first_bad) +
               "; min chain slack " + double_repr(a.min_slack) +
               ", max eigensolver gap " + double_repr(a.max_resid);
  r.residual = std::max(0.0, -a.min_slack);
  r.status = a.fails == 0 ? CheckStatus::PASS : CheckStatus::FAIL;
  return r;
}

CheckResult run_interlacing_intervals(const Inputs& in, int) {
  const double slack = in_dbl(in, "slack");
  V12<Rational> site =
      canonical_site(frac(1, 2), frac(1, 2), frac(1, 2), frac(1, 2));
  InterlacingCheck c = verify_interlacing(site, Rational(0), slack);
  // Shifted roots (add W = 1/8) against the frozen interval table.
  const double W = 0.125;
  const double roots[9] = {c.mu[0] + W, c.mu[1] + W, c.mu[2] + W,
                           c.nu[0] + W, c.nu[1] + W, c.nu[2] + W,
                           c.nu[3] + W, c.nu[4] + W, c.nu[5] + W};
  const double lo[9] = {0.83, 0.26, -1.11, 0.70, 0.54, 0.42, -0.39, -0.71, -0.96};
  const double hi[9] = {0.84, 0.27, -1.10, 0.71, 0.55, 0.43, -0.38, -0.70, -0.95};
  double outside = 0.0;
  int inside = 0;
  for (int k = 0; k < 9; ++k) {
    if (roots[k] >= lo[k] && roots[k] <= hi[k]) ++inside;
    outside = std::max({outside, lo[k] - roots[k], roots[k] - hi[k]});
  }
  CheckResult r;
  r.inputs = in;
  r.expected = "all nine shifted roots at (r0,m,n)=(1/2,1/2,1/2) inside the printed brackets";
  r.observed = std::to_string(inside) + "/9 roots inside; min chain slack " +
               double_repr(c.min_slack);
  r.residual = std::max(outside, 0.0);
  r.status = c.pass && inside == 9 ? CheckStatus::PASS : CheckStatus::FAIL;
  return r;
}

// ---------------------------------------------------------------------------
// position

CheckResult run_position_lambda67(const Inputs& in, int workers) {
  const std::uint64_t sites = in_u64(in, "sites");
  const std::uint64_t seed = in_u64(in, "seed");
  const double tol = in_dbl(in, "tol");
  Agg a = parallel_scan(sites, workers, [&](std::uint64_t i, Agg& acc) {
    Rng g(Rng::subseed(seed, i));
    V12<double> site = random_unit(g);
    Lambda67Check c = verify_lambda67(site, tol);
    acc.note(i, c.pass);
    acc.max_resid = std::max(acc.max_resid, c.deviation);
  });
  CheckResult r;
  r.inputs = in;
  r.expected = "lambda_6 = lambda_7 = (2/sqrt 3) cos((arccos(3 sqrt3 W) + pi)/3) - W within " +
               double_repr(tol);
  r.observed = fmt_count(a.fails, sites, a.first_bad) + "; max deviation " +
               double_repr(a.max_resid);
  r.residual = a.max_resid;
  r.status = a.fails == 0 ? CheckStatus::PASS : CheckStatus::FAIL;
  return r;
}

CheckResult run_position_multiplicity(const Inputs& in, int workers) {
  const Rational delta = rational_of_spec(in_delta(in, "delta"));
  const std::uint64_t points = in_u64(in, "points");
  const std::uint64_t seed = in_u64(in, "seed");
  Agg a = parallel_scan(points, workers, [&](std::uint64_t i, Agg& acc) {
    Rng g(Rng::subseed(seed, i));
    MultiplicityCheck c = verify_double_root_multiplicity(rational_unit_site(g), delta);
    acc.note(i, c.pass && c.p1_squared_divides && c.p1_divides_derivative);
  });
  CheckResult r;
  r.inputs = in;
  r.expected = "p1^2 divides charpoly and p1 divides its derivative, exactly";
  r.observed = fmt_count(a.fails, points, a.first_bad);
  r.residual = double(a.fails);
  r.status = a.fails == 0 ? CheckStatus::PASS : CheckStatus::FAIL;
  return r;
}

CheckResult run_position_probes(const Inputs& in, int) {
  const double tol = in_dbl(in, "tol");
  const Rational half = frac(1, 2);
  const Rational c3 = rational_of_double(1.0 / std::sqrt(3.0));
  struct Probe {
    Rational r0, m, n;
    RegionLabel region;
    int lo, hi;
  };
  const Probe probes[3] = {
      {frac(1, 20), frac(1, 20), frac(1, 20), RegionLabel::B_MINUS, 6, 7},
      {c3, c3, c3 - frac(1, 100), RegionLabel::B_PLUS, 5, 6},
      {-c3, c3, c3 - frac(1, 100), RegionLabel::B_PLUS, 7, 8}};
  std::string got;
  bool ok = true;
  double dev = 0.0;
  for (const Probe& p : probes) {
    PositionCheck c = classify_and_verify_position(p.r0, p.m, p.n, half, tol);
    ok = ok && c.pass && c.region == p.region && c.mu2_positions[0] == p.lo &&
         c.mu2_positions[1] == p.hi;
    dev = std::max(dev, c.mu2_deviation);
    if (!got.empty()) got += ", ";
    got += "(" + std::to_string(c.mu2_positions[0]) + "," +
           std::to_string(c.mu2_positions[1]) + ")";
  }
  CheckResult r;
  r.inputs = in;
  r.expected = "double-eigenvalue positions (6,7), (5,6), (7,8) at the three probes";
  r.observed = got + "; max mu2 deviation " + double_repr(dev);
  r.residual = dev;
  r.status = ok ? CheckStatus::PASS : CheckStatus::FAIL;
  return r;
}

CheckResult run_position_w0(const Inputs& in, int) {
  const double tol = in_dbl(in, "tol");
  const double w00 = w0_threshold(0.0);
  const double target = 1.0 / (3.0 * std::sqrt(3.0));
  double resid = std::abs(w00 - target);
  bool ok = resid <= tol;
  double worst_range = 0.0;
  for (int k = 0; k < 10; ++k) {
    double d = 0.1 * double(k);
    double w0 = w0_threshold(d);
    ok = ok && w0 > 0.0 && w0 <= target + 1e-12;
    worst_range = std::max(worst_range, w0 - target);
  }
  CheckResult r;
  r.inputs = in;
  r.expected = "W_0(0) = 1/(3 sqrt 3) within " + double_repr(tol) +
               "; W_0(delta) in (0, 1/(3 sqrt 3)] on the delta grid";
  r.observed = "W_0(0) = " + double_repr(w00) + ", |W_0 - 1/(3 sqrt 3)| = " +
               double_repr(resid);
  r.residual = resid;
  r.status = ok ? CheckStatus::PASS : CheckStatus::FAIL;
  return r;
}

// ---------------------------------------------------------------------------
// resultant

CheckResult run_resultant_identity(const Inputs& in, int workers) {
  const Rational delta = rational_of_spec(in_delta(in, "delta"));
  const std::uint64_t points = in_u64(in, "points");
  const std::uint64_t seed = in_u64(in, "seed");

  Agg a = parallel_scan(points, workers, [&](std::uint64_t i, Agg& acc) {
    Rng g(Rng::subseed(seed, i));
    Rational r0, m, n;
    for (;;) {
      r0 = frac(long(g.below(39)) - 19, 20);
      m = frac(long(g.below(19)) + 1, 20);
      n = frac(long(g.below(19)) + 1, 20);
      if (r0 * r0 + m * m + n * n < Rational(1)) break;
    }
    ResultantCheck c = verify_resultant_identity(r0, m, n, delta);
    acc.note(i, c.pass && c.matches_closed);
  });

  // Exact boundary tuples: invariant-sphere quadruples and a coordinate
  // plane site; the resultant must vanish on both.
  bool boundary_ok = true;
  const long quads[6][4] = {{1, 2, 2, 3},  {2, 3, 6, 7},  {1, 4, 8, 9},
                            {4, 4, 7, 9},  {2, 6, 9, 11}, {3, 4, 12, 13}};
  for (const auto& q : quads) {
    ResultantCheck c = verify_resultant_identity(frac(q[0], q[3]), frac(q[1], q[3]),
                                                 frac(q[2], q[3]), delta);
    boundary_ok = boundary_ok && c.pass && c.sign == 0;
  }
  {
    ResultantCheck c =
        verify_resultant_identity(frac(1, 3), Rational(0), frac(1, 2), delta);
    boundary_ok = boundary_ok && c.pass && c.sign == 0;
  }

  CheckResult r;
  r.inputs = in;
  r.expected = "Sylvester(p1, p2) = 16 (M - W^2)^3 R(W, delta) exactly; negative inside "
               "the ball off the coordinate planes, zero on the boundary set";
  r.observed = fmt_count(a.fails, points, a.first_bad) +
               std::string(boundary_ok ? "; boundary sign zero"
                                       : "; boundary sign nonzero");
  r.residual = double(a.fails) + (boundary_ok ? 0.0 : 1.0);
  r.status = a.fails == 0 && boundary_ok ? CheckStatus::PASS : CheckStatus::FAIL;
  return r;
}

// ---------------------------------------------------------------------------
// hyperbolicity

CheckResult run_hyperbolicity_ratio(const Inputs& in, int workers) {
  const double delta = in_delta(in, "delta").value;
  const int dim = in_int(in, "dim");
  const std::uint64_t samples = in_u64(in, "samples");
  const std::uint64_t seed = in_u64(in, "seed");
  const double slack = in_dbl(in, "slack");
  RatioCertificate cert = certify_ratio(delta, dim, samples, seed, workers, slack);
  const double c_bound = dim == 12 ? c_delta(delta) : kC11;
  CheckResult r;
  r.inputs = in;
  r.expected = "Lambda_1 / (-Lambda_" + std::to_string(dim) + ") in [1/C, C], C = " +
               double_repr(c_bound) + ", slack " + double_repr(slack);
  r.observed = "ratio in [" + double_repr(cert.min_ratio) + ", " +
               double_repr(cert.max_ratio) + "] over " +
               std::to_string(cert.samples) + " differences, " +
               std::to_string(cert.violations) + " violations (" +
               std::to_string(cert.zero_flagged) + " zero draws excluded)";
  r.residual = std::max(0.0, -cert.worst_slack);
  r.status = cert.pass ? CheckStatus::PASS : CheckStatus::FAIL;
  return r;
}

CheckResult run_hyperbolicity_trace_exact(const Inputs& in, int workers) {
  const DeltaSpec dspec = in_delta(in, "delta");
  const Rational delta = rational_of_spec(dspec);
  const int dim = in_int(in, "dim");
  const std::uint64_t points = in_u64(in, "points");
  const std::uint64_t seed = in_u64(in, "seed");
  if (dim == 11 && dspec.value != 0.0)
    throw std::invalid_argument("restricted trace identity needs delta = 0");
  Agg a = parallel_scan(points, workers, [&](std::uint64_t i, Agg& acc) {
    Rng g(Rng::subseed(seed, i));
    if (dim == 12) {
      V12<Rational> site = rational_unit_site(g);
      SymMatrix<Rational> h = hessian_at_unit(site, delta);
      Rational w = w_value_at_unit(site);
      acc.note(i, h.trace() == hessian_trace_closed_form(w, delta));
    } else {
      V12<Rational> site = rational_hyperplane_site(g);
      V12<Rational> other = rational_hyperplane_site(g);
      Rational k = frac(long(g.below(5)) + 1, long(g.below(3)) + 1);
      acc.note(i, trace_identity_restricted_exact(site, other, k));
    }
  });
  CheckResult r;
  r.inputs = in;
  r.expected = dim == 12
                   ? std::string("Tr H_delta(a) = -(1+d)(15-d) P(a), exact")
                   : std::string("restricted trace factor 14 identity, exact");
  r.observed = fmt_count(a.fails, points, a.first_bad);
  r.residual = double(a.fails);
  r.status = a.fails == 0 ? CheckStatus::PASS : CheckStatus::FAIL;
  return r;
}

CheckResult run_hyperbolicity_main_lemma(const Inputs& in, int workers) {
  const std::uint64_t samples = in_u64(in, "samples");
  const std::uint64_t seed = in_u64(in, "seed");
  const double tol = in_dbl(in, "tol");
  Agg a = parallel_scan(samples, workers, [&](std::uint64_t i, Agg& acc) {
    Rng g(Rng::subseed(seed, i));
    V12<double> x = random_unit(g);
    V12<double> y = random_unit(g);
    std::vector<std::vector<double>> o = haar_orthogonal(12, g);
    MainLemmaCheck c = main_lemma_display(x, y, o, tol);
    acc.note(i, c.pass);
    acc.max_resid = std::max(acc.max_resid, c.trace_residual);
    acc.min_slack = std::min({acc.min_slack, c.weyl_slack, c.lambda6_slack,
                              c.cos_bound_slack});
  });
  CheckResult r;
  r.inputs = in;
  r.expected = "trace display, Weyl-side inequality and cos bound hold for sampled (a,b,O)";
  r.observed = fmt_count(a.fails, samples, a.first_bad) + "; max trace residual " +
               double_repr(a.max_resid) + ", min slack " + double_repr(a.min_slack);
  r.residual = a.max_resid;
  r.status = a.fails == 0 ? CheckStatus::PASS : CheckStatus::FAIL;
  return r;
}

CheckResult run_hyperbolicity_mu_bound(const Inputs& in, int workers) {
  const std::uint64_t samples = in_u64(in, "samples");
  const std::uint64_t seed = in_u64(in, "seed");
  const double slack = in_dbl(in, "slack");
  Agg a = parallel_scan(samples, workers, [&](std::uint64_t i, Agg& acc) {
    Rng g(Rng::subseed(seed, i));
    double w = g.uniform(-kWBar, kWBar);
    double wbar = g.uniform(-kWBar, kWBar);
    double k = std::exp(g.uniform(std::log(0.25), std::log(4.0)));
    double delta = g.uniform(0.0, 0.9);
    if (std::abs(k - 1.0) < 1e-12 && std::abs(w - wbar) < 1e-12)
      wbar += std::ldexp(1.0, -20);
    MuDifferenceCheck c = mu_difference_bound(w, wbar, k, delta, slack);
    acc.note(i, c.pass);
    acc.min_slack = std::min({acc.min_slack, c.ratio - c.epsilon,
                              1.0 / c.epsilon - c.ratio});
  });
  CheckResult r;
  r.inputs = in;
  r.expected = "eps <= mu_+/(-mu_-) <= 1/eps with eps = (1-d)/(5+d)";
  r.observed = fmt_count(a.fails, samples, a.first_bad) + "; min slack " +
               double_repr(a.min_slack);
  r.residual = std::max(0.0, -a.min_slack);
  r.status = a.fails == 0 ? CheckStatus::PASS : CheckStatus::FAIL;
  return r;
}

CheckResult run_hyperbolicity_claim(const Inputs& in, int workers) {
  const std::uint64_t samples = in_u64(in, "samples");
  const std::uint64_t seed = in_u64(in, "seed");
  Agg a = parallel_scan(samples, workers, [&](std::uint64_t i, Agg& acc) {
    Rng g(Rng::subseed(seed, i));
    double l1, l2, l3, t;
    for (;;) {
      double v[3] = {g.gaussian(), g.gaussian(), g.gaussian()};
      std::sort(v, v + 3, std::greater<double>());
      t = v[0] + v[1] + v[2];
      if (t < 0.0) {
        double w[3] = {-v[2], -v[1], -v[0]};
        v[0] = w[0];
        v[1] = w[1];
        v[2] = w[2];
        t = -t;
      }
      if (v[2] < 0.0) {
        l1 = v[0];
        l2 = v[1];
        l3 = v[2];
        break;
      }
    }
    double h = t > 0.0 ? (-l3 / t) * (0.05 + 0.9 * g.uniform())
                       : g.uniform(0.1, 2.0);
    acc.note(i, claim_check(l1, l2, l3, h));
  });
  CheckResult r;
  r.inputs = in;
  r.expected = "-l1/l3 in [h/(2h+1), (2h+1)/h] on admissible triples";
  r.observed = fmt_count(a.fails, samples, a.first_bad);
  r.residual = double(a.fails);
  r.status = a.fails == 0 ? CheckStatus::PASS : CheckStatus::FAIL;
  return r;
}

// ---------------------------------------------------------------------------
// ellipticity

HessianFunctional build_functional(double delta, int dim, std::uint64_t graph,
                                   std::uint64_t seed) {
  HessianFunctional fn;
  fn.graph = build_graph(delta, dim, graph, seed);
  return fn;
}

CheckResult run_ellipticity_cone(const Inputs& in, int) {
  const double delta = in_delta(in, "delta").value;
  const int dim = in_int(in, "dim");
  const std::uint64_t graph = in_u64(in, "graph");
  const std::uint64_t pairs = in_u64(in, "pairs");
  const std::uint64_t seed = in_u64(in, "seed");
  HessianFunctional fn = build_functional(delta, dim, graph, seed);
  double worst = pairwise_condition_slack(fn.graph, pairs, seed ^ 0xc0417a1eULL, true);
  CheckResult r;
  r.inputs = in;
  r.expected = "stored spectrum differences avoid the cone: e(dz) - ds >= -1e-9";
  r.observed = "worst pairwise slack " + double_repr(worst) + " over " +
               std::to_string(pairs) + " sampled pairs (permuted copies included)";
  r.residual = std::max(0.0, -worst);
  r.status = worst >= -1e-9 ? CheckStatus::PASS : CheckStatus::FAIL;
  return r;
}

CheckResult run_ellipticity_zero_level(const Inputs& in, int workers) {
  const double delta = in_delta(in, "delta").value;
  const std::uint64_t graph = in_u64(in, "graph");
  const std::uint64_t sites = in_u64(in, "sites");
  const std::uint64_t seed = in_u64(in, "seed");
  const double gate = in_dbl(in, "gate");
  HessianFunctional fn = build_functional(delta, 12, graph, seed);
  // Held-out shard indices start past the stored family so no evaluation
  // site coincides with a stored sample.
  Agg a = parallel_scan(sites, workers, [&](std::uint64_t i, Agg& acc) {
    Rng g(Rng::subseed(seed, graph + i));
    V12<double> dir = random_unit(g);
    double rho = 1.0;
    if (delta > 0.0) rho = 0.5 + 0.5 * g.uniform();
    double c = std::pow(rho, -delta);
    std::vector<double> spec = eigenvalues(hessian_at_unit(dir, delta));
    for (double& v : spec) v *= c;
    double w = w_value_at_unit(dir);
    double m = std::sqrt(dir[4] * dir[4] + dir[5] * dir[5] + dir[6] * dir[6] +
                         dir[7] * dir[7]);
    double n = std::sqrt(dir[8] * dir[8] + dir[9] * dir[9] + dir[10] * dir[10] +
                         dir[11] * dir[11]);
    std::array<double, 4> hint = {m * n > 1e-14 ? w / (m * n) : 0.0, m, n, c};
    RefinedValue rv = eval_F_refined(fn, spec, &hint);
    acc.note(i, std::abs(rv.value) <= gate && rv.f_stored <= gate);
    acc.max_resid = std::max(acc.max_resid, std::abs(rv.value));
  });
  CheckResult r;
  r.inputs = in;
  r.expected = "|F| <= " + double_repr(gate) + " on held-out Hessian spectra";
  r.observed = fmt_count(a.fails, sites, a.first_bad) + "; max |F| " +
               double_repr(a.max_resid);
  r.residual = a.max_resid;
  r.status = a.fails == 0 ? CheckStatus::PASS : CheckStatus::FAIL;
  return r;
}

CheckResult run_ellipticity_monotonicity(const Inputs& in, int) {
  const double delta = in_delta(in, "delta").value;
  const int dim = in_int(in, "dim");
  const std::uint64_t graph = in_u64(in, "graph");
  const std::uint64_t trials = in_u64(in, "trials");
  const std::uint64_t seed = in_u64(in, "seed");
  const double bound = in_dbl(in, "bound");
  HessianFunctional fn = build_functional(delta, dim, graph, seed);
  EllipticityEstimate est =
      estimate_ellipticity(fn, std::size_t(trials), seed ^ 0x3105e7e1ULL);
  bool ok = est.monotone && est.min_quotient > 0.0 && est.c_hat < bound;
  CheckResult r;
  r.inputs = in;
  r.expected = "F(S+N) > F(S) for sampled N >= 0 and empirical constant < " +
               double_repr(bound);
  r.observed = "monotone on " + std::to_string(est.trials) + " trials, quotients in [" +
               double_repr(est.min_quotient) + ", " + double_repr(est.max_quotient) +
               "], C-hat = " + double_repr(est.c_hat);
  r.residual = est.c_hat;
  r.status = ok ? CheckStatus::PASS : CheckStatus::FAIL;
  return r;
}

CheckResult run_ellipticity_viscosity(const Inputs& in, int) {
  const double delta = in_delta(in, "delta").value;
  const std::uint64_t graph = in_u64(in, "graph");
  const std::uint64_t quadratics = in_u64(in, "quadratics");
  const std::uint64_t seed = in_u64(in, "seed");
  const double tol = in_dbl(in, "tol");
  HessianFunctional fn = build_functional(delta, 12, graph, seed);
  Rng g(Rng::subseed(seed ^ 0x7135c0deULL, 7));
  V12<double> x0 = scale(0.8, random_unit(g));
  ViscosityReport rep = viscosity_touch_test(fn, x0, std::size_t(quadratics),
                                             seed ^ 0x7135c0deULL, tol);
  CheckResult r;
  r.inputs = in;
  r.expected = "quadratic touching keeps F <= 0 below and F >= 0 above; "
               "sign change witnessed when delta > 0";
  r.observed = rep.detail;
  r.residual = std::max({0.0, rep.max_f_below, -rep.min_f_above, rep.jet_residual});
  r.status = rep.pass ? CheckStatus::PASS : CheckStatus::FAIL;
  return r;
}

// ---------------------------------------------------------------------------
// isaacs

CheckResult run_isaacs_toys(const Inputs& in, int) {
  const double tol = in_dbl(in, "tol");
  bool ok = true;
  double resid = 0.0;

  SymMatrix<double> f1(2), f2(2);
  f1.set(0, 0, 1.0);
  f1.set(1, 1, -1.0);
  f2.set(0, 1, 1.0);

  HyperbolicityCertificate sc = strict_hyperbolicity(f1, 2.0);
  ok = ok && sc.pass;
  resid = std::max(resid, std::abs(sc.ratio - 1.0));

  PencilReport rot = pencil_hyperbolic(f1, f2, 1.5, 64);
  ok = ok && rot.pass && !rot.degenerate;
  resid = std::max(resid, std::abs(rot.worst_ratio - 1.0));

  PencilReport anti = pencil_hyperbolic(f1, sym_scale(-1.0, f1), 1e6, 64);
  ok = ok && anti.degenerate && !anti.pass;

  PositiveWitness w = find_positive_witness(f1, f2, tol);
  ok = ok && w.status == WitnessStatus::kFound && w.pass;
  resid = std::max({resid, std::abs(w.q.at(0, 0) - 1.0), std::abs(w.q.at(1, 1) - 1.0),
                    std::abs(w.q.at(0, 1)), w.residual1, w.residual2});

  SymMatrix<double> g1(3), g2(3);
  g1.set(0, 0, 2.0);
  g1.set(1, 1, -1.0);
  g1.set(2, 2, -1.0);
  g2.set(1, 1, 1.0);
  g2.set(2, 2, -1.0);
  PositiveWitness w3 = find_positive_witness(g1, g2, tol);
  ok = ok && w3.status == WitnessStatus::kFound && w3.pass && w3.min_eig >= 0.9;

  CheckResult r;
  r.inputs = in;
  r.expected = "toy pencils pass exactly: rotation ratio 1, antipodal degenerate, "
               "2x2 witness Q = I";
  r.observed = std::string(ok ? "all toys pass" : "toy failure") +
               "; max deviation " + double_repr(resid);
  r.residual = resid;
  r.status = ok && resid <= 1e-6 ? CheckStatus::PASS : CheckStatus::FAIL;
  return r;
}

CheckResult run_isaacs_witnesses(const Inputs& in, int) {
  const double delta = in_delta(in, "delta").value;
  const int dim = in_int(in, "dim");
  const std::uint64_t pairs = in_u64(in, "pairs");
  const std::uint64_t seed = in_u64(in, "seed");
  IsaacsCertificate cert = isaacs_check(delta, dim, pairs, seed);
  CheckResult r;
  r.inputs = in;
  r.expected = "positive witness with relative trace pairings <= 1e-9 for every pair; "
               "pencils hyperbolic with modulus C_delta + 1";
  r.observed = cert.detail + " worst_residual=" + double_repr(cert.worst_residual) +
               " worst_pencil_ratio=" + double_repr(cert.worst_pencil_ratio);
  r.residual = cert.worst_residual;
  if (cert.pass)
    r.status = CheckStatus::PASS;
  else if (cert.hard_failures > 0)
    r.status = CheckStatus::FAIL;
  else
    r.status = CheckStatus::INCONCLUSIVE;
  return r;
}

// ---------------------------------------------------------------------------
// separation

CheckResult run_separation_witnesses(const Inputs& in, int workers) {
  const double delta = in_delta(in, "delta").value;
  const std::uint64_t pairs = in_u64(in, "pairs");
  const int restarts = in_int(in, "restarts");
  const std::uint64_t seed = in_u64(in, "seed");
  const double tol = in_dbl(in, "tol");
  const double min_rate = in_dbl(in, "min_rate");
  Agg a = parallel_scan(pairs, workers, [&](std::uint64_t i, Agg& acc) {
    Rng g(Rng::subseed(seed, i));
    V12<double> x = random_unit(g);
    V12<double> y = random_unit(g);
    if (norm2(sub(x, y)) < 1e-20) y = scale(-1.0, y);
    SeparationCheck c = separation_check(x, y, delta, restarts,
                                         Rng::subseed(seed ^ 0x5e9a7a71ULL, i), tol);
    if (c.status == CheckStatus::PASS) {
      acc.note(i, true);
      acc.min_slack = std::min(acc.min_slack, c.best_witness - c.bound);
    } else if (c.status == CheckStatus::INCONCLUSIVE) {
      ++acc.inconclusive;
    } else {
      acc.note(i, false);
    }
  });
  double rate = pairs == 0 ? 0.0 : double(a.passes) / double(pairs);
  CheckResult r;
  r.inputs = in;
  r.expected = "witness direction with |e^T (H(a)-H(b)) e| >= |a-b|/sqrt 3 for >= " +
               double_repr(min_rate) + " of pairs; remainder inconclusive, never false";
  r.observed = std::to_string(a.passes) + " witnessed, " +
               std::to_string(a.inconclusive) + " inconclusive, " +
               std::to_string(a.fails) + " failures; rate " + double_repr(rate);
  r.residual = std::max(0.0, min_rate - rate);
  if (a.fails > 0)
    r.status = CheckStatus::FAIL;
  else if (rate >= min_rate)
    r.status = CheckStatus::PASS;
  else
    r.status = CheckStatus::INCONCLUSIVE;
  return r;
}

// ---------------------------------------------------------------------------
// registry and suite assembly

using Runner = CheckResult (*)(const Inputs&, int);

const std::map<std::string, Runner>& runner_table() {
  static const std::map<std::string, Runner> table = {
      {"factorization_coefficients", run_factorization_coefficients},
      {"factorization_blocks", run_factorization_blocks},
      {"interlacing_chain", run_interlacing_chain},
      {"interlacing_intervals", run_interlacing_intervals},
      {"position_lambda67", run_position_lambda67},
      {"position_multiplicity", run_position_multiplicity},
      {"position_probes", run_position_probes},
      {"position_w0", run_position_w0},
      {"resultant_identity", run_resultant_identity},
      {"hyperbolicity_ratio", run_hyperbolicity_ratio},
      {"hyperbolicity_trace_exact", run_hyperbolicity_trace_exact},
      {"hyperbolicity_main_lemma", run_hyperbolicity_main_lemma},
      {"hyperbolicity_mu_bound", run_hyperbolicity_mu_bound},
      {"hyperbolicity_claim", run_hyperbolicity_claim},
      {"ellipticity_cone", run_ellipticity_cone},
      {"ellipticity_zero_level", run_ellipticity_zero_level},
      {"ellipticity_monotonicity", run_ellipticity_monotonicity},
      {"ellipticity_viscosity", run_ellipticity_viscosity},
      {"isaacs_toys", run_isaacs_toys},
      {"isaacs_witnesses", run_isaacs_witnesses},
      {"separation_witnesses", run_separation_witnesses},
  };
  return table;
}

CheckResult dispatch(const Inputs& in, int workers) {
  auto it = runner_table().find(req(in, "kind"));
  if (it == runner_table().end())
    throw std::runtime_error("unknown check kind: " + req(in, "kind"));
  return it->second(in, workers);
}

std::string u64s(std::uint64_t v) { return std::to_string(v); }

std::vector<DeltaSpec> exact_grid(const RunConfig& cfg) {
  if (!cfg.deltas.empty()) return cfg.deltas;
  return {DeltaSpec::from_rational(0, 1), DeltaSpec::from_rational(1, 4),
          DeltaSpec::from_rational(1, 2), DeltaSpec::from_rational(3, 4)};
}

std::vector<DeltaSpec> float_grid(const RunConfig& cfg,
                                  std::initializer_list<double> def) {
  if (!cfg.deltas.empty()) return cfg.deltas;
  std::vector<DeltaSpec> out;
  for (double d : def) out.push_back(DeltaSpec::from_double(d));
  return out;
}

void require_dim11_zero(const std::vector<DeltaSpec>& grid, int dim,
                        const std::string& suite) {
  if (dim != 11) return;
  for (const DeltaSpec& d : grid)
    if (d.value != 0.0)
      throw std::invalid_argument(suite + ": dimension 11 requires delta = 0");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "factorization", "interlacing", "position",    "resultant",
      "hyperbolicity", "ellipticity", "isaacs",      "separation"};
  return names;
}

bool is_suite_name(const std::string& name) {
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

SuiteResult run_suite(const std::string& name, const RunConfig& cfg) {
  if (!is_suite_name(name))
    throw std::invalid_argument("unknown suite: " + name);
  if (cfg.dim != 11 && cfg.dim != 12)
    throw std::invalid_argument("dim must be 11 or 12");

  const int workers = resolve_workers(cfg.workers);
  const std::string seed = u64s(cfg.seed);
  auto t0 = std::chrono::steady_clock::now();

  SuiteResult s;
  s.name = name;
  auto add = [&](std::string id, Inputs in) {
    CheckResult c = dispatch(in, workers);
    c.id = std::move(id);
    s.checks.push_back(std::move(c));
  };

  if (name == "factorization") {
    for (const DeltaSpec& d : exact_grid(cfg)) {
      add("factorization/coefficients/delta=" + d.spelling,
          {{"kind", "factorization_coefficients"},
           {"delta", d.spelling},
           {"points", u64s(cfg.points)},
           {"seed", seed}});
      add("factorization/blocks/delta=" + d.spelling,
          {{"kind", "factorization_blocks"},
           {"delta", d.spelling},
           {"points", u64s(std::max<std::uint64_t>(cfg.points / 4, 3))},
           {"seed", seed}});
    }
  } else if (name == "interlacing") {
    for (const DeltaSpec& d : float_grid(cfg, {0.0})) {
      add("interlacing/chain/delta=" + d.spelling,
          {{"kind", "interlacing_chain"},
           {"delta", d.spelling},
           {"sites", u64s(cfg.samples)},
           {"seed", seed},
           {"slack", double_repr(1e-10)}});
    }
    add("interlacing/intervals",
        {{"kind", "interlacing_intervals"}, {"slack", double_repr(1e-10)}});
  } else if (name == "position") {
    add("position/lambda67", {{"kind", "position_lambda67"},
                              {"sites", u64s(cfg.samples)},
                              {"seed", seed},
                              {"tol", double_repr(cfg.tolerance)}});
    for (const DeltaSpec& d : exact_grid(cfg)) {
      add("position/multiplicity/delta=" + d.spelling,
          {{"kind", "position_multiplicity"},
           {"delta", d.spelling},
           {"points", u64s(cfg.points)},
           {"seed", seed}});
    }
    add("position/probes",
        {{"kind", "position_probes"}, {"tol", double_repr(cfg.tolerance)}});
    add("position/w0", {{"kind", "position_w0"}, {"tol", double_repr(1e-12)}});
  } else if (name == "resultant") {
    for (const DeltaSpec& d : exact_grid(cfg)) {
      add("resultant/identity/delta=" + d.spelling,
          {{"kind", "resultant_identity"},
           {"delta", d.spelling},
           {"points", u64s(cfg.points)},
           {"seed", seed}});
    }
  } else if (name == "hyperbolicity") {
    std::vector<DeltaSpec> grid =
        cfg.dim == 11
            ? float_grid(cfg, {0.0})
            : float_grid(cfg, {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
    require_dim11_zero(grid, cfg.dim, name);
    for (const DeltaSpec& d : grid) {
      add("hyperbolicity/ratio/delta=" + d.spelling + "/dim=" +
              std::to_string(cfg.dim),
          {{"kind", "hyperbolicity_ratio"},
           {"delta", d.spelling},
           {"dim", std::to_string(cfg.dim)},
           {"samples", u64s(cfg.samples)},
           {"seed", seed},
           {"slack", double_repr(1e-9)}});
    }
    if (cfg.dim == 12) {
      for (const DeltaSpec& d : exact_grid(RunConfig{})) {
        add("hyperbolicity/trace/delta=" + d.spelling + "/dim=12",
            {{"kind", "hyperbolicity_trace_exact"},
             {"delta", d.spelling},
             {"dim", "12"},
             {"points", u64s(cfg.points)},
             {"seed", seed}});
      }
      add("hyperbolicity/main-lemma", {{"kind", "hyperbolicity_main_lemma"},
                                       {"samples", u64s(cfg.samples)},
                                       {"seed", seed},
                                       {"tol", double_repr(1e-9)}});
      add("hyperbolicity/mu-bound", {{"kind", "hyperbolicity_mu_bound"},
                                     {"samples", u64s(cfg.samples)},
                                     {"seed", seed},
                                     {"slack", double_repr(1e-9)}});
      add("hyperbolicity/claim", {{"kind", "hyperbolicity_claim"},
                                  {"samples", u64s(cfg.samples)},
                                  {"seed", seed}});
    } else {
      add("hyperbolicity/trace/delta=0/dim=11",
          {{"kind", "hyperbolicity_trace_exact"},
           {"delta", "0"},
           {"dim", "11"},
           {"points", u64s(cfg.points)},
           {"seed", seed}});
    }
  } else if (name == "ellipticity") {
    std::vector<DeltaSpec> grid = cfg.dim == 11 ? float_grid(cfg, {0.0})
                                                : float_grid(cfg, {0.0, 0.5});
    require_dim11_zero(grid, cfg.dim, name);
    const std::uint64_t graph = std::max<std::uint64_t>(cfg.samples, 2000);
    for (const DeltaSpec& d : grid) {
      std::string dim = std::to_string(cfg.dim);
      add("ellipticity/cone/delta=" + d.spelling + "/dim=" + dim,
          {{"kind", "ellipticity_cone"},
           {"delta", d.spelling},
           {"dim", dim},
           {"graph", u64s(graph)},
           {"pairs", u64s(cfg.samples)},
           {"seed", seed}});
      if (cfg.dim == 12) {
        add("ellipticity/zero-level/delta=" + d.spelling,
            {{"kind", "ellipticity_zero_level"},
             {"delta", d.spelling},
             {"graph", u64s(std::max<std::uint64_t>(graph, 2500))},
             {"sites", u64s(cfg.points)},
             {"seed", seed},
             {"gate", double_repr(1e-7)}});
      }
      add("ellipticity/monotonicity/delta=" + d.spelling + "/dim=" + dim,
          {{"kind", "ellipticity_monotonicity"},
           {"delta", d.spelling},
           {"dim", dim},
           {"graph", u64s(graph)},
           {"trials", u64s(cfg.samples)},
           {"seed", seed},
           {"bound", double_repr(cfg.dim == 12 ? 1e5 : 1e4)}});
      if (cfg.dim == 12) {
        add("ellipticity/viscosity/delta=" + d.spelling,
            {{"kind", "ellipticity_viscosity"},
             {"delta", d.spelling},
             {"graph", u64s(graph)},
             {"quadratics", "6"},
             {"seed", seed},
             {"tol", double_repr(1e-6)}});
      }
    }
  } else if (name == "isaacs") {
    std::vector<DeltaSpec> grid = cfg.dim == 11 ? float_grid(cfg, {0.0})
                                                : float_grid(cfg, {0.0, 0.5});
    require_dim11_zero(grid, cfg.dim, name);
    add("isaacs/toys", {{"kind", "isaacs_toys"}, {"tol", double_repr(1e-9)}});
    for (const DeltaSpec& d : grid) {
      add("isaacs/witnesses/delta=" + d.spelling + "/dim=" +
              std::to_string(cfg.dim),
          {{"kind", "isaacs_witnesses"},
           {"delta", d.spelling},
           {"dim", std::to_string(cfg.dim)},
           {"pairs", u64s(cfg.samples)},
           {"seed", seed}});
    }
  } else if (name == "separation") {
    for (const DeltaSpec& d : float_grid(cfg, {0.0, 0.5})) {
      add("separation/witnesses/delta=" + d.spelling,
          {{"kind", "separation_witnesses"},
           {"delta", d.spelling},
           {"pairs", u64s(cfg.samples)},
           {"restarts", "64"},
           {"seed", seed},
           {"tol", double_repr(cfg.tolerance)},
           {"min_rate", double_repr(0.99)}});
    }
  }

  auto t1 = std::chrono::steady_clock::now();
  s.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return s;
}

VerificationReport run_all(const RunConfig& cfg) {
  VerificationReport rep;
  rep.config = cfg;
  std::vector<std::string> order;
  for (const std::string& n : suite_names())
    if (std::find(cfg.suites.begin(), cfg.suites.end(), n) != cfg.suites.end())
      order.push_back(n);
  for (const std::string& n : cfg.suites)
    if (!is_suite_name(n)) throw std::invalid_argument("unknown suite: " + n);

  // Suites are pure functions of (name, config); run them concurrently and
  // aggregate single-threaded in canonical order.
  if (order.size() > 1 && resolve_workers(cfg.workers) > 1) {
    std::vector<std::future<SuiteResult>> futs;
    futs.reserve(order.size());
    for (const std::string& n : order)
      futs.push_back(std::async(std::launch::async,
                                [&cfg, n]() { return run_suite(n, cfg); }));
    for (auto& f : futs) rep.suites.push_back(f.get());
  } else {
    for (const std::string& n : order) rep.suites.push_back(run_suite(n, cfg));
  }
  return rep;
}

CheckResult run_recorded_check(const CheckResult& recorded, int workers,
                               double tolerance_override) {
  Inputs in = recorded.inputs;
  if (tolerance_override >= 0.0) {
    for (const char* key : {"tol", "slack", "gate"}) {
      auto it = in.find(key);
      if (it != in.end()) it->second = double_repr(tolerance_override);
    }
  }
  CheckResult c = dispatch(in, resolve_workers(workers));
  c.id = recorded.id;
  return c;
}

}  // namespace hsl
