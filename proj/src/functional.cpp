#include "hsl/functional.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "hsl/hessian.hpp"
#include "hsl/hyperbolicity.hpp"
#include "hsl/rng.hpp"
#include "hsl/spectra.hpp"

namespace hsl {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void require_dim(int dim) {
  if (dim != 11 && dim != 12) throw std::invalid_argument("cone: dim must be 11 or 12");
}

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<double>());
  return v;
}

// Random unit site; dimension 11 samples inside the hyperplane x_12 = 0.
V12<double> unit_site(Rng& g, int dim) {
  for (;;) {
    V12<double> a;
    for (std::size_t i = 0; i < 12; ++i) a[i] = g.gaussian();
    if (dim == 11) a[11] = 0.0;
    double n2 = norm2(a);
    if (n2 > 1e-12) return scale(1.0 / std::sqrt(n2), a);
  }
}

// Sorted spectrum of the (possibly compressed) Hessian at a unit site,
// scaled by c = rho^(-delta).
std::vector<double> site_spectrum(const V12<double>& a, double delta, int dim, double c) {
  SymMatrix<double> h = hessian_at_unit(a, delta);
  std::vector<double> spec =
      dim == 11 ? eigenvalues(delete_coordinate(h, 11)) : eigenvalues(h);
  for (double& v : spec) v *= c;
  return spec;
}

std::array<double, 4> site_theta(const V12<double>& a, double c) {
  Invariants<double> inv = invariants(a);
  double m = std::sqrt(std::max(inv.m2, 0.0));
  double n = std::sqrt(std::max(inv.n2, 0.0));
  double r0 = (m * n > 1e-14) ? inv.W / (m * n) : 0.0;
  return {r0, m, n, c};
}

GraphSample make_sample(const DiagonalFrame& frame, const V12<double>& a,
                        double delta, int dim, double c) {
  GraphSample smp;
  smp.theta = site_theta(a, c);
  smp.spectrum = site_spectrum(a, delta, dim, c);
  frame.to_coords(smp.spectrum, smp.z, smp.s);
  return smp;
}

// Clamp theta into the parameter domain: (r0, m, n) inside the closed unit
// ball with m, n >= 0, and c in [1, 2^delta] (fixed at 1 for delta = 0).
std::array<double, 4> project_theta(std::array<double, 4> th, double delta) {
  th[1] = std::clamp(th[1], 0.0, 1.0);
  th[2] = std::clamp(th[2], 0.0, 1.0);
  th[0] = std::clamp(th[0], -1.0, 1.0);
  double s2 = th[0] * th[0] + th[1] * th[1] + th[2] * th[2];
  if (s2 > 1.0) {
    double f = std::sqrt((1.0 - 1e-12) / s2);
    th[0] *= f;
    th[1] *= f;
    th[2] *= f;
  }
  th[3] = delta == 0.0 ? 1.0 : std::clamp(th[3], 1.0, std::pow(2.0, delta));
  return th;
}

std::vector<double> family_spectrum(const std::array<double, 4>& th, double delta,
                                    int dim) {
  V12<double> a = site_from_invariants(th[0], th[1], th[2]);
  return site_spectrum(a, delta, dim, th[3]);
}

// Nelder-Mead on k parameters; f must handle any point (the objectives below
// project into the domain before evaluating). Returns the best vertex.
template <class F>
std::pair<std::vector<double>, double> nelder_mead(F&& f, const std::vector<double>& x0,
                                                   double step, int iters) {
  const std::size_t k = x0.size();
  std::vector<std::vector<double>> xs(k + 1, x0);
  for (std::size_t i = 0; i < k; ++i) xs[i + 1][i] += step;
  std::vector<double> fv(k + 1);
  for (std::size_t i = 0; i <= k; ++i) fv[i] = f(xs[i]);

  std::vector<std::size_t> ord(k + 1);
  for (int it = 0; it < iters; ++it) {
    for (std::size_t i = 0; i <= k; ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(),
              [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    double spread = fv[ord[k]] - fv[ord[0]];
    if (spread <= 1e-13 * (1.0 + std::abs(fv[ord[0]]))) break;

    std::vector<double> cen(k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) cen[j] += xs[ord[i]][j] / double(k);
    const std::vector<double>& worst = xs[ord[k]];

    std::vector<double> xr(k);
    for (std::size_t j = 0; j < k; ++j) xr[j] = 2.0 * cen[j] - worst[j];
    double fr = f(xr);
    if (fr < fv[ord[0]]) {
      std::vector<double> xe(k);
      for (std::size_t j = 0; j < k; ++j) xe[j] = 3.0 * cen[j] - 2.0 * worst[j];
      double fe = f(xe);
      if (fe < fr) {
        xs[ord[k]] = xe;
        fv[ord[k]] = fe;
      } else {
        xs[ord[k]] = xr;
        fv[ord[k]] = fr;
      }
    } else if (fr < fv[ord[k - 1]]) {
      xs[ord[k]] = xr;
      fv[ord[k]] = fr;
    } else {
      std::vector<double> xc(k);
      for (std::size_t j = 0; j < k; ++j) xc[j] = 0.5 * (cen[j] + worst[j]);
      double fc = f(xc);
      if (fc < fv[ord[k]]) {
        xs[ord[k]] = xc;
        fv[ord[k]] = fc;
      } else {
        for (std::size_t i = 1; i <= k; ++i) {
          for (std::size_t j = 0; j < k; ++j)
            xs[ord[i]][j] = 0.5 * (xs[ord[0]][j] + xs[ord[i]][j]);
          fv[ord[i]] = f(xs[ord[i]]);
        }
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i <= k; ++i)
    if (fv[i] < fv[best]) best = i;
  return {xs[best], fv[best]};
}

void write_raw(std::ofstream& f, const void* p, std::size_t n) {
  f.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

void read_raw(std::ifstream& f, void* p, std::size_t n) {
  f.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  if (!f) throw std::runtime_error("load_graph: truncated file");
}

}  // namespace

double cone_lambda(double delta, int dim) {
  require_dim(dim);
  if (dim == 11) {
    if (delta != 0.0) throw std::invalid_argument("cone_lambda: dim 11 needs delta = 0");
    return 24.0;
  }
  // n * C_delta <= lambda^2 makes sorted-spectrum differences avoid the cone.
  return std::max(26.0, std::sqrt(12.0 * c_delta(delta)));
}

double cone_margin(const LambdaCone& cone, const std::vector<double>& y) {
  if (static_cast<int>(y.size()) != cone.dim)
    throw std::invalid_argument("cone_margin: size mismatch");
  if (!(cone.lambda > 0.0)) throw std::invalid_argument("cone_margin: lambda <= 0");
  double acc = 0.0;
  for (double v : y) acc += std::min(v / cone.lambda, cone.lambda * v);
  return acc;
}

bool cone_contains(const LambdaCone& cone, const std::vector<double>& y) {
  return cone_margin(cone, y) >= 0.0;
}

DiagonalFrame::DiagonalFrame(int n_) : n(n_) {
  if (n < 2) throw std::invalid_argument("DiagonalFrame: n < 2");
  double inv = 1.0 / std::sqrt(double(n));
  v.assign(std::size_t(n), inv);
  v[std::size_t(n) - 1] -= 1.0;
  v2 = 0.0;
  for (double c : v) v2 += c * c;
}

std::vector<double> DiagonalFrame::apply(const std::vector<double>& x) const {
  if (x.size() != std::size_t(n)) throw std::invalid_argument("DiagonalFrame: size");
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d += v[i] * x[i];
  double f = 2.0 * d / v2;
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - f * v[i];
  return y;
}

void DiagonalFrame::to_coords(const std::vector<double>& x, std::vector<double>& z,
                              double& s) const {
  std::vector<double> y = apply(x);
  s = y.back();
  y.pop_back();
  z = std::move(y);
}

std::vector<double> DiagonalFrame::from_coords(const std::vector<double>& z,
                                               double s) const {
  if (z.size() + 1 != std::size_t(n)) throw std::invalid_argument("DiagonalFrame: size");
  std::vector<double> y(z);
  y.push_back(s);
  return apply(y);
}

double support_e(const LambdaCone& cone, const DiagonalFrame& frame,
                 const std::vector<double>& z, double tol) {
  if (cone.dim != frame.n) throw std::invalid_argument("support_e: dim mismatch");
  std::vector<double> x0 = frame.from_coords(z, 0.0);
  const double invsq = 1.0 / std::sqrt(double(frame.n));
  const double lam = cone.lambda;
  auto margin_at = [&](double c) {
    double acc = 0.0;
    for (double xi : x0) {
      double yi = xi + c * invsq;
      acc += std::min(yi / lam, lam * yi);
    }
    return acc;
  };
  // All entries of x0 + c u are >= 1 (resp. <= -1) at the bracket ends, so
  // phi is strictly positive (negative) there; phi is strictly increasing in
  // c, so the root is unique.
  double amp = 0.0;
  for (double xi : x0) amp = std::max(amp, std::abs(xi));
  double hw = std::sqrt(double(frame.n)) * (amp + 1.0);
  double lo = -hw, hi = hw;
  const double stop = tol * std::max(1.0, amp);
  for (int it = 0; it < 200 && hi - lo > stop; ++it) {
    double mid = 0.5 * (lo + hi);
    if (margin_at(mid) >= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

SampledGraph build_graph(double delta, int dim, std::size_t n_samples,
                         std::uint64_t seed) {
  SampledGraph graph;
  graph.dim = dim;
  graph.delta = delta;
  graph.seed = seed;
  graph.cone = LambdaCone{cone_lambda(delta, dim), dim};
  DiagonalFrame frame(dim);
  graph.samples.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    Rng g(Rng::subseed(seed, i));
    V12<double> a = unit_site(g, dim);
    double rho = delta == 0.0 ? 1.0 : 0.5 + 0.5 * g.uniform();
    double c = std::pow(rho, -delta);
    graph.samples.push_back(make_sample(frame, a, delta, dim, c));
  }
  return graph;
}

double pairwise_condition_slack(const SampledGraph& graph, std::size_t n_pairs,
                                std::uint64_t seed, bool with_permutations) {
  if (graph.samples.size() < 2)
    throw std::domain_error("pairwise_condition_slack: need at least 2 samples");
  DiagonalFrame frame(graph.dim);
  Rng g(seed);
  auto coords = [&](const GraphSample& smp, bool permute, std::vector<double>& z,
                    double& s) {
    if (!permute) {
      z = smp.z;
      s = smp.s;
      return;
    }
    std::vector<double> p = smp.spectrum;
    for (std::size_t i = p.size() - 1; i > 0; --i)
      std::swap(p[i], p[g.below(i + 1)]);
    frame.to_coords(p, z, s);
  };
  double worst = std::numeric_limits<double>::infinity();
  std::vector<double> zi, zj, d(std::size_t(graph.dim) - 1);
  double si = 0.0, sj = 0.0;
  for (std::size_t t = 0; t < n_pairs; ++t) {
    std::size_t i = g.below(graph.samples.size());
    std::size_t j = g.below(graph.samples.size());
    if (i == j) j = (j + 1) % graph.samples.size();
    bool pi = with_permutations && g.below(2) == 1;
    bool pj = with_permutations && g.below(2) == 1;
    coords(graph.samples[i], pi, zi, si);
    coords(graph.samples[j], pj, zj, sj);
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = zi[k] - zj[k];
    worst = std::min(worst, support_e(graph.cone, frame, d) - (si - sj));
    for (double& v : d) v = -v;
    worst = std::min(worst, support_e(graph.cone, frame, d) - (sj - si));
  }
  return worst;
}

double extend_g(const SampledGraph& graph, const std::vector<double>& z) {
  if (graph.samples.empty()) throw std::domain_error("extend_g: empty graph");
  if (z.size() + 1 != std::size_t(graph.dim))
    throw std::invalid_argument("extend_g: coordinate size mismatch");
  DiagonalFrame frame(graph.dim);
  std::vector<double> d(z.size());
  double best = std::numeric_limits<double>::infinity();
  for (const GraphSample& smp : graph.samples) {
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = z[k] - smp.z[k];
    best = std::min(best, smp.s + support_e(graph.cone, frame, d));
  }
  return best;
}

double eval_F(const HessianFunctional& fn, const SymMatrix<double>& s) {
  if (s.size() != std::size_t(fn.graph.dim))
    throw std::invalid_argument("eval_F: matrix size mismatch");
  return eval_F_spectrum(fn, eigenvalues(s));
}

double eval_F_spectrum(const HessianFunctional& fn,
                       const std::vector<double>& spectrum_sorted) {
  if (spectrum_sorted.size() != std::size_t(fn.graph.dim))
    throw std::invalid_argument("eval_F_spectrum: size mismatch");
  std::vector<double> p = sorted_desc(spectrum_sorted);
  DiagonalFrame frame(fn.graph.dim);
  std::vector<double> z;
  double s = 0.0;
  frame.to_coords(p, z, s);
  return s - extend_g(fn.graph, z);
}

RefinedValue eval_F_refined(const HessianFunctional& fn,
                            const std::vector<double>& spectrum_sorted,
                            const std::array<double, 4>* hint) {
  const SampledGraph& graph = fn.graph;
  if (graph.samples.empty()) throw std::domain_error("eval_F_refined: empty graph");
  if (spectrum_sorted.size() != std::size_t(graph.dim))
    throw std::invalid_argument("eval_F_refined: size mismatch");
  const double delta = graph.delta;
  DiagonalFrame frame(graph.dim);
  std::vector<double> p = sorted_desc(spectrum_sorted);
  std::vector<double> zstar;
  double sstar = 0.0;
  frame.to_coords(p, zstar, sstar);

  // Stored inf, tracking the two best seeds for the descent.
  std::vector<double> d(zstar.size());
  double stored_best = std::numeric_limits<double>::infinity();
  std::size_t i1 = 0, i2 = 0;
  double v1 = std::numeric_limits<double>::infinity();
  double v2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < graph.samples.size(); ++i) {
    const GraphSample& smp = graph.samples[i];
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = zstar[k] - smp.z[k];
    double val = smp.s + support_e(graph.cone, frame, d);
    if (val < v1) {
      v2 = v1;
      i2 = i1;
      v1 = val;
      i1 = i;
    } else if (val < v2) {
      v2 = val;
      i2 = i;
    }
    stored_best = std::min(stored_best, val);
  }

  const std::size_t k = delta > 0.0 ? 4 : 3;
  auto unpack = [&](const std::vector<double>& x) {
    std::array<double, 4> th{x[0], x[1], x[2], k == 4 ? x[3] : 1.0};
    return project_theta(th, delta);
  };
  auto pack = [&](const std::array<double, 4>& th) {
    std::vector<double> x(k);
    x[0] = th[0];
    x[1] = th[1];
    x[2] = th[2];
    if (k == 4) x[3] = th[3];
    return x;
  };
  auto psi = [&](const std::vector<double>& x) {
    std::array<double, 4> th = unpack(x);
    std::vector<double> spec = family_spectrum(th, delta, graph.dim);
    std::vector<double> zt;
    double st = 0.0;
    frame.to_coords(spec, zt, st);
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = zstar[j] - zt[j];
    return st + support_e(graph.cone, frame, d);
  };
  auto surrogate = [&](const std::vector<double>& x) {
    std::array<double, 4> th = unpack(x);
    std::vector<double> spec = family_spectrum(th, delta, graph.dim);
    std::vector<double> zt;
    double st = 0.0;
    frame.to_coords(spec, zt, st);
    double acc = 0.0;
    for (std::size_t j = 0; j < zt.size(); ++j) {
      double e = zt[j] - zstar[j];
      acc += e * e;
    }
    return acc;
  };

  std::vector<std::vector<double>> seeds;
  if (hint != nullptr) seeds.push_back(pack(project_theta(*hint, delta)));
  seeds.push_back(pack(project_theta(graph.samples[i1].theta, delta)));
  if (i2 != i1 && graph.samples.size() > 1)
    seeds.push_back(pack(project_theta(graph.samples[i2].theta, delta)));

  double cand_min = stored_best;
  std::vector<double> best_x = seeds.front();
  for (const std::vector<double>& s0 : seeds) {
    auto [x, val] = nelder_mead(psi, s0, 0.03, 260);
    if (val < cand_min) cand_min = val;
    if (val <= psi(best_x)) best_x = x;
  }
  // One descent on the smooth surrogate |z(theta) - z*|^2 from the best
  // vertex; psi is kinked at its minimum, the surrogate is not.
  auto [xs, sval] = nelder_mead(surrogate, best_x, 0.01, 200);
  (void)sval;
  double val_s = psi(xs);
  if (val_s < cand_min) {
    cand_min = val_s;
    best_x = xs;
  }

  RefinedValue out;
  out.f_stored = sstar - stored_best;
  out.value = sstar - cand_min;
  out.theta_best = unpack(best_x);
  return out;
}

EllipticityEstimate estimate_ellipticity(const HessianFunctional& fn,
                                         std::size_t n_trials, std::uint64_t seed) {
  const int dim = fn.graph.dim;
  EllipticityEstimate est;
  est.max_quotient = 0.0;
  est.min_quotient = std::numeric_limits<double>::infinity();
  const double scales[3] = {0.3, 1.0, 3.0};
  for (std::size_t t = 0; t < n_trials; ++t) {
    Rng g(Rng::subseed(seed, t));
    double sc = scales[t % 3];
    SymMatrix<double> s(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < std::size_t(dim); ++i)
      for (std::size_t j = i; j < std::size_t(dim); ++j)
        s.set(i, j, sc * g.gaussian());

    double norm = std::pow(10.0, g.uniform(-2.0, 0.5));
    SymMatrix<double> n(static_cast<std::size_t>(dim));
    if (t % 10 == 0) {
      for (std::size_t i = 0; i < std::size_t(dim); ++i) n.set(i, i, norm);
    } else {
      std::size_t rank = 1 + g.below(std::size_t(dim));
      std::vector<std::vector<double>> a(static_cast<std::size_t>(dim),
                                         std::vector<double>(rank, 0.0));
      for (auto& row : a)
        for (double& v : row) v = g.gaussian();
      for (std::size_t i = 0; i < std::size_t(dim); ++i)
        for (std::size_t j = i; j < std::size_t(dim); ++j) {
          double acc = 0.0;
          for (std::size_t r = 0; r < rank; ++r) acc += a[i][r] * a[j][r];
          n.set(i, j, acc);
        }
      double top = eigenvalues(n)[0];
      n = sym_scale(norm / top, n);
    }

    SymMatrix<double> sn(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < std::size_t(dim); ++i)
      for (std::size_t j = i; j < std::size_t(dim); ++j)
        sn.set(i, j, s.at(i, j) + n.at(i, j));

    double f0 = eval_F(fn, s);
    double f1 = eval_F(fn, sn);
    if (!(f1 > f0)) est.monotone = false;
    double q = (f1 - f0) / norm;
    est.max_quotient = std::max(est.max_quotient, q);
    est.min_quotient = std::min(est.min_quotient, q);
    ++est.trials;
  }
  if (est.trials > 0 && est.min_quotient > 0.0)
    est.c_hat = std::max(est.max_quotient, 1.0 / est.min_quotient);
  else
    est.c_hat = std::numeric_limits<double>::infinity();
  return est;
}

namespace {

// Deterministic quasi-random unit directions: Kronecker sequence on 12
// square-root irrationals pushed through Box-Muller.
std::vector<V12<double>> mesh_directions(std::size_t count) {
  static const double primes[12] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::vector<V12<double>> dirs;
  dirs.reserve(count);
  for (std::size_t j = 0; dirs.size() < count; ++j) {
    std::array<double, 12> u;
    for (std::size_t k = 0; k < 12; ++k) {
      double a = double(j + 1) * std::sqrt(primes[k]);
      u[k] = a - std::floor(a);
    }
    V12<double> dir;
    for (std::size_t k = 0; k < 6; ++k) {
      double u0 = std::max(u[2 * k], 1e-16);
      double r = std::sqrt(-2.0 * std::log(u0));
      dir[2 * k] = r * std::cos(2.0 * kPi * u[2 * k + 1]);
      dir[2 * k + 1] = r * std::sin(2.0 * kPi * u[2 * k + 1]);
    }
    double n2 = norm2(dir);
    if (n2 > 1e-12) dirs.push_back(scale(1.0 / std::sqrt(n2), dir));
  }
  return dirs;
}

double w_or_zero(const V12<double>& x, double delta) {
  return norm2(x) == 0.0 ? 0.0 : w_delta_value(x, delta);
}

}  // namespace

ViscosityReport viscosity_touch_test(const HessianFunctional& fn,
                                     const V12<double>& x0,
                                     std::size_t n_quadratics, std::uint64_t seed,
                                     double tol) {
  if (fn.graph.dim != 12)
    throw std::invalid_argument("viscosity_touch_test: needs the dimension-12 graph");
  const double delta = fn.graph.delta;
  const double rho0 = std::sqrt(norm2(x0));
  if (!(rho0 >= 0.5 && rho0 <= 1.0 + 1e-12))
    throw std::domain_error("viscosity_touch_test: |x0| must lie in [1/2, 1]");

  // Ball mesh: dyadic radius shells, cluster points near x0, the origin, and
  // x0 itself (where touching holds with equality).
  std::vector<V12<double>> dirs = mesh_directions(192);
  std::vector<V12<double>> mesh;
  for (int k = 0; k <= 12; ++k) {
    double r = std::ldexp(1.0, -k);
    for (const V12<double>& dir : dirs) mesh.push_back(scale(r, dir));
  }
  for (double eta : {1e-1, 1e-2, 1e-3}) {
    for (std::size_t j = 0; j < 48; ++j) {
      V12<double> pt = add(x0, scale(eta, dirs[j]));
      double n2 = norm2(pt);
      if (n2 > 1.0) pt = scale(1.0 / std::sqrt(n2), pt);
      mesh.push_back(pt);
    }
  }
  mesh.push_back(V12<double>());
  mesh.push_back(x0);

  std::vector<double> wvals(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) wvals[i] = w_or_zero(mesh[i], delta);

  const double w0 = w_delta_value(x0, delta);
  const V12<double> gr = w_delta_gradient(x0, delta);
  const SymMatrix<double> h = hessian(x0, delta);
  std::vector<double> eig_h = eigenvalues(h);
  auto jet = [&](const V12<double>& x) {
    V12<double> dx = sub(x, x0);
    return w0 + dot(gr, dx) + 0.5 * h.quad(dx.c);
  };
  std::vector<double> jvals(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) jvals[i] = jet(mesh[i]);
  std::vector<double> dist2(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) dist2[i] = norm2(sub(mesh[i], x0));

  // Smallest curvature c' >= c with p = jet -+ (c'/2)|x - x0|^2 verified on
  // the mesh (sign +1 below, -1 above), found by doubling.
  auto verified_curvature = [&](double c, double sign) {
    for (int tries = 0; tries < 60; ++tries) {
      double worst = 0.0;
      for (std::size_t i = 0; i < mesh.size(); ++i) {
        double gap = sign * (wvals[i] - jvals[i]) + 0.5 * c * dist2[i];
        worst = std::min(worst, gap);
      }
      if (worst >= -1e-10) return c;
      c *= 2.0;
    }
    return -1.0;
  };

  // Chart of x0 for refinement seeding; the spectrum of D^2 p differs from
  // the site spectrum by a multiple of the identity, which moves only the
  // diagonal coordinate.
  std::array<double, 4> hint = site_theta(normalized(x0), std::pow(rho0, -delta));

  ViscosityReport rep;
  rep.max_f_below = -std::numeric_limits<double>::infinity();
  rep.min_f_above = std::numeric_limits<double>::infinity();
  bool verified_all = true;
  for (std::size_t q = 0; q < n_quadratics; ++q) {
    Rng g(Rng::subseed(seed, q));
    double c = std::exp(g.uniform(std::log(0.05), std::log(2.0)));

    double cb = verified_curvature(c, 1.0);
    if (cb < 0.0) {
      verified_all = false;
    } else {
      std::vector<double> spec(eig_h);
      for (double& v : spec) v -= cb;
      rep.max_f_below = std::max(rep.max_f_below, eval_F_spectrum(fn, spec));
      ++rep.below_count;
    }

    double ca = verified_curvature(c, -1.0);
    if (ca < 0.0) {
      verified_all = false;
    } else {
      std::vector<double> spec(eig_h);
      for (double& v : spec) v += ca;
      rep.min_f_above = std::min(rep.min_f_above, eval_F_refined(fn, spec, &hint).value);
      ++rep.above_count;
    }
  }

  rep.jet_residual = std::abs(eval_F_refined(fn, eig_h, &hint).value);

  // delta > 0: for quadratics pinned at the origin, w - p changes sign in
  // every dyadic neighborhood of 0 (checked along the cubic form's +- axis),
  // so no C^2 function touches w there.
  std::size_t witnessed = 0;
  const std::size_t n_forms = delta > 0.0 ? 5 : 0;
  if (delta > 0.0) {
    double inv3 = 1.0 / std::sqrt(3.0);
    V12<double> aplus = canonical_site(inv3, 0.0, inv3, inv3);
    V12<double> aminus = scale(-1.0, aplus);
    Rng g(seed ^ 0x5173ce1bULL);
    for (std::size_t f = 0; f < n_forms; ++f) {
      SymMatrix<double> qf(12);
      if (f == 0) {
        for (std::size_t i = 0; i < 12; ++i) qf.set(i, i, 1.0);
      } else if (f == 1) {
        for (std::size_t i = 0; i < 12; ++i) qf.set(i, i, -1.0);
      } else {
        double amp = 0.0;
        for (std::size_t i = 0; i < 12; ++i)
          for (std::size_t j = i; j < 12; ++j) {
            double v = g.gaussian();
            qf.set(i, j, v);
            amp = std::max(amp, std::abs(v));
          }
        qf = sym_scale(1.0 / (12.0 * amp), qf);
      }
      for (int k = 8; k <= 300; ++k) {
        double r = std::ldexp(1.0, -k);
        V12<double> xp = scale(r, aplus);
        V12<double> xm = scale(r, aminus);
        double vp = w_delta_value(xp, delta) - 0.5 * qf.quad(xp.c);
        double vm = w_delta_value(xm, delta) - 0.5 * qf.quad(xm.c);
        if (vp > 0.0 && vm < 0.0) {
          ++witnessed;
          break;
        }
      }
    }
    rep.sign_change_witnessed = witnessed == n_forms;
  }

  rep.pass = verified_all && rep.below_count == n_quadratics &&
             rep.above_count == n_quadratics && rep.max_f_below <= tol &&
             rep.min_f_above >= -tol && rep.jet_residual <= std::max(tol, 1e-6) &&
             (delta == 0.0 || rep.sign_change_witnessed);
  rep.detail = "below=" + std::to_string(rep.below_count) +
               " above=" + std::to_string(rep.above_count) +
               " jet_residual=" + std::to_string(rep.jet_residual) +
               " witnessed=" + std::to_string(witnessed) + "/" +
               std::to_string(n_forms);
  return rep;
}

void save_graph(const SampledGraph& graph, const std::string& path) {
  static_assert(std::endian::native == std::endian::little,
                "graph files are little-endian");
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("save_graph: cannot open " + path);
  f.write("HSLG", 4);
  std::uint32_t version = 1, dim = std::uint32_t(graph.dim);
  std::uint64_t count = graph.samples.size();
  write_raw(f, &version, 4);
  write_raw(f, &dim, 4);
  write_raw(f, &graph.delta, 8);
  write_raw(f, &graph.seed, 8);
  write_raw(f, &graph.cone.lambda, 8);
  write_raw(f, &count, 8);
  for (const GraphSample& smp : graph.samples) {
    write_raw(f, smp.theta.data(), 4 * 8);
    write_raw(f, smp.spectrum.data(), smp.spectrum.size() * 8);
    write_raw(f, smp.z.data(), smp.z.size() * 8);
    write_raw(f, &smp.s, 8);
  }
  if (!f) throw std::runtime_error("save_graph: write failed for " + path);
  f.close();

  nlohmann::json side;
  side["delta"] = graph.delta;
  side["dim"] = graph.dim;
  side["seed"] = graph.seed;
  side["count"] = count;
  side["cone_ratio"] = graph.cone.lambda;
  std::ofstream sf(path + ".json", std::ios::trunc);
  if (!sf) throw std::runtime_error("save_graph: cannot open " + path + ".json");
  sf << side.dump(2) << "\n";
}

SampledGraph load_graph(const std::string& path) {
  static_assert(std::endian::native == std::endian::little,
                "graph files are little-endian");
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("load_graph: cannot open " + path);
  char magic[4];
  read_raw(f, magic, 4);
  if (std::memcmp(magic, "HSLG", 4) != 0)
    throw std::runtime_error("load_graph: bad magic in " + path);
  std::uint32_t version = 0, dim = 0;
  read_raw(f, &version, 4);
  if (version != 1) throw std::runtime_error("load_graph: unsupported version");
  read_raw(f, &dim, 4);
  if (dim != 11 && dim != 12) throw std::runtime_error("load_graph: bad dimension");
  SampledGraph graph;
  graph.dim = int(dim);
  read_raw(f, &graph.delta, 8);
  read_raw(f, &graph.seed, 8);
  read_raw(f, &graph.cone.lambda, 8);
  graph.cone.dim = graph.dim;
  std::uint64_t count = 0;
  read_raw(f, &count, 8);
  if (count > (std::uint64_t(1) << 32))
    throw std::runtime_error("load_graph: implausible sample count");
  graph.samples.resize(count);
  for (GraphSample& smp : graph.samples) {
    read_raw(f, smp.theta.data(), 4 * 8);
    smp.spectrum.resize(dim);
    read_raw(f, smp.spectrum.data(), dim * 8);
    smp.z.resize(dim - 1);
    read_raw(f, smp.z.data(), (dim - 1) * 8);
    read_raw(f, &smp.s, 8);
  }
  return graph;
}

}  // namespace hsl
