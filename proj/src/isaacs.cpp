#include "hsl/isaacs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hsl/hessian.hpp"
#include "hsl/hyperbolicity.hpp"
#include "hsl/rng.hpp"
#include "hsl/spectra.hpp"
#include "hsl/vec12.hpp"

namespace hsl {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

SymMatrix<double> sym_combo(double ca, const SymMatrix<double>& a, double cb,
                            const SymMatrix<double>& b) {
  SymMatrix<double> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i; j < a.size(); ++j)
      c.set(i, j, ca * a.at(i, j) + cb * b.at(i, j));
  return c;
}

void sym_axpy(SymMatrix<double>& y, double alpha, const SymMatrix<double>& x) {
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = i; j < y.size(); ++j)
      y.set(i, j, y.at(i, j) + alpha * x.at(i, j));
}

double max_abs_entry(const SymMatrix<double>& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i; j < a.size(); ++j) m = std::max(m, std::abs(a.at(i, j)));
  return m;
}

}  // namespace

double trace_pairing(const SymMatrix<double>& a, const SymMatrix<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("trace_pairing: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += a.at(i, i) * b.at(i, i);
    for (std::size_t j = i + 1; j < a.size(); ++j)
      acc += 2.0 * a.at(i, j) * b.at(i, j);
  }
  return acc;
}

double frobenius_norm(const SymMatrix<double>& a) {
  return std::sqrt(std::max(trace_pairing(a, a), 0.0));
}

HyperbolicityCertificate strict_hyperbolicity(const SymMatrix<double>& a,
                                              double m_bound) {
  if (!(m_bound > 1.0))
    throw std::invalid_argument("strict_hyperbolicity: M must exceed 1");
  if (max_abs_entry(a) == 0.0)
    throw std::domain_error("strict_hyperbolicity: zero matrix");
  std::vector<double> ev = eigenvalues(a);
  HyperbolicityCertificate cert;
  cert.m_bound = m_bound;
  cert.top = ev.front();
  cert.bottom = ev.back();
  cert.ratio = cert.bottom < 0.0 ? -cert.top / cert.bottom
                                 : std::numeric_limits<double>::infinity();
  cert.pass = cert.top > 0.0 && cert.bottom < 0.0 && cert.ratio > 1.0 / m_bound &&
              cert.ratio < m_bound;
  return cert;
}

PencilReport pencil_hyperbolic(const SymMatrix<double>& f1,
                               const SymMatrix<double>& f2, double m_bound,
                               std::size_t angular_grid) {
  if (f1.size() != f2.size())
    throw std::invalid_argument("pencil_hyperbolic: size mismatch");
  if (!(m_bound > 1.0))
    throw std::invalid_argument("pencil_hyperbolic: M must exceed 1");
  const std::size_t grid = std::max<std::size_t>(angular_grid, 8);

  PencilReport rep;
  const double scale = frobenius_norm(f1) + frobenius_norm(f2);
  if (scale == 0.0) {
    rep.degenerate = true;
    rep.min_norm_ratio = 0.0;
    return rep;
  }

  double worst_margin = std::numeric_limits<double>::infinity();
  double min_norm = std::numeric_limits<double>::infinity();
  double min_norm_theta = 0.0;
  auto eval_theta = [&](double th) -> double {
    SymMatrix<double> mat = sym_combo(std::cos(th), f1, std::sin(th), f2);
    ++rep.evaluations;
    double nrm = frobenius_norm(mat);
    if (nrm < min_norm) {
      min_norm = nrm;
      min_norm_theta = th;
    }
    if (nrm <= 1e-13 * scale) {
      rep.degenerate = true;
      rep.worst_theta = th;
      return -2.0;
    }
    std::vector<double> ev = eigenvalues(mat);
    double top = ev.front(), bottom = ev.back();
    double margin, ratio;
    if (top <= 0.0 || bottom >= 0.0) {
      margin = -1.0;
      ratio = bottom < 0.0 ? -top / bottom : std::numeric_limits<double>::infinity();
    } else {
      ratio = -top / bottom;
      margin = std::min(m_bound - ratio, ratio - 1.0 / m_bound);
    }
    if (margin < worst_margin) {
      worst_margin = margin;
      rep.worst_ratio = ratio;
      rep.worst_theta = th;
    }
    return margin;
  };

  const double dth = kPi / double(grid);
  std::vector<std::pair<double, double>> coarse;  // (margin, theta)
  coarse.reserve(grid);
  for (std::size_t k = 0; k < grid; ++k) {
    double th = double(k) * dth;
    coarse.emplace_back(eval_theta(th), th);
  }
  std::sort(coarse.begin(), coarse.end());

  // Refine around the worst coarse angles.
  std::size_t refine = std::min<std::size_t>(4, coarse.size());
  for (std::size_t r = 0; r < refine; ++r) {
    double th0 = coarse[r].second;
    for (int j = 1; j < 48; ++j)
      eval_theta(th0 - dth + 2.0 * dth * double(j) / 48.0);
  }

  // Minimize the pencil norm: a vanishing combination fails regardless of
  // the modulus, and only an exact zero can dip below the detection level.
  {
    double a = min_norm_theta - dth, b = min_norm_theta + dth;
    const double gr = 0.6180339887498949;
    auto norm_at = [&](double th) {
      ++rep.evaluations;
      return frobenius_norm(sym_combo(std::cos(th), f1, std::sin(th), f2));
    };
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = norm_at(c), fd = norm_at(d);
    for (int it = 0; it < 90; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - gr * (b - a);
        fc = norm_at(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + gr * (b - a);
        fd = norm_at(d);
      }
    }
    eval_theta(0.5 * (a + b));
  }

  rep.min_norm_ratio = min_norm / scale;
  rep.pass = !rep.degenerate && worst_margin > 0.0;
  return rep;
}

PositiveWitness find_positive_witness(const SymMatrix<double>& f1,
                                      const SymMatrix<double>& f2, double tol) {
  const std::size_t n = f1.size();
  if (f2.size() != n)
    throw std::invalid_argument("find_positive_witness: size mismatch");

  SymMatrix<double> eye(n);
  for (std::size_t i = 0; i < n; ++i) eye.set(i, i, 1.0);
  const std::array<const SymMatrix<double>*, 3> cons = {&eye, &f1, &f2};
  const std::array<double, 3> target = {double(n), 0.0, 0.0};

  // Frobenius Gram-Schmidt over {I, F1, F2} with dependence detection; the
  // independent rows give a triangular system for the coordinates of the
  // minimum-norm feasible point, and dependent rows must be consistent.
  std::vector<SymMatrix<double>> basis;
  double coeff[3][3] = {{0.0}};
  int created_by[3] = {-1, -1, -1};
  for (std::size_t i = 0; i < 3; ++i) {
    SymMatrix<double> r = *cons[i];
    double nrm0 = frobenius_norm(r);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      double c = trace_pairing(r, basis[j]);
      coeff[i][j] = c;
      sym_axpy(r, -c, basis[j]);
    }
    double rn = frobenius_norm(r);
    if (nrm0 > 0.0 && rn > 1e-12 * nrm0) {
      coeff[i][basis.size()] = rn;
      created_by[basis.size()] = int(i);
      basis.push_back(sym_scale(1.0 / rn, r));
    }
  }

  PositiveWitness out;
  out.q = SymMatrix<double>(n);

  std::vector<double> v(basis.size(), 0.0);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    std::size_t i = std::size_t(created_by[j]);
    double acc = target[i];
    for (std::size_t jj = 0; jj < j; ++jj) acc -= coeff[i][jj] * v[jj];
    v[j] = acc / coeff[i][j];
  }
  for (std::size_t i = 0; i < 3; ++i) {
    double acc = 0.0, sc = 0.0;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      acc += coeff[i][j] * v[j];
      sc += std::abs(coeff[i][j] * v[j]);
    }
    if (std::abs(acc - target[i]) > 1e-9 * (1.0 + sc + std::abs(target[i])))
      return out;  // inconsistent constraints: no feasible Q at all
  }

  SymMatrix<double> q0(n);
  for (std::size_t j = 0; j < basis.size(); ++j) sym_axpy(q0, v[j], basis[j]);

  auto project_tangent = [&](SymMatrix<double>& r) {
    for (const SymMatrix<double>& bmat : basis)
      sym_axpy(r, -trace_pairing(r, bmat), bmat);
  };

  // Projected subgradient ascent on lambda_min; the subdifferential at a
  // simple bottom eigenvalue is vv^T for the bottom eigenvector v.
  auto ascend = [&](SymMatrix<double> q) {
    double best_val = -std::numeric_limits<double>::infinity();
    SymMatrix<double> best_q = q;
    int last_improve = 0;
    for (int it = 0; it < 400; ++it) {
      EigenResult er = eigen_sym(q, true);
      double lmin = er.values.back();
      if (lmin > best_val + 1e-12) {
        best_val = lmin;
        best_q = q;
        last_improve = it;
      }
      if (it - last_improve > 40 && best_val > 0.02) break;
      if (it - last_improve > 120) break;
      const std::vector<double>& vec = er.vectors.back();
      SymMatrix<double> g(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) g.set(i, j, vec[i] * vec[j]);
      project_tangent(g);
      double gn = frobenius_norm(g);
      if (gn < 1e-13) break;
      sym_axpy(q, 0.4 / (gn * std::sqrt(double(it + 1))), g);
    }
    return std::make_pair(best_q, best_val);
  };

  auto [best_q, best_val] = ascend(q0);
  if (best_val <= 1e-8) {
    Rng g(0x1355acc5u ^ (std::uint64_t(n) << 32));
    for (int restart = 0; restart < 16 && best_val <= 1e-4; ++restart) {
      SymMatrix<double> r(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) r.set(i, j, g.gaussian());
      project_tangent(r);
      double rn = frobenius_norm(r);
      SymMatrix<double> qs = q0;
      if (rn > 0.0) sym_axpy(qs, 0.7 / rn, r);
      auto [cand_q, cand_val] = ascend(qs);
      if (cand_val > best_val) {
        best_val = cand_val;
        best_q = cand_q;
      }
    }
  }

  // Remove accumulated drift: pull the ascent result back onto the affine
  // set exactly (q0 plus the tangent component of the difference).
  SymMatrix<double> diff = sym_sub(best_q, q0);
  project_tangent(diff);
  out.q = q0;
  sym_axpy(out.q, 1.0, diff);

  std::vector<double> ev = eigenvalues(out.q);
  out.min_eig = ev.back();
  out.max_eig = ev.front();
  out.residual1 = std::abs(trace_pairing(out.q, f1));
  out.residual2 = std::abs(trace_pairing(out.q, f2));
  out.status = out.min_eig > 0.0 ? WitnessStatus::kFound : WitnessStatus::kInconclusive;
  double qn = frobenius_norm(out.q);
  double n1 = frobenius_norm(f1), n2 = frobenius_norm(f2);
  bool r1_ok = n1 == 0.0 ? out.residual1 == 0.0 : out.residual1 <= tol * qn * n1;
  bool r2_ok = n2 == 0.0 ? out.residual2 == 0.0 : out.residual2 <= tol * qn * n2;
  out.pass = out.status == WitnessStatus::kFound && r1_ok && r2_ok;
  return out;
}

IsaacsCertificate isaacs_check(double delta, int dim, std::size_t n_pairs,
                               std::uint64_t seed) {
  if (dim != 11 && dim != 12)
    throw std::invalid_argument("isaacs_check: dim must be 11 or 12");
  if (dim == 11 && delta != 0.0)
    throw std::invalid_argument("isaacs_check: the restricted reading needs delta = 0");
  if (!(delta >= 0.0 && delta < 1.0))
    throw std::invalid_argument("isaacs_check: delta in [0, 1)");
  if (n_pairs == 0) throw std::invalid_argument("isaacs_check: n_pairs must be positive");

  const double m = (dim == 12 ? c_delta(delta) : kC11) + 1.0;
  IsaacsCertificate cert;
  bool all_ok = true;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    Rng g(Rng::subseed(seed, i));
    auto site = [&]() {
      V12<double> a;
      for (std::size_t k = 0; k < 12; ++k) a[k] = g.gaussian();
      if (dim == 11) a[11] = 0.0;
      a = normalized(a);
      double rho = std::exp(g.uniform(std::log(0.3), 0.0));
      return scale(rho, a);
    };
    V12<double> x = site();
    V12<double> y;
    const std::size_t mode = i % 8;
    if (mode == 5)
      y = x;
    else if (mode == 6)
      y = scale(-1.0, x);
    else
      y = site();
    auto hess = [&](const V12<double>& p) {
      SymMatrix<double> h = hessian(p, delta);
      return dim == 11 ? delete_coordinate(h, 11) : h;
    };
    SymMatrix<double> fa = hess(x), fb = hess(y);

    // The pencil through F and -F contains the zero combination, so the
    // forced degenerate pairs are exercised on the witness side only.
    if (mode != 5 && mode != 6) {
      PencilReport pr = pencil_hyperbolic(fa, fb, m, 48);
      ++cert.pencil_checked;
      if (!pr.pass) {
        all_ok = false;
        ++cert.hard_failures;
      }
      double r = pr.worst_ratio > 0.0 && std::isfinite(pr.worst_ratio)
                     ? std::max(pr.worst_ratio, 1.0 / pr.worst_ratio)
                     : std::numeric_limits<double>::infinity();
      cert.worst_pencil_ratio = std::max(cert.worst_pencil_ratio, r);
    }

    PositiveWitness w = find_positive_witness(fa, fb, 1e-9);
    if (w.status == WitnessStatus::kFound) {
      ++cert.found;
      cert.worst_conditioning =
          std::max(cert.worst_conditioning, w.max_eig / w.min_eig);
      double qn = frobenius_norm(w.q);
      double r1 = frobenius_norm(fa), r2 = frobenius_norm(fb);
      double rel = std::max(r1 > 0.0 ? w.residual1 / (qn * r1) : 0.0,
                            r2 > 0.0 ? w.residual2 / (qn * r2) : 0.0);
      cert.worst_residual = std::max(cert.worst_residual, rel);
      if (!w.pass) {
        all_ok = false;
        ++cert.hard_failures;
      }
    } else {
      ++cert.inconclusive;
      all_ok = false;
    }
    ++cert.pairs;
  }
  cert.pass = all_ok && cert.inconclusive == 0;
  cert.detail = "pairs=" + std::to_string(cert.pairs) +
                " found=" + std::to_string(cert.found) +
                " inconclusive=" + std::to_string(cert.inconclusive) +
                " worst_conditioning=" + std::to_string(cert.worst_conditioning);
  return cert;
}

}  // namespace hsl
