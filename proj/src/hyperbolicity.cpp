#include "hsl/hyperbolicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "hsl/cubic_form.hpp"
#include "hsl/hessian.hpp"
#include "hsl/poly_families.hpp"
#include "hsl/rng.hpp"
#include "hsl/spectra.hpp"

namespace hsl {

namespace {

constexpr double kZeroEntryTol = 1e-12;

double max_abs_entry(const SymMatrix<double>& m) {
  double v = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i; j < m.size(); ++j) v = std::max(v, std::abs(m.at(i, j)));
  return v;
}

V12<double> draw_unit(Rng& g, int dim) {
  for (;;) {
    V12<double> v;
    for (std::size_t i = 0; i < 12; ++i) v[i] = g.gaussian();
    if (dim == 11) v[11] = 0.0;
    double n2 = norm2(v);
    if (n2 > 1e-6) return scale(1.0 / std::sqrt(n2), v);
  }
}

std::vector<std::vector<double>> identity_matrix(int dim) {
  std::vector<std::vector<double>> o(dim, std::vector<double>(dim, 0.0));
  for (int i = 0; i < dim; ++i) o[i][i] = 1.0;
  return o;
}

// Rotation by a small angle in a random coordinate plane: stays near the
// identity, which is where difference cancellations are most delicate.
std::vector<std::vector<double>> small_rotation(int dim, Rng& g, double angle_scale) {
  auto o = identity_matrix(dim);
  int i = static_cast<int>(g.below(static_cast<std::uint64_t>(dim)));
  int j = static_cast<int>(g.below(static_cast<std::uint64_t>(dim - 1)));
  if (j >= i) ++j;
  double theta = angle_scale * g.uniform();
  o[i][i] = std::cos(theta);
  o[j][j] = std::cos(theta);
  o[i][j] = std::sin(theta);
  o[j][i] = -std::sin(theta);
  return o;
}

void require_dim(int dim, double delta) {
  if (dim != 11 && dim != 12) throw std::invalid_argument("dim must be 11 or 12");
  if (!(delta >= 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in [0, 1)");
  if (dim == 11 && delta != 0.0)
    throw std::invalid_argument("dimension 11 is certified at delta = 0 only");
}

void require_near_unit(const V12<double>& x, const char* who) {
  if (std::abs(norm2(x) - 1.0) > 1e-9) throw std::domain_error(std::string(who) + ": site must be unit");
}

double trace_factor(int dim, double delta) {
  return (1.0 + delta) * ((dim == 12 ? 15.0 : 14.0) - delta);
}

struct LocalStats {
  std::uint64_t samples = 0;
  std::uint64_t zero_flagged = 0;
  std::uint64_t violations = 0;
  std::uint64_t stress_samples = 0;
  std::uint64_t stress_violations = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = -std::numeric_limits<double>::infinity();
  double worst_slack = std::numeric_limits<double>::infinity();
  double stress_min = std::numeric_limits<double>::infinity();
  double stress_max = -std::numeric_limits<double>::infinity();
  std::vector<ViolationRecord> detail;
};

struct SampleConfig {
  double delta;
  int dim;
  double c_bound;
  double slack;
  std::uint64_t seed;
};

// One sample, fully determined by (seed, index): draws the pair, evaluates
// the difference spectrum, and checks ratio, Weyl consistency, the trace
// closed form, and the nonnegative-trace proof path.
void evaluate_sample(std::uint64_t index, const SampleConfig& cfg, LocalStats& st) {
  const std::uint64_t sub = Rng::subseed(cfg.seed, index);
  Rng g(sub);
  const int dim = cfg.dim;
  const double delta = cfg.delta;

  V12<double> a = draw_unit(g, dim);
  V12<double> b;
  double K = 1.0;
  std::vector<std::vector<double>> O;
  bool in_hyp = true;
  const char* kind = "plain";

  const std::uint64_t roll = g.below(20);
  if (roll < 14) {
    // Plain pair: independent sites, |b| log-uniform in [1, 100].
    b = draw_unit(g, dim);
    K = std::pow(std::exp(g.uniform() * std::log(100.0)), -delta);
    O = haar_orthogonal(dim, g);
  } else if (roll < 16) {
    // Scaling adversarially close to 1, where both extremes of the
    // difference pass through zero together.
    kind = "adversarial-k";
    b = draw_unit(g, dim);
    int k = 1 + static_cast<int>(g.below(12));
    K = g.below(2) ? 1.0 + std::pow(10.0, -k) : 1.0 - std::pow(10.0, -k);
    O = haar_orthogonal(dim, g);
    in_hyp = delta > 0.0;
  } else if (roll < 19) {
    // Correlated pair: b clings to a (or its antipode), O near or at the
    // identity, so the difference is small but must keep its ratio.
    kind = "correlated";
    switch (g.below(3)) {
      case 0: {
        int e = 1 + static_cast<int>(g.below(6));
        b = normalized(add(a, scale(std::pow(10.0, -e), draw_unit(g, dim))));
        break;
      }
      case 1:
        b = scale(-1.0, a);
        break;
      default:
        b = a;
        break;
    }
    switch (g.below(3)) {
      case 0:
        O = haar_orthogonal(dim, g);
        break;
      case 1:
        O = small_rotation(dim, g, 1e-3);
        break;
      default:
        O = identity_matrix(dim);
        break;
    }
    if (delta > 0.0) K = std::pow(std::exp(g.uniform() * std::log(100.0)), -delta);
  } else {
    // Wide scaling sweep; out of hypothesis at delta = 0 where only K = 1
    // arises from a Hessian pair.
    kind = "wide-k";
    b = draw_unit(g, dim);
    K = std::exp((2.0 * g.uniform() - 1.0) * std::log(1000.0));
    O = haar_orthogonal(dim, g);
    in_hyp = delta > 0.0;
  }

  SymMatrix<double> A = hessian_at_unit(a, delta);
  SymMatrix<double> Bu = hessian_at_unit(b, delta);
  if (dim == 11) {
    A = delete_coordinate(A, 11);
    Bu = delete_coordinate(Bu, 11);
  }
  SymMatrix<double> D = sym_sub(A, conjugate_by(sym_scale(K, Bu), O));

  if (max_abs_entry(D) <= kZeroEntryTol * std::max(1.0, K)) {
    ++st.zero_flagged;
    return;
  }

  std::vector<double> lam = eigenvalues(D);
  const double top = lam.front();
  const double bottom = lam.back();
  const double ratio =
      bottom < 0.0 ? top / (-bottom) : std::numeric_limits<double>::infinity();
  const bool hyperbolic = top > 0.0 && bottom < 0.0;
  const bool in_range = hyperbolic && ratio >= 1.0 / cfg.c_bound - cfg.slack &&
                        ratio <= cfg.c_bound + cfg.slack;

  if (!in_hyp) {
    ++st.stress_samples;
    st.stress_min = std::min(st.stress_min, ratio);
    st.stress_max = std::max(st.stress_max, ratio);
    if (!in_range) ++st.stress_violations;
    return;
  }

  ++st.samples;
  st.min_ratio = std::min(st.min_ratio, ratio);
  st.max_ratio = std::max(st.max_ratio, ratio);
  st.worst_slack =
      std::min(st.worst_slack, std::min(cfg.c_bound - ratio, ratio - 1.0 / cfg.c_bound));

  auto violate = [&](const char* what) {
    ++st.violations;
    if (st.detail.size() < 8)
      st.detail.push_back({index, sub, std::string(kind) + ":" + what, ratio});
  };

  if (!in_range) violate("ratio");

  std::vector<double> alpha = eigenvalues(A);
  std::vector<double> beta = eigenvalues(Bu);
  for (double& x : beta) x *= K;
  WeylBounds wb = weyl_difference_bounds(alpha, beta);
  const double wtol =
      1e-9 * std::max(1.0, std::abs(alpha.front()) + std::abs(beta.front()) +
                               std::abs(alpha.back()) + std::abs(beta.back()));
  if (top < wb.top_at_least - wtol || bottom > wb.bottom_at_most + wtol) violate("weyl");

  const double expected = -trace_factor(dim, delta) * (cubic_form(a) - K * cubic_form(b));
  if (std::abs(D.trace() - expected) > 1e-9 * std::max(1.0, K)) violate("trace");

  if (delta == 0.0 && K == 1.0 && D.trace() >= 0.0) {
    if ((dim - 1) * top < -bottom - 1e-9) violate("proof-path");
  }
}

void merge(RatioCertificate& out, const LocalStats& st) {
  out.samples += st.samples;
  out.zero_flagged += st.zero_flagged;
  out.violations += st.violations;
  out.stress_samples += st.stress_samples;
  out.stress_violations += st.stress_violations;
  out.min_ratio = std::min(out.min_ratio, st.min_ratio);
  out.max_ratio = std::max(out.max_ratio, st.max_ratio);
  out.worst_slack = std::min(out.worst_slack, st.worst_slack);
  out.stress_min_ratio = std::min(out.stress_min_ratio, st.stress_min);
  out.stress_max_ratio = std::max(out.stress_max_ratio, st.stress_max);
  out.detail.insert(out.detail.end(), st.detail.begin(), st.detail.end());
}

}  // namespace

double c_delta(double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) throw std::invalid_argument("c_delta: delta in [0, 1)");
  return (26.0 + 3.0 * delta - delta * delta) / (1.0 - delta);
}

SymMatrix<double> difference_matrix(const DifferenceSample& s) {
  require_dim(s.dim, s.delta);
  require_near_unit(s.a, "difference_matrix");
  require_near_unit(s.bbar, "difference_matrix");
  if (!(s.K > 0.0)) throw std::domain_error("difference_matrix: K must be positive");
  if (s.O.size() != static_cast<std::size_t>(s.dim))
    throw std::invalid_argument("difference_matrix: O has wrong size");
  if (s.dim == 11 && (s.a[11] != 0.0 || s.bbar[11] != 0.0))
    throw std::domain_error("difference_matrix: dimension 11 sites must have x_11 = 0");
  SymMatrix<double> A = hessian_at_unit(s.a, s.delta);
  SymMatrix<double> B = hessian_at_unit(s.bbar, s.delta);
  if (s.dim == 11) {
    A = delete_coordinate(A, 11);
    B = delete_coordinate(B, 11);
  }
  return sym_sub(A, conjugate_by(sym_scale(s.K, B), s.O));
}

RatioRecord ratio_record(const SymMatrix<double>& d, double c_bound, double slack) {
  RatioRecord r;
  r.nonzero = max_abs_entry(d) > kZeroEntryTol;
  std::vector<double> lam = eigenvalues(d);
  r.top = lam.front();
  r.bottom = lam.back();
  r.ratio = r.bottom < 0.0 ? r.top / (-r.bottom) : std::numeric_limits<double>::infinity();
  r.in_range = r.nonzero && r.top > 0.0 && r.bottom < 0.0 &&
               r.ratio >= 1.0 / c_bound - slack && r.ratio <= c_bound + slack;
  return r;
}

RatioCertificate certify_ratio(double delta, int dim, std::uint64_t n_samples,
                               std::uint64_t seed, int workers, double slack) {
  require_dim(dim, delta);
  if (slack < 0.0) throw std::invalid_argument("certify_ratio: slack must be >= 0");
  const int nw = std::max(1, workers);
  const SampleConfig cfg{delta, dim, dim == 11 ? kC11 : c_delta(delta), slack, seed};

  std::vector<LocalStats> locals(static_cast<std::size_t>(nw));
  if (nw == 1) {
    for (std::uint64_t i = 0; i < n_samples; ++i) evaluate_sample(i, cfg, locals[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nw));
    for (int w = 0; w < nw; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t i = static_cast<std::uint64_t>(w); i < n_samples;
             i += static_cast<std::uint64_t>(nw))
          evaluate_sample(i, cfg, locals[static_cast<std::size_t>(w)]);
      });
    }
    for (auto& t : pool) t.join();
  }

  RatioCertificate out;
  out.min_ratio = std::numeric_limits<double>::infinity();
  out.max_ratio = -std::numeric_limits<double>::infinity();
  out.worst_slack = std::numeric_limits<double>::infinity();
  out.stress_min_ratio = std::numeric_limits<double>::infinity();
  out.stress_max_ratio = -std::numeric_limits<double>::infinity();
  for (const LocalStats& st : locals) merge(out, st);
  std::sort(out.detail.begin(), out.detail.end(),
            [](const ViolationRecord& x, const ViolationRecord& y) { return x.index < y.index; });
  if (out.detail.size() > 32) out.detail.resize(32);
  if (out.samples == 0) {
    out.min_ratio = out.max_ratio = out.worst_slack = 0.0;
  }
  if (out.stress_samples == 0) {
    out.stress_min_ratio = out.stress_max_ratio = 0.0;
  }
  out.pass = out.samples > 0 && out.violations == 0;
  return out;
}

TraceIdentityCheck trace_identity(const DifferenceSample& s, double tol) {
  TraceIdentityCheck c;
  c.observed = difference_matrix(s).trace();
  c.expected = -trace_factor(s.dim, s.delta) * (cubic_form(s.a) - s.K * cubic_form(s.bbar));
  c.residual = std::abs(c.observed - c.expected);
  c.pass = c.residual <= tol * std::max(1.0, s.K);
  return c;
}

bool trace_identity_exact(const V12<Rational>& a, const V12<Rational>& bbar,
                          const Rational& K, const Rational& delta) {
  if (norm2(a) != Rational(1) || norm2(bbar) != Rational(1))
    throw std::domain_error("trace_identity_exact: sites must be unit");
  Rational lhs = hessian_at_unit(a, delta).trace() - K * hessian_at_unit(bbar, delta).trace();
  Rational rhs = -(Rational(1) + delta) * (Rational(15) - delta) *
                 (cubic_form(a) - K * cubic_form(bbar));
  return lhs == rhs;
}

bool trace_identity_restricted_exact(const V12<Rational>& a, const V12<Rational>& bbar,
                                     const Rational& K) {
  if (norm2(a) != Rational(1) || norm2(bbar) != Rational(1))
    throw std::domain_error("trace_identity_restricted_exact: sites must be unit");
  if (a[11] != Rational(0) || bbar[11] != Rational(0))
    throw std::domain_error("trace_identity_restricted_exact: sites must have x_11 = 0");
  Rational zero(0);
  Rational lhs = delete_coordinate(hessian_at_unit(a, zero), 11).trace() -
                 K * delete_coordinate(hessian_at_unit(bbar, zero), 11).trace();
  Rational rhs = Rational(-14) * (cubic_form(a) - K * cubic_form(bbar));
  return lhs == rhs;
}

MainLemmaCheck main_lemma_display(const V12<double>& a, const V12<double>& b,
                                  const std::vector<std::vector<double>>& O, double tol) {
  require_near_unit(a, "main_lemma_display");
  require_near_unit(b, "main_lemma_display");
  if (O.size() != 12) throw std::invalid_argument("main_lemma_display: O must be 12 x 12");

  MainLemmaCheck c;
  SymMatrix<double> A = hessian_at_unit(a, 0.0);
  SymMatrix<double> B = conjugate_by(hessian_at_unit(b, 0.0), O);
  const double pa = cubic_form(a);
  const double pb = cubic_form(b);
  const double dp = pa - pb;

  c.trace_residual = std::abs((B.trace() - A.trace()) - 15.0 * (pa - pb));

  std::vector<double> lam = eigenvalues(sym_sub(A, B));
  const double l6a = mu_roots(pa, 0.0)[1];
  const double l6b = mu_roots(pb, 0.0)[1];
  if (dp >= 0.0) {
    c.weyl_slack = lam.front() - dp;
    c.lambda6_slack = lam.front() - (l6a - l6b);
  } else {
    c.weyl_slack = dp - lam.back();
    c.lambda6_slack = (l6a - l6b) - lam.back();
  }

  const double s3 = std::sqrt(3.0);
  auto cos_slack = [&](double w) {
    double x = std::clamp(3.0 * s3 * w, -1.0, 1.0);
    return std::cos((std::acos(x) + M_PI) / 3.0) - s3 * w;
  };
  c.cos_bound_slack = std::min(cos_slack(std::abs(pa)), cos_slack(std::abs(pb)));

  c.pass = c.trace_residual <= tol && c.weyl_slack >= -tol && c.lambda6_slack >= -tol &&
           c.cos_bound_slack >= -1e-12;
  return c;
}

MuDifferenceCheck mu_difference_bound(double W, double Wbar, double K, double delta,
                                      double slack) {
  if (!(K > 0.0)) throw std::domain_error("mu_difference_bound: K must be positive");
  if (!(delta >= 0.0 && delta < 1.0))
    throw std::invalid_argument("mu_difference_bound: delta in [0, 1)");
  if (K == 1.0 && W == Wbar)
    throw std::domain_error("mu_difference_bound: K = 1 with W = Wbar is excluded");

  std::array<double, 3> mu = mu_roots(W, delta);
  std::array<double, 3> mubar = mu_roots(Wbar, delta);
  MuDifferenceCheck c;
  c.epsilon = (1.0 - delta) / (5.0 + delta);
  c.mu_plus = -std::numeric_limits<double>::infinity();
  c.mu_minus = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    double d = mu[i] - K * mubar[i];
    c.mu_plus = std::max(c.mu_plus, d);
    c.mu_minus = std::min(c.mu_minus, d);
  }
  c.ratio = c.mu_minus < 0.0 ? c.mu_plus / (-c.mu_minus)
                             : std::numeric_limits<double>::infinity();
  c.pass = c.mu_plus > 0.0 && c.mu_minus < 0.0 && c.ratio >= c.epsilon - slack &&
           c.ratio <= 1.0 / c.epsilon + slack;
  return c;
}

bool claim_check(double l1, double l2, double l3, double h) {
  if (!(h > 0.0)) throw std::domain_error("claim_check: h must be positive");
  if (!(l1 >= l2 && l2 >= l3)) throw std::domain_error("claim_check: need l1 >= l2 >= l3");
  const double t = l1 + l2 + l3;
  const double scale = std::max({std::abs(l1), std::abs(l3), 1.0});
  if (t < -1e-12 * scale) throw std::domain_error("claim_check: need l1 + l2 + l3 >= 0");
  if (l3 > -h * std::max(t, 0.0)) throw std::domain_error("claim_check: need l3 <= -h t");
  if (l1 == 0.0 && l3 == 0.0) throw std::domain_error("claim_check: zero triple");

  double lo, hi;
  if (std::abs(t) <= 1e-12 * scale) {
    lo = 0.5;
    hi = 2.0;
  } else {
    lo = h / (2.0 * h + 1.0);
    hi = (2.0 * h + 1.0) / h;
  }
  const double r = -l1 / l3;
  return r >= lo - 1e-12 && r <= hi + 1e-12;
}

}  // namespace hsl
