// Monte Carlo certification of the two-sided eigenvalue-ratio bounds for
// differences of w_delta Hessians, the trace identities that drive them, and
// the scalar mu-difference bounds behind the proofs.
//
// The certified statement: for unit a and any nonzero b, orthogonal O with
// D = H_delta(a) - O^T H_delta(b) O nonzero, the extreme eigenvalues of D
// satisfy 1/C_delta <= Lambda_top / (-Lambda_bottom) <= C_delta with
//   C_delta = (26 + 3 delta - delta^2) / (1 - delta),
// and in eleven dimensions (Hessians compressed to a coordinate hyperplane,
// delta = 0) the same with C = 24. The |b|^(-delta) homogeneity factor is
// carried as a scalar K, so a sample is (a, bbar, K, O).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hsl/rational.hpp"
#include "hsl/sym_matrix.hpp"
#include "hsl/vec12.hpp"

namespace hsl {

double c_delta(double delta);          // (26 + 3d - d^2)/(1 - d)
inline constexpr double kC11 = 24.0;   // eleven-dimensional bound, delta = 0

// One difference-matrix instance. In dimension 11 both sites must lie in the
// coordinate hyperplane x_11 = 0 and delta must be 0; the Hessians are
// compressed by deleting row/column 11 and O is 11 x 11.
struct DifferenceSample {
  V12<double> a;                        // unit site
  V12<double> bbar;                     // unit direction of b
  double K = 1.0;                       // |b|^(-delta)
  std::vector<std::vector<double>> O;   // dim x dim orthogonal
  double delta = 0.0;
  int dim = 12;
};

// H_delta(a) - K O^T H_delta(bbar) O (compressed first in dimension 11).
SymMatrix<double> difference_matrix(const DifferenceSample& s);

struct RatioRecord {
  double top = 0.0, bottom = 0.0;  // extreme eigenvalues of the difference
  double ratio = 0.0;              // top / (-bottom)
  bool nonzero = false;            // difference distinguishable from 0
  bool in_range = false;           // ratio within [1/C - slack, C + slack]
};
RatioRecord ratio_record(const SymMatrix<double>& d, double c_bound, double slack);

struct ViolationRecord {
  std::uint64_t index = 0;     // sample index; with the run seed this replays
  std::uint64_t subseed = 0;
  std::string kind;            // sample family and which assertion failed
  double ratio = 0.0;
};

struct RatioCertificate {
  bool pass = false;
  std::uint64_t samples = 0;        // in-hypothesis nonzero differences
  std::uint64_t zero_flagged = 0;   // exact-cancellation draws, excluded
  std::uint64_t violations = 0;
  double min_ratio = 0.0, max_ratio = 0.0;
  double worst_slack = 0.0;         // min over samples of min(C - r, r - 1/C)
  // K values outside the delta = 0 hypothesis (scaled differences that are
  // not Hessian differences) are stressed but reported separately.
  std::uint64_t stress_samples = 0;
  double stress_min_ratio = 0.0, stress_max_ratio = 0.0;
  std::uint64_t stress_violations = 0;
  std::vector<ViolationRecord> detail;  // capped, sorted by sample index
};

// Deterministic in (seed, n_samples) for any worker count: sample i derives
// its generator from Rng::subseed(seed, i). The sampler mixes plain pairs,
// adversarial K near 1, correlated pairs (b near a, near-identity O), and a
// wide K sweep in [1e-3, 1e3]. Weyl consistency of the extreme eigenvalues
// and the delta = 0 trace proof-path inequality are checked on every sample.
RatioCertificate certify_ratio(double delta, int dim, std::uint64_t n_samples,
                               std::uint64_t seed, int workers, double slack);

// Trace of the difference against its closed form
//   -(1+d)(15-d) (P(a) - K P(bbar))        in dimension 12,
//   -14 (P(a) - K P(bbar))                 in dimension 11 at delta = 0.
struct TraceIdentityCheck {
  bool pass = false;
  double observed = 0.0, expected = 0.0, residual = 0.0;
};
TraceIdentityCheck trace_identity(const DifferenceSample& s, double tol);

// Exact rational forms of the same identities (conjugation drops out of the
// trace, so O does not appear). Sites must be exactly unit.
bool trace_identity_exact(const V12<Rational>& a, const V12<Rational>& bbar,
                          const Rational& K, const Rational& delta);
// Dimension 11: both sites in the coordinate hyperplane x_11 = 0, delta = 0;
// uses the compressed Hessians and the factor 14 closed form.
bool trace_identity_restricted_exact(const V12<Rational>& a,
                                     const V12<Rational>& bbar, const Rational& K);

// The delta = 0 display behind the trace bound, checked at a float sample:
// Tr(B - A) = 15(P(a) - P(b)) with A = H(a), B = O^T H(b) O, the matching
// Weyl-side inequality, and the scalar bound cos((arccos(3 sqrt3 W)+pi)/3)
// >= sqrt3 |W| at both sites.
struct MainLemmaCheck {
  bool pass = false;
  double trace_residual = 0.0;
  double weyl_slack = 0.0;      // slack of 15 dP <= 15 Lambda_1 (or >= Lambda_12 side)
  double lambda6_slack = 0.0;   // Lambda_1 - (lambda_6(A) - lambda_6(B))
  double cos_bound_slack = 0.0; // min over both sites of cos term - sqrt3 |W|
};
MainLemmaCheck main_lemma_display(const V12<double>& a, const V12<double>& b,
                                  const std::vector<std::vector<double>>& O,
                                  double tol);

// Scalar mu-difference bound: with mu_i(delta, W) the non-increasing roots of
// the shifted cubic, the differences d_i = mu_i(delta, W) - K mu_i(delta, Wbar)
// satisfy epsilon <= max(d) / (-min(d)) <= 1/epsilon,
// epsilon = (1 - delta)/(5 + delta). Throws std::domain_error when K = 1 and
// W = Wbar (the excluded degenerate input).
struct MuDifferenceCheck {
  bool pass = false;
  double mu_plus = 0.0, mu_minus = 0.0;
  double ratio = 0.0;
  double epsilon = 0.0;
};
MuDifferenceCheck mu_difference_bound(double W, double Wbar, double K, double delta,
                                      double slack);

// Elementary bound used by the proof: for l1 >= l2 >= l3 with
// t = l1 + l2 + l3 >= 0, l3 <= -h t and h > 0,
//   -l1/l3 lies in [h/(2h+1), (2h+1)/h]   (in [1/2, 2] when t = 0).
// Throws std::domain_error on precondition violations or the zero triple.
bool claim_check(double l1, double l2, double l3, double h);

}  // namespace hsl
