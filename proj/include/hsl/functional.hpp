// The Hessian functional F vanishing on the spectra of D^2 w_delta: a convex
// cone K around the diagonal direction, its support gauge e, the Lipschitz
// inf-convolution extension gtilde of the sampled spectrum graph, evaluation
// F(S) = s - gtilde(z) on sorted spectra, ellipticity-constant estimation,
// and viscosity touching tests.
//
// The construction rests on the certified two-sided ratio bound for Hessian
// differences: sorted-spectrum differences of two graph points avoid +-K, so
// the graph is a Lipschitz function of the diagonal-orthogonal coordinates
// and extends to all of R^n without moving its zero level.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hsl/sym_matrix.hpp"
#include "hsl/vec12.hpp"

namespace hsl {

// Cone aperture: 26 in dimension 12 at delta = 0 and 24 in dimension 11;
// for delta > 0 widened to sqrt(12 C_delta) when needed, so that
// n * C_delta <= lambda^2 keeps every spectral-difference pair outside the
// cone.
double cone_lambda(double delta, int dim);

struct LambdaCone {
  double lambda = 26.0;
  int dim = 12;
};

// phi(y) = sum_i min(y_i / lambda, lambda * y_i): concave and positively
// homogeneous; y lies in the closed cone iff phi(y) >= 0. The cone is dual
// to the positive vectors with entry ratio at most lambda^2; it contains the
// nonnegative orthant.
double cone_margin(const LambdaCone& cone, const std::vector<double>& y);
bool cone_contains(const LambdaCone& cone, const std::vector<double>& y);

// Symmetric Householder reflection exchanging the diagonal direction
// u = (1,...,1)/sqrt(n) with the last coordinate axis. Coordinates of x are
// (z, s) with s = <x, u> and z the first n-1 entries of the reflected vector.
struct DiagonalFrame {
  explicit DiagonalFrame(int n_);
  int n;
  std::vector<double> v;  // u - e_n
  double v2;              // |v|^2
  std::vector<double> apply(const std::vector<double>& x) const;
  void to_coords(const std::vector<double>& x, std::vector<double>& z, double& s) const;
  std::vector<double> from_coords(const std::vector<double>& z, double s) const;
};

// e(z) = inf{c : z + c u in K}, the unique root in c of the strictly
// increasing concave map c -> phi(z + c u), located by bracketed bisection.
// Convex, positively homogeneous, e(0) = 0, subadditive; e(z) > 0 for every
// nonzero z orthogonal to u (no such z lies in K).
double support_e(const LambdaCone& cone, const DiagonalFrame& frame,
                 const std::vector<double>& z, double tol = 1e-14);

struct GraphSample {
  std::array<double, 4> theta{};  // (r0, m, n, c) with c = |X|^(-delta)
  std::vector<double> spectrum;   // sorted non-increasing
  std::vector<double> z;
  double s = 0.0;
};

struct SampledGraph {
  int dim = 12;
  double delta = 0.0;
  std::uint64_t seed = 0;
  LambdaCone cone;
  std::vector<GraphSample> samples;
};

// Sorted spectra of D^2 w_delta at random sites with |X| in [1/2, 1]
// (homogeneity covers the rest of the punctured space); dimension 11 uses
// Hessians compressed to the coordinate hyperplane x_12 = 0 with sites inside
// it, at delta = 0. Only sorted representatives are stored; permuted copies
// share the diagonal component s and are exercised by the pairwise check.
SampledGraph build_graph(double delta, int dim, std::size_t n_samples,
                         std::uint64_t seed);

// Minimum over sampled ordered pairs (optionally with random permuted copies)
// of e(z - zhat) - (s - shat). The cone condition demands a nonnegative value
// up to float noise; -1e-9 is the acceptance floor.
double pairwise_condition_slack(const SampledGraph& graph, std::size_t n_pairs,
                                std::uint64_t seed, bool with_permutations);

// gtilde(z) = inf over stored samples w of g(w) + e(z - w). Lipschitz with
// the cone constant; reproduces g at stored points within the pairwise slack.
// Throws std::domain_error on an empty graph.
double extend_g(const SampledGraph& graph, const std::vector<double>& z);

struct HessianFunctional {
  SampledGraph graph;
};

// F(S) = s - gtilde(z) on the sorted spectrum of S; invariant under
// orthogonal conjugation and coordinate permutation by construction.
// Evaluating the sorted representative realizes the symmetrized functional:
// the full sum over S_n rescales values by a constant factor, which moves
// neither the zero level nor ellipticity ratios.
double eval_F(const HessianFunctional& fn, const SymMatrix<double>& s);
double eval_F_spectrum(const HessianFunctional& fn,
                       const std::vector<double>& spectrum_sorted);

// Zero-level evaluation with refinement over the invariant parametrization
// theta = (r0, m, n, c) of the spectra family (exact for dimension 12, a
// canonical subfamily in dimension 11): Nelder-Mead descents on
// g(theta) + e(z - z(theta)), seeded from the best stored samples and, when
// given, from the evaluation site's own chart. A small |value| certifies
// both attainment of the inf and the absence of lower graph points near z.
struct RefinedValue {
  double value = 0.0;            // refined F
  double f_stored = 0.0;         // stored-inf F, nonpositive up to sample gap
  std::array<double, 4> theta_best{};
};
RefinedValue eval_F_refined(const HessianFunctional& fn,
                            const std::vector<double>& spectrum_sorted,
                            const std::array<double, 4>* hint);

// Difference quotients (F(S+N) - F(S)) / |N| over random S and random
// N >= 0 (every tenth trial N = c I); c_hat = max(sup q, sup 1/q) is the
// empirical two-sided ellipticity constant.
struct EllipticityEstimate {
  double c_hat = 0.0;
  double max_quotient = 0.0;
  double min_quotient = 0.0;
  std::size_t trials = 0;
  bool monotone = true;  // F(S+N) > F(S) strictly on every trial
};
EllipticityEstimate estimate_ellipticity(const HessianFunctional& fn,
                                         std::size_t n_trials, std::uint64_t seed);

// Quadratics p touching w_delta at x0 from below/above, touching verified on
// a discrete ball mesh (dyadic radius shells, quasi-random directions,
// clusters near the touch site): sign(F(D^2 p)) must match the touching side,
// the exact second-order jet sits on the zero level, and for delta > 0 the
// report exhibits a sign change of w_delta - p in dyadic shells around the
// origin for quadratics pinned at 0.
struct ViscosityReport {
  bool pass = false;
  std::size_t below_count = 0;
  std::size_t above_count = 0;
  double max_f_below = 0.0;  // most positive F over below-touching quadratics
  double min_f_above = 0.0;  // most negative F over above-touching quadratics
  double jet_residual = 0.0;
  bool sign_change_witnessed = false;
  std::string detail;
};
ViscosityReport viscosity_touch_test(const HessianFunctional& fn,
                                     const V12<double>& x0,
                                     std::size_t n_quadratics, std::uint64_t seed,
                                     double tol);

// Binary graph record ("HSLG", version, dim, delta, seed, lambda, count,
// little-endian doubles) plus a JSON sidecar at path + ".json" carrying
// delta, dim, seed, count, and the cone ratio.
void save_graph(const SampledGraph& graph, const std::string& path);
SampledGraph load_graph(const std::string& path);

}  // namespace hsl
