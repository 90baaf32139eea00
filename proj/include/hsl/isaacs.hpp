// Strict hyperbolicity of symmetric matrices, hyperbolicity of two-parameter
// pencils, and construction of a positive quadratic form with vanishing trace
// pairings against two given forms. Applied to pairs of Hessians of w_delta,
// the witness exhibits a common uniformly elliptic linear operator
// annihilating both, the algebraic heart of the Isaacs representation.
#pragma once

#include <cstdint>
#include <string>

#include "hsl/sym_matrix.hpp"

namespace hsl {

// Frobenius inner product Tr(A B) for symmetric A, B.
double trace_pairing(const SymMatrix<double>& a, const SymMatrix<double>& b);
double frobenius_norm(const SymMatrix<double>& a);

// A is strictly hyperbolic with modulus M > 1 when its extreme eigenvalues
// straddle zero and 1/M < -top/bottom < M.
struct HyperbolicityCertificate {
  double m_bound = 0.0;
  double top = 0.0;     // largest eigenvalue
  double bottom = 0.0;  // smallest eigenvalue
  double ratio = 0.0;   // -top/bottom when bottom < 0
  bool pass = false;
};
HyperbolicityCertificate strict_hyperbolicity(const SymMatrix<double>& a,
                                              double m_bound);

// Checks cos(theta) F1 + sin(theta) F2 for theta in [0, pi) on a uniform grid
// (homogeneity reduces all nonzero combinations to the half-circle), refines
// near the worst margins, and minimizes the pencil norm to detect a vanishing
// combination, which no modulus can rescue.
struct PencilReport {
  bool pass = false;
  bool degenerate = false;  // some combination vanishes
  double worst_ratio = 0.0;
  double worst_theta = 0.0;
  double min_norm_ratio = 0.0;  // min ||combination||_F / (||F1|| + ||F2||)
  std::size_t evaluations = 0;
};
PencilReport pencil_hyperbolic(const SymMatrix<double>& f1,
                               const SymMatrix<double>& f2, double m_bound,
                               std::size_t angular_grid);

// Maximizes lambda_min(Q) over the affine set
//   { Q symmetric : Tr Q = n, Tr(Q F1) = 0, Tr(Q F2) = 0 }
// by projected subgradient ascent with restarts. A positive minimum
// eigenvalue yields the witness; a stalled search is inconclusive, never a
// failure, because the claim is existential. An inconsistent constraint set
// (for instance F1 a multiple of the identity) is also inconclusive.
enum class WitnessStatus { kFound, kInconclusive };

struct PositiveWitness {
  WitnessStatus status = WitnessStatus::kInconclusive;
  SymMatrix<double> q{1};
  double min_eig = 0.0;
  double max_eig = 0.0;
  double residual1 = 0.0;  // |Tr(Q F1)|
  double residual2 = 0.0;  // |Tr(Q F2)|
  bool pass = false;  // found, and residuals <= tol * ||Q|| * ||Fi|| each
};
PositiveWitness find_positive_witness(const SymMatrix<double>& f1,
                                      const SymMatrix<double>& f2, double tol);

// Samples pairs of Hessians of w_delta at nonzero points of the closed unit
// ball (dimension 11 compresses to the hyperplane x_12 = 0 at delta = 0,
// matching the restricted reading) and, for each pair, checks the pencil and
// constructs the positive witness. Every eighth pair reuses y = x or y = -x,
// the single-constraint degenerate cases, where the pencil check is skipped
// because the pencil through F and -F vanishes at the midpoint angle.
struct IsaacsCertificate {
  bool pass = false;
  std::size_t pairs = 0;
  std::size_t found = 0;
  std::size_t inconclusive = 0;
  std::size_t pencil_checked = 0;
  double worst_conditioning = 0.0;    // max over witnesses of max_eig/min_eig
  double worst_residual = 0.0;        // max relative trace pairing
  double worst_pencil_ratio = 1.0;    // farthest ratio from 1 over all pencils
  // Definite failures: a pencil violation or a found witness whose trace
  // pairings miss the tolerance. Stalled searches count as inconclusive
  // instead, since an absent witness falsifies nothing.
  std::size_t hard_failures = 0;
  std::string detail;
};
IsaacsCertificate isaacs_check(double delta, int dim, std::size_t n_pairs,
                               std::uint64_t seed);

}  // namespace hsl
