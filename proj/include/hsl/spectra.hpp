// Dense symmetric eigensolver and spectral sampling helpers.
//
// Eigenvalues come from cyclic Jacobi, which is accurate to a small multiple
// of machine epsilon times the spectral norm for the sizes used here
// (n <= 64, mostly 11/12). Spectra are always reported sorted non-increasing
// to match the lambda_1 >= ... >= lambda_n convention used everywhere else.
#pragma once

#include <cstddef>
#include <vector>

#include "hsl/rng.hpp"
#include "hsl/sym_matrix.hpp"

namespace hsl {

struct EigenResult {
  std::vector<double> values;                // sorted non-increasing
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]
};

EigenResult eigen_sym(const SymMatrix<double>& a, bool with_vectors = false);

// Values only, sorted non-increasing.
std::vector<double> eigenvalues(const SymMatrix<double>& a);

// max |eigenvalue| = operator norm for symmetric a.
double spectral_radius(const SymMatrix<double>& a);

// Square orthogonal matrix sampled from the Haar measure: QR of an iid
// Gaussian matrix with the R-diagonal sign fix. Row-major, o[i][j] = O_ij.
// Deterministic in the generator state.
std::vector<std::vector<double>> haar_orthogonal(std::size_t n, Rng& rng);

// Conjugation O^T a O (spectrum-preserving for orthogonal O).
SymMatrix<double> conjugate_by(const SymMatrix<double>& a,
                               const std::vector<std::vector<double>>& o);

// Eigenvalue scaling under the radial dilation x -> rho x of a point where
// the Hessian of w_delta was computed: every eigenvalue picks up rho^-delta.
std::vector<double> radial_spectrum(const std::vector<double>& unit_values,
                                    double rho, double delta);

// Weyl's inequalities for the difference A - B in terms of the sorted
// spectra alpha, beta of A and B:
//   Lambda_1(A - B) >= max_i (alpha_i - beta_i),
//   Lambda_n(A - B) <= min_i (alpha_i - beta_i).
struct WeylBounds {
  double top_at_least;     // lower bound on Lambda_1
  double bottom_at_most;   // upper bound on Lambda_n
};
WeylBounds weyl_difference_bounds(const std::vector<double>& alpha,
                                  const std::vector<double>& beta);

}  // namespace hsl
