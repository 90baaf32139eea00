// Verifiers for the algebraic structure of the Hessian spectrum of w_delta:
// the exact characteristic-polynomial factorization, the interlacing chain
// between the cubic and sextic root families, the double-eigenvalue
// positions by parameter region, the resultant closed form, and the
// two-point separation inequality.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hsl/check_status.hpp"
#include "hsl/rational.hpp"
#include "hsl/sym_matrix.hpp"
#include "hsl/vec12.hpp"

namespace hsl {

// charpoly(H_delta(a)) == p1^2 * p2 with coefficients evaluated at the
// invariants of a. Exact: every residual is a rational that must vanish.
struct FactorizationCheck {
  bool pass = false;
  Rational W, L, M;
  // residuals[k] = coefficient of T^k in charpoly - p1^2 p2; all zero on pass.
  std::vector<Rational> residuals;
  std::string detail;  // empty on pass
};

// Requires |a| = 1 exactly; throws std::domain_error otherwise.
FactorizationCheck verify_factorization(const V12<Rational>& a, const Rational& delta);

// At a complex site the Hessian splits into two 6x6 blocks; the
// characteristic polynomial must be the product of the block polynomials,
// and the quaternion-coordinate block alone must account for one p1 factor.
FactorizationCheck verify_block_factorization(const V12<Rational>& a, const Rational& delta);

// Interlacing of the cubic roots mu_1 >= mu_2 >= mu_3 and sextic roots
// nu_1 >= ... >= nu_6:
//   mu_1 >= nu_1 >= nu_2 >= nu_3 >= mu_2 >= nu_4 >= nu_5 >= nu_6 >= mu_3.
// Slack is the smallest of the eight differences (negative = violated).
struct InterlacingCheck {
  bool pass = false;
  double min_slack = 0.0;            // over the eight chain inequalities
  std::array<double, 3> mu{};        // cubic roots, non-increasing
  std::array<double, 6> nu{};        // sextic roots, non-increasing
  std::array<double, 12> merged{};   // mu each twice + nu, sorted non-increasing
  double float_gap = 0.0;            // max |merged - eigensolver| at the site
  std::string detail;
};

// Exact site: both root families from Sturm bisection on exact coefficients,
// cubic roots cross-checked against the trigonometric solver.
InterlacingCheck verify_interlacing(const V12<Rational>& a, const Rational& delta,
                                    double slack_tol);

// Float site given by invariants (r0, m, n): coefficients are built from the
// nearest rationals, so the Sturm step is still exact.
InterlacingCheck verify_interlacing_at(double r0, double m, double n, double delta,
                                       double slack_tol);

// lambda_6 = lambda_7 = (2/sqrt 3) cos((arccos(3 sqrt 3 W) + pi)/3) - W at
// delta = 0, checked against the eigensolver.
struct Lambda67Check {
  bool pass = false;
  double closed_form = 0.0;   // the displayed cos expression
  double lambda6 = 0.0, lambda7 = 0.0;
  double deviation = 0.0;     // max |lambda_i - closed_form|, i in {6,7}
};
Lambda67Check verify_lambda67(const V12<double>& a, double tol);

// Exact multiplicity of the double root: p1^2 divides the characteristic
// polynomial and p1 divides its derivative. Both divisions are exact.
struct MultiplicityCheck {
  bool pass = false;
  bool p1_squared_divides = false;
  bool p1_divides_derivative = false;
};
MultiplicityCheck verify_double_root_multiplicity(const V12<Rational>& a,
                                                  const Rational& delta);

// Parameter region of the invariant triple. B_ZERO is the boundary set
// (invariant sphere r0^2 + m^2 + n^2 = 1, coordinate planes mn = 0, and the
// locus |W| = W_0(delta)); B_PLUS is |W| > W_0(delta) inside the ball and
// B_MINUS is |W| < W_0(delta) inside it. The classification is by the exact
// sign of the resultant: positive on B_PLUS, negative on B_MINUS, zero on
// B_ZERO.
enum class RegionLabel { B_PLUS, B_MINUS, B_ZERO };

struct PositionCheck {
  bool pass = false;
  RegionLabel region = RegionLabel::B_ZERO;
  int w_sign = 0;
  // 1-based index pair where mu_2 sits in the sorted spectrum
  // lambda_1 >= ... >= lambda_12: (5,6) on closure(B_PLUS) with W >= 0,
  // (7,8) on closure(B_PLUS) with W <= 0, (6,7) on closure(B_MINUS).
  std::array<int, 2> mu2_positions{};
  double mu2_deviation = 0.0;   // max |lambda_pos - mu_2| over the pair
  double edge_deviation = 0.0;  // lambda_{1,2} vs mu_1 and lambda_{11,12} vs mu_3
  std::string detail;
};

// Exact region from rational invariants, then float verification of the
// eigenvalue positions at the canonical site of those invariants.
PositionCheck classify_and_verify_position(const Rational& r0, const Rational& m,
                                           const Rational& n, const Rational& delta,
                                           double tol);

// Sylvester resultant of (p1, p2) against the closed-form candidates.
struct ResultantCheck {
  bool pass = false;
  Rational sylvester;
  bool matches_closed = false;             // 16 (M - W^2)^3 R(W, delta)
  bool matches_quartic_prefactor = false;  // 16 m^4 n^4 (1-r0^2-m^2-n^2)^3 R
  bool matches_quadratic_prefactor = false;
  int sign = 0;
  std::string detail;
};

// pass = the Sylvester value matches the closed form exactly, and its sign
// is negative at interior points with mn != 0, zero on the boundary set.
ResultantCheck verify_resultant_identity(const Rational& r0, const Rational& m,
                                         const Rational& n, const Rational& delta);

// Separation of two-point Hessians by second derivatives in directions
// orthogonal to both points:
//   max_{unit e perp a,b} |e^T (H_delta(a) - H_delta(b)) e| >= |a - b|/sqrt 3.
struct SeparationCheck {
  CheckStatus status = CheckStatus::INCONCLUSIVE;
  double bound = 0.0;            // |a - b|/sqrt 3
  double best_witness = 0.0;     // best |e^T D e| found by ascent
  double oracle = 0.0;           // spectral radius of D compressed to {a,b}^perp
  std::vector<double> witness_e; // the maximizing direction found
};

// Ascent with the given number of random restarts; the exact oracle value is
// computed alongside as a cross-check (witness <= oracle always). A stalled
// search yields INCONCLUSIVE, never FAIL: the claim is existential.
SeparationCheck separation_check(const V12<double>& a, const V12<double>& b,
                                 double delta, int restarts, std::uint64_t seed,
                                 double tol);

}  // namespace hsl
