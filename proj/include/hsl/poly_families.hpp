#pragma once

// Closed forms attached to the Hessian spectrum of w_delta = P(X)/|X|^(1+delta).
//
// At a unit point a the characteristic polynomial of D^2 w_delta(a) factors as
// P_1(T)^2 * P_2(T) where P_1 is a cubic and P_2 a sextic in T whose
// coefficients are polynomials in the invariants
//   W = P(a),  m = |s|,  n = |t|,
//   L = m^2 + n^2 - m^2 n^2 - m^4 - n^4,
//   M = m^2 n^2 (1 - m^2 - n^2).
// This header exposes those families, their shifted variants, the splittings
// they undergo on the invariant-sphere and coordinate-plane boundaries, and
// the closed form of Res(P_1, P_2) together with the threshold W_0(delta)
// where that resultant changes sign.

#include <array>

#include "hsl/rational.hpp"
#include "hsl/unipoly.hpp"

namespace hsl {

// Cubic factor P_1(T) = Q_1(T + (1+delta) W) where Q_1(X) = X^3 - X + 2W:
//   T^3 + 3W(1+d)T^2 + (3W^2(1+d)^2 - 1)T + W(1-d) + W^3(1+d)^3.
UniPoly p1_family(const Rational& W, const Rational& delta);

// Sextic factor P_2(T) of the degree-12 characteristic polynomial.
UniPoly p2_family(const Rational& W, const Rational& L, const Rational& M,
                  const Rational& delta);

// Standalone expansion of the sextic at delta = 0; p2_family(W, L, M, 0) must
// agree with it coefficientwise.
UniPoly p2_zero_display(const Rational& W, const Rational& L, const Rational& M);

// Q_1(X) = X^3 - X + 2W. Its roots are mu_i + (1+delta) W.
UniPoly q1_shifted(const Rational& W);

// Q_2(X) = P_2(X - W) at delta = 0, written in closed form:
//   X^6 + 3WX^5 - (9W^2 - 3L + 2)X^4 - 6WLX^3 + (6W^2 - 3L + 9M + 1)X^2
//   - 3(6M - 4L + 1)WX + 3W^2 - 12LW^2 - M.
UniPoly q2_shifted_display(const Rational& W, const Rational& L, const Rational& M);

// On the invariant sphere r0^2 + m^2 + n^2 = 1 the shifted sextic splits:
//   Q_2 = (X^3 - X + 2W)(X^3 + 3WX^2 - (9W^2 + 1 - 3L)X + W - 6WL).
std::array<UniPoly, 2> q2_sphere_split(const Rational& W, const Rational& L);

// On the coordinate plane n = 0 (so W = M = 0, L = m^2 - m^4):
//   Q_2 = X^2 (X - 1)(X + 1)(X^2 - (1 - 3m^2 + 3m^4)).
// Returns the four factors in that order; m2 is m^2.
std::array<UniPoly, 4> q2_axis_split(const Rational& m2);

// Quartic-in-W factor of the resultant:
//   R(W,d) = 27(d+1)^3(3-d)^3 W^4 + 9(d-1)^2(d-3)^2(d+1)^2 W^2
//            - (d-1)^2(d^2-2d-2)^2.
// Strictly increasing in W^2; negative at W = 0 for d in [0,1).
Rational resultant_w_factor(const Rational& W, const Rational& delta);

// Closed form of Res(P_1, P_2) with the leading-coefficient convention
// Res(T - a, T - b) = a - b:
//   Res = 16 (M - W^2)^3 R(W, delta).
// Note M - W^2 = m^2 n^2 (1 - m^2 - n^2 - r0^2) >= 0 on the invariant ball,
// vanishing exactly on its sphere and on the coordinate planes m = 0, n = 0.
Rational resultant_closed(const Rational& W, const Rational& M,
                          const Rational& delta);

// Candidate variants with lower powers of mn in the prefactor, retained so
// tests can confirm which candidate the Sylvester determinant actually equals.
// Both take the squared invariants m2 = m^2, n2 = n^2, r0sq = r0^2.
Rational resultant_variant_quartic_prefactor(const Rational& W, const Rational& m2,
                                             const Rational& n2, const Rational& r0sq,
                                             const Rational& delta);
Rational resultant_variant_quadratic_prefactor(const Rational& W, const Rational& m2,
                                               const Rational& n2, const Rational& r0sq,
                                               const Rational& delta);

// Exact coefficients of R(W,d) viewed as a quadratic a u^2 + b u + c in
// u = W^2. Its unique positive root u0 gives the threshold W_0 = sqrt(u0).
struct ResultantQuadratic {
  Rational a, b, c;
  // Positive root of the quadratic, as a double.
  double positive_root() const;
};
ResultantQuadratic resultant_quadratic_in_wsq(const Rational& delta);

// Threshold W_0(delta) in (0, 1/(3 sqrt 3)]: the unique positive root of
// R(W, delta). At delta = 0 it equals 1/(3 sqrt 3) exactly (u0 = 1/27).
double w0_threshold(double delta);

// Sign of the exact resultant 16 (M - W^2)^3 R(W, delta), computed in
// rational arithmetic. Returns -1, 0, or +1.
int resultant_sign_exact(const Rational& W, const Rational& M,
                         const Rational& delta);

// Roots mu_1 >= mu_2 >= mu_3 of P_1 via the trigonometric solution of
// X^3 - X + 2W = 0 (X = (2/sqrt 3) cos((arccos(3 sqrt 3 W) + k pi)/3) for
// k in {-1, +1, +3}), shifted by -(1+delta) W. Requires |W| <= 1/(3 sqrt 3)
// up to a small guard; values just outside are clamped.
std::array<double, 3> mu_roots(double W, double delta);

}  // namespace hsl
