#include "hsl/poly_families.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hsl {

namespace {

Rational pw(const Rational& x, unsigned long k) { return pow_ui(x, k); }

const Rational kOne(1);
const Rational kTwo(2);
const Rational kThree(3);

}  // namespace

UniPoly p1_family(const Rational& W, const Rational& delta) {
  const Rational& d = delta;
  Rational e = kOne + d;  // 1 + delta
  std::vector<Rational> c(4);
  c[3] = kOne;
  c[2] = kThree * W * e;
  c[1] = kThree * W * W * e * e - kOne;
  c[0] = W * (kOne - d) + pw(W, 3) * pw(e, 3);
  return UniPoly(std::move(c));
}

UniPoly p2_family(const Rational& W, const Rational& L, const Rational& M,
                  const Rational& delta) {
  const Rational& d = delta;
  Rational d2 = d * d;
  Rational d3 = d2 * d;
  Rational e = d + kOne;  // delta + 1
  Rational W2 = W * W;
  Rational W4 = W2 * W2;
  Rational W6 = W4 * W2;

  std::vector<Rational> c(7);
  c[6] = kOne;
  c[5] = W * e * (Rational(9) - d);
  c[4] = W2 * e * (Rational(21) + Rational(28) * d - Rational(5) * d2) +
         L * e * (kThree - d) - kTwo;
  c[3] = Rational(-2) * W * e *
         (W2 * e * (Rational(5) * d2 - Rational(26) * d - Rational(7)) -
          L * (kTwo * d + kOne) * (kThree - d) + Rational(4));
  c[2] = -W4 * (Rational(10) * d2 - Rational(53) * d + Rational(9)) * pw(e, 3) -
         kTwo * W2 * e *
             (kThree * L * d3 - Rational(6) * L * d2 - Rational(9) * L * d +
              Rational(7) * d + kThree) +
         L * d2 - kThree * M * d2 - kTwo * L * d + Rational(6) * M * d -
         kThree * L + Rational(9) * M + kOne;
  c[1] = -e *
         (W4 * (Rational(5) * d - kThree) * (d - Rational(5)) * pw(e, 3) -
          kTwo * e *
              (Rational(-2) * L * d3 + Rational(5) * L * d2 + Rational(4) * L * d -
               Rational(6) * d - kThree * L + kTwo) *
              W2 +
          kTwo * (kThree - d) * (-kThree * d * M + L * d - L) + kOne - d) *
         W;
  c[0] = (kOne - d) *
         (W6 * (d - Rational(5)) * pw(e, 5) +
          W4 * pw(e, 3) * (L * d2 - kTwo * L * d - kThree * L + Rational(4)) -
          W2 * e *
              (L * d2 - kThree * M * d2 + d + Rational(6) * M * d -
               Rational(4) * L * d - kOne + kThree * L + Rational(9) * M) -
          M * (kOne - d));
  return UniPoly(std::move(c));
}

UniPoly p2_zero_display(const Rational& W, const Rational& L, const Rational& M) {
  Rational W2 = W * W;
  Rational W4 = W2 * W2;
  Rational W6 = W4 * W2;
  std::vector<Rational> c(7);
  c[6] = kOne;
  c[5] = Rational(9) * W;
  c[4] = Rational(21) * W2 + kThree * L - kTwo;
  c[3] = kTwo * W * (Rational(7) * W2 + kThree * L - Rational(4));
  c[2] = kOne - Rational(6) * W2 - Rational(9) * W4 - kThree * L + Rational(9) * M;
  c[1] = -(Rational(15) * W4 + Rational(6) * W2 * L - Rational(4) * W2 -
           Rational(6) * L + kOne) *
         W;
  c[0] = Rational(-5) * W6 - kThree * L * W4 + Rational(4) * W4 -
         kThree * (kThree * M + L) * W2 + W2 - M;
  return UniPoly(std::move(c));
}

UniPoly q1_shifted(const Rational& W) {
  std::vector<Rational> c(4);
  c[3] = kOne;
  c[2] = Rational(0);
  c[1] = Rational(-1);
  c[0] = kTwo * W;
  return UniPoly(std::move(c));
}

UniPoly q2_shifted_display(const Rational& W, const Rational& L, const Rational& M) {
  Rational W2 = W * W;
  std::vector<Rational> c(7);
  c[6] = kOne;
  c[5] = kThree * W;
  c[4] = -(Rational(9) * W2 - kThree * L + kTwo);
  c[3] = Rational(-6) * W * L;
  c[2] = Rational(6) * W2 - kThree * L + Rational(9) * M + kOne;
  c[1] = -kThree * (Rational(6) * M - Rational(4) * L + kOne) * W;
  c[0] = kThree * W2 - Rational(12) * L * W2 - M;
  return UniPoly(std::move(c));
}

std::array<UniPoly, 2> q2_sphere_split(const Rational& W, const Rational& L) {
  UniPoly first = q1_shifted(W);
  std::vector<Rational> c(4);
  c[3] = kOne;
  c[2] = kThree * W;
  c[1] = -(Rational(9) * W * W + kOne - kThree * L);
  c[0] = W - Rational(6) * W * L;
  return {first, UniPoly(std::move(c))};
}

std::array<UniPoly, 4> q2_axis_split(const Rational& m2) {
  UniPoly xsq = UniPoly::monomial(2, kOne);
  UniPoly xm1(std::vector<Rational>{Rational(-1), kOne});
  UniPoly xp1(std::vector<Rational>{kOne, kOne});
  Rational root_sq = kOne - kThree * m2 + kThree * m2 * m2;
  UniPoly quad(std::vector<Rational>{-root_sq, Rational(0), kOne});
  return {xsq, xm1, xp1, quad};
}

Rational resultant_w_factor(const Rational& W, const Rational& delta) {
  ResultantQuadratic q = resultant_quadratic_in_wsq(delta);
  Rational u = W * W;
  return q.a * u * u + q.b * u + q.c;
}

Rational resultant_closed(const Rational& W, const Rational& M,
                          const Rational& delta) {
  return Rational(16) * pw(M - W * W, 3) * resultant_w_factor(W, delta);
}

Rational resultant_variant_quartic_prefactor(const Rational& W, const Rational& m2,
                                             const Rational& n2, const Rational& r0sq,
                                             const Rational& delta) {
  Rational deficit = kOne - m2 - n2 - r0sq;
  return Rational(16) * m2 * m2 * n2 * n2 * pw(deficit, 3) *
         resultant_w_factor(W, delta);
}

Rational resultant_variant_quadratic_prefactor(const Rational& W, const Rational& m2,
                                               const Rational& n2, const Rational& r0sq,
                                               const Rational& delta) {
  Rational deficit = kOne - m2 - n2 - r0sq;
  return Rational(16) * m2 * n2 * pw(deficit, 3) * resultant_w_factor(W, delta);
}

double ResultantQuadratic::positive_root() const {
  // a > 0 and c < 0 on the admissible delta range, so the discriminant is
  // positive and exactly one root is positive.
  double ad = to_double(a), bd = to_double(b), cd = to_double(c);
  double disc = bd * bd - 4.0 * ad * cd;
  if (!(ad > 0.0) || !(disc >= 0.0))
    throw std::domain_error("ResultantQuadratic: no positive root");
  return (-bd + std::sqrt(disc)) / (2.0 * ad);
}

ResultantQuadratic resultant_quadratic_in_wsq(const Rational& delta) {
  const Rational& d = delta;
  ResultantQuadratic q;
  q.a = Rational(27) * pw(d + kOne, 3) * pw(kThree - d, 3);
  q.b = Rational(9) * pw(d - kOne, 2) * pw(d - kThree, 2) * pw(d + kOne, 2);
  q.c = -pw(d - kOne, 2) * pw(d * d - kTwo * d - kTwo, 2);
  return q;
}

double w0_threshold(double delta) {
  ResultantQuadratic q = resultant_quadratic_in_wsq(rational_of_double(delta));
  return std::sqrt(q.positive_root());
}

int resultant_sign_exact(const Rational& W, const Rational& M,
                         const Rational& delta) {
  return sign(resultant_closed(W, M, delta));
}

std::array<double, 3> mu_roots(double W, double delta) {
  constexpr double kGuard = 1e-9;
  double x = 3.0 * std::sqrt(3.0) * W;
  if (x > 1.0) {
    if (x > 1.0 + kGuard) throw std::domain_error("mu_roots: |W| exceeds 1/(3 sqrt 3)");
    x = 1.0;
  } else if (x < -1.0) {
    if (x < -1.0 - kGuard) throw std::domain_error("mu_roots: |W| exceeds 1/(3 sqrt 3)");
    x = -1.0;
  }
  double alpha = std::acos(x);
  double scale = 2.0 / std::sqrt(3.0);
  std::array<double, 3> r = {
      scale * std::cos((alpha - M_PI) / 3.0),
      scale * std::cos((alpha + M_PI) / 3.0),
      scale * std::cos((alpha + 3.0 * M_PI) / 3.0),
  };
  std::sort(r.begin(), r.end(), [](double a, double b) { return a > b; });
  double shift = (1.0 + delta) * W;
  for (double& v : r) v -= shift;
  return r;
}

}  // namespace hsl
