#include "hsl/resultant.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hsl {

namespace {

// Clears denominators: returns (integer coefficients ascending, multiplier c)
// with c*p integral, c > 0.
std::pair<std::vector<Integer>, Integer> clear_denominators(const UniPoly& p) {
  Integer c(1);
  for (const Rational& q : p.coeffs()) c = lcm(c, Integer(q.get_den()));
  std::vector<Integer> out;
  out.reserve(p.coeffs().size());
  for (const Rational& q : p.coeffs()) {
    Rational scaled = Rational(c) * q;
    out.emplace_back(scaled.get_num());  // exact: c cancels every denominator
  }
  return {std::move(out), c};
}

// Fraction-free determinant (Bareiss) with partial pivoting by row swap.
Integer bareiss_det(std::vector<std::vector<Integer>>& a) {
  std::size_t n = a.size();
  Integer prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && sgn(a[piv][k]) == 0) ++piv;
      if (piv == n) return Integer(0);
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  Integer det = a[n - 1][n - 1];
  return sign > 0 ? det : Integer(-det);
}

Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace

Rational resultant(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero() || q.is_zero()) throw std::domain_error("resultant of zero polynomial");
  int dp = p.degree(), dq = q.degree();
  if (dp < 1 || dq < 1) throw std::domain_error("resultant requires degree >= 1");

  auto [pi, cp] = clear_denominators(p);
  auto [qi, cq] = clear_denominators(q);

  std::size_t n = static_cast<std::size_t>(dp + dq);
  std::vector<std::vector<Integer>> syl(n, std::vector<Integer>(n, Integer(0)));
  // p-rows first: row i holds p's coefficients, descending, shifted right by i.
  for (int i = 0; i < dq; ++i)
    for (int j = 0; j <= dp; ++j) syl[i][i + j] = pi[static_cast<std::size_t>(dp - j)];
  for (int i = 0; i < dp; ++i)
    for (int j = 0; j <= dq; ++j) syl[dq + i][i + j] = qi[static_cast<std::size_t>(dq - j)];

  Integer det = bareiss_det(syl);
  // det(Syl(cp*p, cq*q)) = cp^dq * cq^dp * det(Syl(p, q)).
  Rational scale(ipow(cp, static_cast<unsigned long>(dq)) *
                 ipow(cq, static_cast<unsigned long>(dp)));
  Rational res = Rational(det) / scale;
  res.canonicalize();
  return res;
}

}  // namespace hsl
