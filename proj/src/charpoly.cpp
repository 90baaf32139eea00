#include "hsl/charpoly.hpp"

#include <cstddef>
#include <vector>

namespace hsl {

namespace {

// Dense square scratch matrix for the recurrence products.
struct Dense {
  std::size_t n;
  std::vector<Rational> a;
  explicit Dense(std::size_t n_) : n(n_), a(n_ * n_, Rational(0)) {}
  Rational& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

Dense mul(const SymMatrix<Rational>& s, const Dense& b) {
  std::size_t n = b.n;
  Dense c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Rational& sik = s.at(i, k);
      if (sgn(sik) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c.at(i, j) += sik * b.at(k, j);
    }
  return c;
}

}  // namespace

UniPoly charpoly_exact(const SymMatrix<Rational>& m) {
  std::size_t n = m.size();
  std::vector<Rational> coeff(n + 1, Rational(0));
  coeff[n] = Rational(1);  // monic in T^n

  Dense mk(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mk.at(i, j) = m.at(i, j);

  Rational ck(0);
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      for (std::size_t i = 0; i < n; ++i) mk.at(i, i) += ck;
      mk = mul(m, mk);
    }
    Rational tr(0);
    for (std::size_t i = 0; i < n; ++i) tr += mk.at(i, i);
    ck = -tr / Rational(static_cast<long>(k));
    coeff[n - k] = ck;
  }
  return UniPoly(std::move(coeff));
}

}  // namespace hsl
