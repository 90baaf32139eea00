#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>

#include "hsl/charpoly.hpp"
#include "hsl/poly_families.hpp"
#include "hsl/rational.hpp"
#include "hsl/resultant.hpp"
#include "hsl/rng.hpp"
#include "hsl/sym_matrix.hpp"
#include "hsl/unipoly.hpp"

using namespace hsl;

namespace {

UniPoly linear(const Rational& root) {
  return UniPoly(std::vector<Rational>{-root, Rational(1)});
}

Rational random_rational(Rng& g, int denom = 12) {
  return frac(static_cast<long>(g.below(2 * denom + 1)) - denom, denom);
}

UniPoly random_poly(Rng& g, int deg) {
  std::vector<Rational> c(deg + 1);
  for (auto& ci : c) ci = random_rational(g);
  if (c.back() == 0) c.back() = Rational(1);
  return UniPoly(std::move(c));
}

}  // namespace

TEST_SUITE("charpoly") {
  TEST_CASE("2x2 example") {
    SymMatrix<Rational> m(2);
    m.set(0, 0, Rational(2));
    m.set(0, 1, Rational(1));
    m.set(1, 1, Rational(2));
    // (T-3)(T-1) = T^2 - 4T + 3
    CHECK(charpoly_exact(m) ==
          UniPoly(std::vector<Rational>{Rational(3), Rational(-4), Rational(1)}));
  }

  TEST_CASE("diagonal matrices give the product of linear factors") {
    SymMatrix<Rational> m(3);
    m.set(0, 0, Rational(1));
    m.set(1, 1, Rational(2));
    m.set(2, 2, Rational(3));
    CHECK(charpoly_exact(m) == linear(Rational(1)) * linear(Rational(2)) * linear(Rational(3)));
  }

  TEST_CASE("charpoly coefficients: trace and determinant") {
    Rng g(17);
    for (int trial = 0; trial < 20; ++trial) {
      SymMatrix<Rational> m(4);
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) m.set(i, j, random_rational(g));
      UniPoly p = charpoly_exact(m);
      CHECK(p.degree() == 4);
      CHECK(p.leading() == Rational(1));
      CHECK(p.coeff(3) == -m.trace());
      // Shift identity: charpoly(M + cI)(T) = charpoly(M)(T - c), exactly.
      Rational c = random_rational(g);
      SymMatrix<Rational> shifted = m;
      for (int i = 0; i < 4; ++i) shifted.add(i, i, c);
      CHECK(charpoly_exact(shifted) == p.shift(-c));
    }
  }
}

TEST_SUITE("resultant") {
  TEST_CASE("convention: Res(T - a, T - b) = a - b") {
    Rng g(23);
    for (int trial = 0; trial < 30; ++trial) {
      Rational a = random_rational(g), b = random_rational(g);
      CHECK(resultant(linear(a), linear(b)) == a - b);
    }
  }

  TEST_CASE("vanishes exactly on a shared root") {
    UniPoly p = linear(Rational(2, 3)) * linear(Rational(-1, 5));
    UniPoly q = linear(Rational(2, 3)) * linear(Rational(7));
    CHECK(resultant(p, q) == Rational(0));
  }

  TEST_CASE("multiplicative in the first argument") {
    Rng g(29);
    for (int trial = 0; trial < 10; ++trial) {
      UniPoly p1 = random_poly(g, 2), p2 = random_poly(g, 3), q = random_poly(g, 2);
      CHECK(resultant(p1 * p2, q) == resultant(p1, q) * resultant(p2, q));
    }
  }

  TEST_CASE("rejects zero and constant arguments") {
    CHECK_THROWS(resultant(UniPoly(), linear(Rational(1))));
    CHECK_THROWS(resultant(UniPoly::constant(Rational(2)), linear(Rational(1))));
  }

  TEST_CASE("frozen value at the half-half-half site, delta = 0") {
    // Invariants of the site (r0, m, n) = (1/2, 1/2, 1/2):
    Rational W(1, 8), L(5, 16), M(1, 32);
    Rational res = resultant(p1_family(W, Rational(0)), p2_family(W, L, M, Rational(0)));
    CHECK(res == Rational(-10471, 67108864));
    CHECK(res == resultant_closed(W, M, Rational(0)));
    // The lower-prefactor variants do NOT equal the Sylvester value here.
    Rational m2(1, 4), n2(1, 4), r0sq(1, 4);
    CHECK(res != resultant_variant_quartic_prefactor(W, m2, n2, r0sq, Rational(0)));
    CHECK(res != resultant_variant_quadratic_prefactor(W, m2, n2, r0sq, Rational(0)));
  }

  TEST_CASE("Sylvester value equals the closed form at random sites and deltas") {
    Rng g(31);
    const Rational deltas[] = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4)};
    for (int trial = 0; trial < 12; ++trial) {
      // Random (r0, m, n) strictly inside the ball with m, n > 0.
      Rational r0 = random_rational(g, 4) / Rational(2);
      Rational m = frac(static_cast<long>(g.below(4)) + 1, 10);
      Rational n = frac(static_cast<long>(g.below(4)) + 1, 10);
      if (r0 * r0 + m * m + n * n >= 1) continue;
      Rational m2 = m * m, n2 = n * n;
      Rational W = r0 * m * n;
      Rational L = m2 + n2 - m2 * n2 - m2 * m2 - n2 * n2;
      Rational M = m2 * n2 * (Rational(1) - m2 - n2);
      for (const Rational& d : deltas) {
        CHECK(resultant(p1_family(W, d), p2_family(W, L, M, d)) ==
              resultant_closed(W, M, d));
      }
    }
  }
}
