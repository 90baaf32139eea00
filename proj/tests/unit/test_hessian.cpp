#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "hsl/charpoly.hpp"
#include "hsl/hessian.hpp"
#include "hsl/poly_families.hpp"
#include "hsl/rational.hpp"
#include "hsl/rng.hpp"
#include "hsl/spectra.hpp"

using namespace hsl;

namespace {

Rational random_rational(Rng& g, int denom = 8) {
  return frac(static_cast<long>(g.below(2 * denom + 1)) - denom, denom);
}

V12<Rational> random_unit_site(Rng& g) {
  std::array<Rational, 11> u;
  for (auto& ui : u) ui = frac(static_cast<long>(g.below(9)) - 4, 6);
  return sphere_point_from_chart(u);
}

// Complex site: quaternion coordinates with basis index 2, 3 all vanish.
// Chart coordinate u[i] feeds sphere coordinate x[i+1].
V12<Rational> random_complex_unit_site(Rng& g) {
  std::array<Rational, 11> u{};
  for (std::size_t i : {0u, 3u, 4u, 7u, 8u}) u[i] = random_rational(g, 5);
  V12<Rational> x = sphere_point_from_chart(u);
  return x;
}

V12<double> random_double_point(Rng& g) {
  V12<double> x;
  for (int i = 0; i < 12; ++i) x[i] = g.uniform(-1.0, 1.0);
  return x;
}

Quat<Rational> random_unit_quaternion(Rng& g) {
  std::array<Rational, 3> u = {random_rational(g, 4), random_rational(g, 4),
                               random_rational(g, 4)};
  return unit_quaternion_from_chart(u);
}

}  // namespace

TEST_SUITE("hessian") {
  TEST_CASE("finite differences confirm gradient and Hessian off the sphere") {
    Rng g(1001);
    for (int trial = 0; trial < 5; ++trial) {
      V12<double> x = random_double_point(g);
      if (std::sqrt(norm2(x)) < 0.5) continue;
      for (double delta : {0.0, 0.5}) {
        V12<double> grad = w_delta_gradient(x, delta);
        SymMatrix<double> hess = hessian(x, delta);
        double h = 1e-5;
        for (int i = 0; i < 12; ++i) {
          V12<double> xp = x, xm = x;
          xp[i] += h;
          xm[i] -= h;
          double fd = (w_delta_value(xp, delta) - w_delta_value(xm, delta)) / (2 * h);
          CHECK(grad[i] == doctest::Approx(fd).epsilon(1e-6));
          V12<double> gp = w_delta_gradient(xp, delta);
          V12<double> gm = w_delta_gradient(xm, delta);
          for (int j = i; j < 12; ++j) {
            double fd2 = (gp[j] - gm[j]) / (2 * h);
            CHECK(hess.at(i, j) == doctest::Approx(fd2).epsilon(1e-5).scale(1.0));
          }
        }
      }
    }
  }

  TEST_CASE("Hessian is homogeneous of degree -delta") {
    Rng g(1002);
    V12<double> x = random_double_point(g);
    for (double delta : {0.0, 0.25, 0.75}) {
      SymMatrix<double> h1 = hessian(x, delta);
      SymMatrix<double> h2 = hessian(scale(2.0, x), delta);
      double f = std::pow(2.0, -delta);
      for (int i = 0; i < 12; ++i)
        for (int j = i; j < 12; ++j)
          CHECK(h2.at(i, j) == doctest::Approx(f * h1.at(i, j)).epsilon(1e-12));
    }
  }

  TEST_CASE("Hessian is odd under a -> -a, exactly") {
    Rng g(1003);
    Rational d(1, 3);
    V12<Rational> a = random_unit_site(g);
    V12<Rational> na = scale(Rational(-1), a);
    SymMatrix<Rational> h = hessian_at_unit(a, d);
    SymMatrix<Rational> hn = hessian_at_unit(na, d);
    for (int i = 0; i < 12; ++i)
      for (int j = i; j < 12; ++j) CHECK(hn.at(i, j) == -h.at(i, j));
  }

  TEST_CASE("trace closed form, exactly at rational unit sites") {
    Rng g(1004);
    const Rational deltas[] = {Rational(0), Rational(1, 2), Rational(7, 10)};
    for (int trial = 0; trial < 10; ++trial) {
      V12<Rational> a = random_unit_site(g);
      Rational p = cubic_form(a);
      for (const Rational& d : deltas)
        CHECK(hessian_at_unit(a, d).trace() == hessian_trace_closed_form(p, d));
    }
  }

  TEST_CASE("quadratic form along orthogonal directions, exactly") {
    Rng g(1005);
    Rational d(2, 5);
    for (int trial = 0; trial < 10; ++trial) {
      V12<Rational> a = random_unit_site(g);
      V12<Rational> v;
      for (int i = 0; i < 12; ++i) v[i] = random_rational(g);
      V12<Rational> e = sub(v, scale(dot(v, a), a));  // e . a = 0 exactly
      if (norm2(e) == 0) continue;
      Rational lhs = hessian_at_unit(a, d).quad(e.c);
      Rational rhs = cubic_second_directional(a, e) - (Rational(1) + d) * cubic_form(a) * norm2(e);
      CHECK(lhs == rhs);
    }
  }

  TEST_CASE("twisted action preserves norm, P, and the Hessian charpoly") {
    Rng g(1006);
    V12<Rational> a = random_unit_site(g);
    Quat<Rational> g1 = random_unit_quaternion(g);
    Quat<Rational> g2 = random_unit_quaternion(g);
    Quat<Rational> g3 = random_unit_quaternion(g);
    V12<Rational> b = twisted_action(g1, g2, g3, a);
    CHECK(norm2(b) == Rational(1));
    CHECK(cubic_form(b) == cubic_form(a));
    Rational d(1, 2);
    CHECK(charpoly_exact(hessian_at_unit(b, d)) == charpoly_exact(hessian_at_unit(a, d)));
  }

  TEST_CASE("complex sites split the Hessian into the displayed blocks") {
    Rng g(1007);
    const Rational deltas[] = {Rational(0), Rational(1, 4), Rational(1, 2)};
    for (int trial = 0; trial < 6; ++trial) {
      V12<Rational> a = random_complex_unit_site(g);
      REQUIRE(is_complex_site(a));
      for (const Rational& d : deltas) {
        SymMatrix<Rational> h = hessian_at_unit(a, d);
        CHECK(off_block_vanishes(h));
        // Quaternion-coordinate block equals N6 - (1+d) W I6 entrywise.
        SymMatrix<Rational> quat_block = extract_block(h, kQuatCoords);
        SymMatrix<Rational> m6 = m6_display(a, d);
        for (int i = 0; i < 6; ++i)
          for (int j = i; j < 6; ++j) CHECK(quat_block.at(i, j) == m6.at(i, j));
        // charpoly(N6) = (X^3 - X + 2W)^2.
        Rational w = cubic_form(a);
        UniPoly q1 = q1_shifted(w);
        CHECK(charpoly_exact(n6_display(a)) == q1 * q1);
      }
    }
  }

  TEST_CASE("restricted trace: exact identity with the normal correction") {
    Rng g(1008);
    const Rational deltas[] = {Rational(0), Rational(1, 2)};
    for (int trial = 0; trial < 10; ++trial) {
      V12<Rational> a = random_unit_site(g);
      V12<Rational> v;
      for (int i = 0; i < 12; ++i) v[i] = random_rational(g);
      V12<Rational> nu = sub(v, scale(dot(v, a), a));  // nu . a = 0
      if (norm2(nu) == 0) continue;
      for (const Rational& d : deltas) {
        SymMatrix<Rational> h = hessian_at_unit(a, d);
        Rational p = cubic_form(a);
        Rational pnn = cubic_second_directional(a, nu) / norm2(nu);
        CHECK(restricted_trace(h, nu) == restricted_trace_closed_form(p, pnn, d));
      }
    }
  }

  TEST_CASE("coordinate-normal correction term vanishes") {
    // For nu = e_k the correction is P_nunu(a) = 0 whenever the two
    // remaining blocks of a cannot complete e_k's block to a nonzero
    // product: any single-block normal direction has P_nunu identically 0.
    Rng g(1009);
    for (int trial = 0; trial < 10; ++trial) {
      V12<Rational> a = random_unit_site(g);
      for (std::size_t k : {3u, 11u}) {
        V12<Rational> nu;
        nu[k] = Rational(1);
        CHECK(cubic_second_directional(a, nu) == Rational(0));
      }
    }
  }

  TEST_CASE("deleting a coordinate equals restricting to its hyperplane") {
    Rng g(1010);
    V12<Rational> a = random_unit_site(g);
    SymMatrix<double> h = to_double_mat(hessian_at_unit(a, Rational(1, 2)));
    SymMatrix<double> del = delete_coordinate(h, 11);
    V12<double> nu;
    nu[11] = 1.0;
    SymMatrix<double> res = restrict_to_hyperplane(h, nu);
    auto ev1 = eigenvalues(del);
    auto ev2 = eigenvalues(res);
    for (int i = 0; i < 11; ++i) CHECK(ev1[i] == doctest::Approx(ev2[i]).epsilon(1e-11));
  }

  TEST_CASE("restriction of the identity is the 11-dim identity") {
    Rng g(1011);
    SymMatrix<double> eye(12);
    for (int i = 0; i < 12; ++i) eye.set(i, i, 1.0);
    V12<double> nu = random_double_point(g);
    SymMatrix<double> r = restrict_to_hyperplane(eye, nu);
    for (int i = 0; i < 11; ++i)
      for (int j = i; j < 11; ++j)
        CHECK(r.at(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).scale(1.0).epsilon(1e-12));
  }

  TEST_CASE("Cauchy interlacing for hyperplane compressions") {
    Rng g(1012);
    for (int trial = 0; trial < 5; ++trial) {
      V12<double> x = normalized(random_double_point(g));
      SymMatrix<double> h = hessian(x, 0.3);
      V12<double> v = random_double_point(g);
      V12<double> nu = sub(v, scale(dot(v, x), x));
      SymMatrix<double> r = restrict_to_hyperplane(h, nu);
      auto big = eigenvalues(h);
      auto small = eigenvalues(r);
      for (int k = 0; k < 11; ++k) {
        CHECK(big[k] >= small[k] - 1e-10);
        CHECK(small[k] >= big[k + 1] - 1e-10);
      }
    }
  }

  TEST_CASE("invariants of canonical sites") {
    Rng g(1013);
    for (int trial = 0; trial < 10; ++trial) {
      Quat<Rational> q = random_unit_quaternion(g);
      // (r0, r1, m, n) = (q0, q1, q2, q3) on S^3 exactly.
      V12<Rational> a = canonical_site(q[0], q[1], q[2], q[3]);
      CHECK(norm2(a) == Rational(1));
      auto inv = invariants(a);
      CHECK(inv.W == q[0] * q[2] * q[3]);
      CHECK(inv.m2 == q[2] * q[2]);
      CHECK(inv.n2 == q[3] * q[3]);
      if (inv.r0_defined) {
        CHECK(inv.r0_squared == q[0] * q[0]);
        // Invariant-ball deficit of the canonical site is exactly r1^2.
        CHECK(Rational(1) - inv.r0_squared - inv.m2 - inv.n2 == q[1] * q[1]);
      }
    }
  }

  TEST_CASE("double site construction hits requested invariants") {
    V12<double> a = site_from_invariants(0.5, 0.5, 0.5);
    CHECK(norm2(a) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cubic_form(a) == doctest::Approx(0.125).epsilon(1e-14));
    CHECK_THROWS(site_from_invariants(0.9, 0.9, 0.9));
  }
}
