#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "hsl/hessian.hpp"
#include "hsl/hyperbolicity.hpp"
#include "hsl/poly_families.hpp"
#include "hsl/rational.hpp"
#include "hsl/rng.hpp"
#include "hsl/spectra.hpp"
#include "hsl/vec12.hpp"

using namespace hsl;

namespace {

V12<double> random_unit(Rng& g, bool zero_last = false) {
  V12<double> v;
  for (std::size_t i = 0; i < 12; ++i) v[i] = g.gaussian();
  if (zero_last) v[11] = 0.0;
  return normalized(v);
}

std::vector<std::vector<double>> identity12(int dim = 12) {
  std::vector<std::vector<double>> o(dim, std::vector<double>(dim, 0.0));
  for (int i = 0; i < dim; ++i) o[i][i] = 1.0;
  return o;
}

Rational random_rational(Rng& g, int denom = 4) {
  return frac(static_cast<long>(g.below(2 * denom + 1)) - denom, denom);
}

V12<Rational> random_unit_site(Rng& g) {
  std::array<Rational, 11> u;
  for (auto& ui : u) ui = random_rational(g);
  return sphere_point_from_chart(u);
}

constexpr double kWBar = 0.19245008972987525;  // 1/(3 sqrt 3)

}  // namespace

TEST_SUITE("difference ratio") {
  TEST_CASE("bound constant") {
    CHECK(c_delta(0.0) == doctest::Approx(26.0).epsilon(1e-15));
    CHECK(c_delta(0.5) == doctest::Approx(54.5).epsilon(1e-15));
    CHECK_THROWS_AS(c_delta(1.0), std::invalid_argument);
    CHECK_THROWS_AS(c_delta(-0.1), std::invalid_argument);
  }

  TEST_CASE("identical pair gives the zero matrix, flagged not rated") {
    Rng g(101);
    V12<double> a = random_unit(g);
    DifferenceSample s{a, a, 1.0, identity12(), 0.0, 12};
    SymMatrix<double> d = difference_matrix(s);
    for (std::size_t i = 0; i < 12; ++i)
      for (std::size_t j = i; j < 12; ++j) CHECK(d.at(i, j) == 0.0);
    RatioRecord r = ratio_record(d, 26.0, 1e-9);
    CHECK_FALSE(r.nonzero);
    CHECK_FALSE(r.in_range);
  }

  TEST_CASE("antipodal pair doubles the Hessian") {
    Rng g(102);
    V12<double> a = random_unit(g);
    DifferenceSample s{a, scale(-1.0, a), 1.0, identity12(), 0.0, 12};
    SymMatrix<double> d = difference_matrix(s);
    SymMatrix<double> twice = sym_scale(2.0, hessian_at_unit(a, 0.0));
    for (std::size_t i = 0; i < 12; ++i)
      for (std::size_t j = i; j < 12; ++j)
        CHECK(d.at(i, j) == doctest::Approx(twice.at(i, j)).epsilon(1e-12));
    RatioRecord r = ratio_record(d, 26.0, 1e-9);
    CHECK(r.nonzero);
    CHECK(r.in_range);
  }

  TEST_CASE("pure scaling flips into the negated Hessian") {
    Rng g(103);
    V12<double> a = random_unit(g);
    DifferenceSample s{a, a, 2.0, identity12(), 0.0, 12};
    SymMatrix<double> d = difference_matrix(s);
    SymMatrix<double> neg = sym_scale(-1.0, hessian_at_unit(a, 0.0));
    for (std::size_t i = 0; i < 12; ++i)
      for (std::size_t j = i; j < 12; ++j)
        CHECK(d.at(i, j) == doctest::Approx(neg.at(i, j)).epsilon(1e-12));
    RatioRecord r = ratio_record(d, 26.0, 1e-9);
    CHECK(r.in_range);
  }

  TEST_CASE("certificate at delta = 0 passes and stresses the scaled family") {
    RatioCertificate c = certify_ratio(0.0, 12, 2000, 12345, 1, 1e-9);
    CHECK(c.pass);
    CHECK(c.violations == 0);
    CHECK(c.samples + c.stress_samples + c.zero_flagged == 2000);
    CHECK(c.stress_samples > 0);
    CHECK(c.min_ratio >= 1.0 / 26.0 - 1e-9);
    CHECK(c.max_ratio <= 26.0 + 1e-9);
    CHECK(c.worst_slack >= -1e-9);
  }

  TEST_CASE("certificate at delta = 1/2 respects the wider bound") {
    RatioCertificate c = certify_ratio(0.5, 12, 2000, 2024, 2, 1e-9);
    CHECK(c.pass);
    CHECK(c.min_ratio >= 1.0 / 54.5 - 1e-9);
    CHECK(c.max_ratio <= 54.5 + 1e-9);
    // every scaled sample is a genuine Hessian pair when delta > 0
    CHECK(c.stress_samples == 0);
  }

  TEST_CASE("worker count does not change the certificate") {
    RatioCertificate c1 = certify_ratio(0.5, 12, 1500, 777, 1, 1e-9);
    RatioCertificate c4 = certify_ratio(0.5, 12, 1500, 777, 4, 1e-9);
    CHECK(c1.samples == c4.samples);
    CHECK(c1.zero_flagged == c4.zero_flagged);
    CHECK(c1.violations == c4.violations);
    CHECK(c1.stress_samples == c4.stress_samples);
    CHECK(c1.min_ratio == c4.min_ratio);
    CHECK(c1.max_ratio == c4.max_ratio);
    CHECK(c1.worst_slack == c4.worst_slack);
    CHECK(c1.detail.size() == c4.detail.size());
  }

  TEST_CASE("eleven dimensional certificate uses the bound 24") {
    RatioCertificate c = certify_ratio(0.0, 11, 2000, 31337, 2, 1e-9);
    CHECK(c.pass);
    CHECK(c.min_ratio >= 1.0 / 24.0 - 1e-9);
    CHECK(c.max_ratio <= 24.0 + 1e-9);
    CHECK_THROWS_AS(certify_ratio(0.5, 11, 10, 1, 1, 1e-9), std::invalid_argument);
  }
}

TEST_SUITE("trace identities") {
  TEST_CASE("exact closed form for the scaled difference trace") {
    Rng g(21);
    for (int trial = 0; trial < 4; ++trial) {
      V12<Rational> a = random_unit_site(g);
      V12<Rational> b = random_unit_site(g);
      for (const Rational& k : {Rational(1), frac(2, 3), Rational(7)}) {
        for (const Rational& d : {Rational(0), frac(1, 2), frac(3, 4)}) {
          CHECK(trace_identity_exact(a, b, k, d));
        }
      }
    }
    V12<Rational> bad;
    bad[0] = frac(1, 2);
    CHECK_THROWS_AS(trace_identity_exact(bad, bad, Rational(1), Rational(0)),
                    std::domain_error);
  }

  TEST_CASE("exact factor 14 on the coordinate hyperplane") {
    V12<Rational> a = canonical_site(frac(1, 2), frac(1, 2), frac(1, 2), frac(1, 2));
    V12<Rational> b = canonical_site(frac(1, 5), frac(2, 5), frac(2, 5), frac(4, 5));
    REQUIRE(norm2(a) == Rational(1));
    REQUIRE(norm2(b) == Rational(1));
    REQUIRE(a[11] == Rational(0));
    for (const Rational& k : {Rational(1), frac(5, 3)}) {
      CHECK(trace_identity_restricted_exact(a, b, k));
      CHECK(trace_identity_restricted_exact(b, a, k));
    }
  }

  TEST_CASE("float trace matches the closed form through conjugation") {
    Rng g(22);
    for (int trial = 0; trial < 20; ++trial) {
      V12<double> a = random_unit(g);
      V12<double> b = random_unit(g);
      DifferenceSample s{a, b, 0.37, haar_orthogonal(12, g), 0.3, 12};
      TraceIdentityCheck c = trace_identity(s, 1e-10);
      CHECK(c.pass);
      CHECK(c.residual <= 1e-10);
    }
    for (int trial = 0; trial < 10; ++trial) {
      V12<double> a = random_unit(g, true);
      V12<double> b = random_unit(g, true);
      DifferenceSample s{a, b, 1.0, haar_orthogonal(11, g), 0.0, 11};
      TraceIdentityCheck c = trace_identity(s, 1e-10);
      CHECK(c.pass);
    }
  }
}

TEST_SUITE("main lemma display") {
  TEST_CASE("trace and extreme eigenvalue inequalities at random pairs") {
    Rng g(31);
    for (int trial = 0; trial < 100; ++trial) {
      V12<double> a = random_unit(g);
      V12<double> b = trial % 4 == 0 ? normalized(add(a, scale(1e-4, random_unit(g))))
                                     : random_unit(g);
      auto O = haar_orthogonal(12, g);
      MainLemmaCheck c = main_lemma_display(a, b, O, 1e-9);
      CAPTURE(trial);
      CHECK(c.pass);
      CHECK(c.weyl_slack >= c.lambda6_slack - 1e-12);
    }
  }

  TEST_CASE("degenerate pair sits at the equality edge") {
    Rng g(32);
    V12<double> a = random_unit(g);
    MainLemmaCheck c = main_lemma_display(a, a, identity12(), 1e-9);
    CHECK(c.pass);
    CHECK(std::abs(c.weyl_slack) <= 1e-12);
  }

  TEST_CASE("scalar cosine bound is tight at W = 0") {
    Rng g(33);
    V12<double> a;
    for (std::size_t i = 0; i < 12; ++i) a[i] = i < 4 || i >= 8 ? g.gaussian() : 0.0;
    a = normalized(a);  // s = 0 forces W = 0
    REQUIRE(std::abs(cubic_form(a)) < 1e-15);
    MainLemmaCheck c = main_lemma_display(a, a, identity12(), 1e-9);
    CHECK(c.pass);
    CHECK(std::abs(c.cos_bound_slack) <= 1e-12);
  }
}

TEST_SUITE("mu difference bound") {
  TEST_CASE("excluded degenerate input throws") {
    CHECK_THROWS_AS(mu_difference_bound(0.05, 0.05, 1.0, 0.3, 1e-9), std::domain_error);
    CHECK_THROWS_AS(mu_difference_bound(0.0, 0.0, -1.0, 0.0, 1e-9), std::domain_error);
  }

  TEST_CASE("equal scaling separates by the root gap") {
    Rng g(41);
    for (double delta : {0.0, 0.4}) {
      for (int trial = 0; trial < 200; ++trial) {
        double w = (2.0 * g.uniform() - 1.0) * (kWBar - 1e-6);
        double wbar = (2.0 * g.uniform() - 1.0) * (kWBar - 1e-6);
        if (w < wbar) std::swap(w, wbar);
        if (w - wbar < 1e-4) continue;
        MuDifferenceCheck c = mu_difference_bound(w, wbar, 1.0, delta, 1e-9);
        CHECK(c.pass);
        CHECK(c.mu_plus >= (1.0 - delta) * (w - wbar) - 1e-12);
      }
    }
  }

  TEST_CASE("proportional invariants balance the differences") {
    Rng g(42);
    for (int trial = 0; trial < 200; ++trial) {
      double wbar = (2.0 * g.uniform() - 1.0) * (kWBar - 1e-6);
      double k = std::exp((2.0 * g.uniform() - 1.0) * std::log(3.0));
      double w = k * wbar;
      if (std::abs(w) > kWBar - 1e-6 || std::abs(k - 1.0) < 1e-4) continue;
      MuDifferenceCheck c = mu_difference_bound(w, wbar, k, 0.25, 1e-9);
      CHECK(c.pass);
      auto mu = mu_roots(w, 0.25);
      auto mubar = mu_roots(wbar, 0.25);
      double sum = 0.0;
      for (int i = 0; i < 3; ++i) sum += mu[i] - k * mubar[i];
      CHECK(std::abs(sum) <= 1e-10 * std::max(1.0, k));
      CHECK(c.ratio >= 0.5 - 1e-9);
      CHECK(c.ratio <= 2.0 + 1e-9);
    }
  }

  TEST_CASE("random sweep over scalings and invariant pairs") {
    Rng g(43);
    for (double delta : {0.0, 0.2, 0.7}) {
      double eps = (1.0 - delta) / (5.0 + delta);
      for (int trial = 0; trial < 1500; ++trial) {
        double w = (2.0 * g.uniform() - 1.0) * (kWBar - 1e-6);
        double wbar = (2.0 * g.uniform() - 1.0) * (kWBar - 1e-6);
        double k = std::exp((2.0 * g.uniform() - 1.0) * std::log(1000.0));
        if (std::abs(k - 1.0) + std::abs(w - wbar) < 1e-4) continue;
        MuDifferenceCheck c = mu_difference_bound(w, wbar, k, delta, 1e-9);
        CAPTURE(delta);
        CAPTURE(w);
        CAPTURE(wbar);
        CAPTURE(k);
        CHECK(c.pass);
        CHECK(c.epsilon == doctest::Approx(eps).epsilon(1e-15));
      }
    }
  }
}

TEST_SUITE("claim bound") {
  TEST_CASE("worked triples") {
    CHECK(claim_check(1.0, 0.0, -1.0, 1.0));
    CHECK(claim_check(2.0, 1.0, -2.0, 1.0));
    // ratio exactly (2h+1)/h at the extremal triple (3, -1, -1), h = 1
    CHECK(claim_check(3.0, -1.0, -1.0, 1.0));
  }

  TEST_CASE("precondition violations throw") {
    CHECK_THROWS_AS(claim_check(1.0, 2.0, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(claim_check(1.0, 0.0, -2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(claim_check(3.0, 3.0, -3.0, 1.01), std::domain_error);
    CHECK_THROWS_AS(claim_check(0.0, 0.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(claim_check(1.0, 0.0, -1.0, 0.0), std::domain_error);
  }

  TEST_CASE("random admissible triples stay inside the bound") {
    Rng g(51);
    for (int trial = 0; trial < 500; ++trial) {
      double t = 1e-3 + g.uniform();
      double l3 = -(t + g.uniform() + 1e-3);
      double spare = t - l3;  // l1 + l2
      double l2 = l3 + (spare / 2.0 - l3) * 0.999 * g.uniform();
      double l1 = spare - l2;
      REQUIRE(l1 >= l2);
      double h = (-l3 / t) * (0.05 + 0.9 * g.uniform());
      CHECK(claim_check(l1, l2, l3, h));
    }
  }
}
