#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "hsl/rational.hpp"
#include "hsl/sturm.hpp"
#include "hsl/unipoly.hpp"

using namespace hsl;

namespace {

UniPoly linear(const Rational& root) {
  return UniPoly(std::vector<Rational>{-root, Rational(1)});
}

}  // namespace

TEST_SUITE("sturm") {
  TEST_CASE("X^3 - X + 1/4 has its three roots in the expected windows") {
    UniPoly p(std::vector<Rational>{Rational(1, 4), Rational(-1), Rational(0), Rational(1)});
    auto roots = sturm_real_roots(p, 1e-13);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0].value > 0.83);
    CHECK(roots[0].value < 0.84);
    CHECK(roots[1].value > 0.26);
    CHECK(roots[1].value < 0.27);
    CHECK(roots[2].value > -1.11);
    CHECK(roots[2].value < -1.10);
    for (const auto& r : roots) {
      CHECK(r.multiplicity == 1);
      CHECK(to_double(r.hi - r.lo) <= 1e-13);
      // Exact bracket actually brackets: signs differ or an endpoint is a root.
      CHECK(p.eval(r.lo) * p.eval(r.hi) <= 0);
    }
  }

  TEST_CASE("squared cubic reports every root with multiplicity 2") {
    UniPoly q(std::vector<Rational>{Rational(1, 4), Rational(-1), Rational(0), Rational(1)});
    auto roots = sturm_real_roots(q * q, 1e-13);
    REQUIRE(roots.size() == 3);
    for (const auto& r : roots) CHECK(r.multiplicity == 2);
    // Same locations as the squarefree version, sorted non-increasing.
    auto simple = sturm_real_roots(q, 1e-13);
    for (size_t i = 0; i < 3; ++i)
      CHECK(std::abs(roots[i].value - simple[i].value) < 1e-12);
  }

  TEST_CASE("mixed multiplicities") {
    UniPoly p = linear(Rational(1, 3)) * linear(Rational(1, 3)) * linear(Rational(1, 3)) *
                linear(Rational(-2));
    auto roots = sturm_real_roots(p, 1e-13);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].multiplicity == 3);
    CHECK(std::abs(roots[0].value - 1.0 / 3.0) < 1e-12);
    CHECK(roots[1].multiplicity == 1);
    CHECK(std::abs(roots[1].value + 2.0) < 1e-12);
  }

  TEST_CASE("interval endpoints: root at lo is found, half-open at hi") {
    UniPoly p = linear(Rational(0)) * linear(Rational(1));
    auto roots = sturm_real_roots(p, Rational(0), Rational(1), 1e-13);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(roots[1].value == 0.0);
    CHECK(roots[1].lo == roots[1].hi);  // exact hit at the endpoint
  }

  TEST_CASE("exact dyadic root is hit exactly by bisection") {
    UniPoly p = linear(Rational(1, 2));
    auto roots = sturm_real_roots(p, Rational(0), Rational(1), 1e-13);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].lo == roots[0].hi);
    CHECK(roots[0].lo == Rational(1, 2));
    CHECK(roots[0].multiplicity == 1);
  }

  TEST_CASE("irrational quartic roots match sqrt to high precision") {
    // (X^2 - 2)(X^2 - 3)
    UniPoly p = UniPoly(std::vector<Rational>{Rational(-2), Rational(0), Rational(1)}) *
                UniPoly(std::vector<Rational>{Rational(-3), Rational(0), Rational(1)});
    auto roots = sturm_real_roots(p, 1e-13);
    REQUIRE(roots.size() == 4);
    CHECK(std::abs(roots[0].value - std::sqrt(3.0)) < 1e-12);
    CHECK(std::abs(roots[1].value - std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(roots[2].value + std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(roots[3].value + std::sqrt(3.0)) < 1e-12);
  }

  TEST_CASE("close roots are separated") {
    UniPoly p = linear(Rational(1, 1000000)) * linear(Rational(-1, 1000000)) *
                linear(Rational(0));
    auto roots = sturm_real_roots(p, 1e-13);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0].value == doctest::Approx(1e-6).epsilon(1e-6));
    CHECK(roots[2].value == doctest::Approx(-1e-6).epsilon(1e-6));
    for (const auto& r : roots) CHECK(r.multiplicity == 1);
  }

  TEST_CASE("sturm_count on half-open intervals") {
    UniPoly p = linear(Rational(0)) * linear(Rational(1)) * linear(Rational(2));
    auto chain = sturm_chain(p);
    CHECK(sturm_count(chain, Rational(0), Rational(2)) == 2);   // (0, 2] -> {1, 2}
    CHECK(sturm_count(chain, Rational(-1), Rational(2)) == 3);  // all three
    CHECK(sturm_count(chain, Rational(1), Rational(1)) == 0);   // empty interval
  }

  TEST_CASE("polynomial with no real roots") {
    UniPoly p(std::vector<Rational>{Rational(1), Rational(0), Rational(1)});  // X^2 + 1
    CHECK(sturm_real_roots(p, 1e-13).empty());
  }
}
