// Real root isolation and refinement for exact rational polynomials.
//
// Roots are isolated with Sturm chains built on the squarefree part, then
// refined by bisection on dyadic rational midpoints, so every sign evaluation
// is exact. Multiplicities come from the gcd chain p, gcd(p,p'), ..., never
// from float clustering.
#pragma once

#include <vector>

#include "hsl/rational.hpp"
#include "hsl/unipoly.hpp"

namespace hsl {

struct RealRoot {
  double value;       // midpoint of the final bracket
  Rational lo, hi;    // exact bracket, hi - lo <= tol (lo == hi for exact roots)
  int multiplicity;
};

// Sturm chain of p: p, p', then negated euclidean remainders, each scaled by a
// positive constant. Sign variation counts are preserved by positive scaling.
std::vector<UniPoly> sturm_chain(const UniPoly& p);

// Number of distinct real roots of p in the half-open interval (a, b].
int sturm_count(const std::vector<UniPoly>& chain, const Rational& a, const Rational& b);

// All real roots of p in [lo, hi], refined to bracket width <= tol,
// returned in non-increasing order with exact multiplicities.
std::vector<RealRoot> sturm_real_roots(const UniPoly& p, const Rational& lo,
                                       const Rational& hi, double tol);

// Same, over a Cauchy bound interval containing every real root of p.
std::vector<RealRoot> sturm_real_roots(const UniPoly& p, double tol);

}  // namespace hsl
