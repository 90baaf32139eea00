// Exact resultants of rational polynomials via Sylvester + Bareiss.
#pragma once

#include "hsl/rational.hpp"
#include "hsl/unipoly.hpp"

namespace hsl {

// Determinant of the Sylvester matrix with the p-rows first. With this
// convention Res(T-a, T-b) = a-b, i.e.
//   Res(p,q) = lc(p)^deg q * lc(q)^deg p * prod_{i,j}(alpha_i - beta_j)
// over the roots alpha of p and beta of q. Zero iff p and q share a root.
// Computed fraction-free: denominators are cleared, the integer Sylvester
// determinant runs through Bareiss elimination, and the scale is divided out.
Rational resultant(const UniPoly& p, const UniPoly& q);

}  // namespace hsl
