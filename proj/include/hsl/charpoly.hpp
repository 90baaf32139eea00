// Exact characteristic polynomials of rational symmetric matrices.
#pragma once

#include "hsl/rational.hpp"
#include "hsl/sym_matrix.hpp"
#include "hsl/unipoly.hpp"

namespace hsl {

// Monic characteristic polynomial det(T*I - M) via the Faddeev-LeVerrier
// recurrence: M1 = M, c1 = -tr(M1), M_{k+1} = M(M_k + c_k I),
// c_{k+1} = -tr(M_{k+1})/(k+1). Division-light and exact over Q.
UniPoly charpoly_exact(const SymMatrix<Rational>& m);

}  // namespace hsl
