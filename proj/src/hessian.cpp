#include "hsl/hessian.hpp"

#include <vector>

namespace hsl {

SymMatrix<double> restrict_to_hyperplane(const SymMatrix<double>& h,
                                         const V12<double>& nu) {
  if (h.size() != 12)
    throw std::invalid_argument("restrict_to_hyperplane: expects a 12x12 matrix");
  double n2 = norm2(nu);
  if (n2 == 0.0) throw std::domain_error("restrict_to_hyperplane: nu = 0");
  V12<double> un = scale(1.0 / std::sqrt(n2), nu);

  // Project the coordinate basis onto nu^perp and orthonormalize. Dropping
  // the coordinate carrying the largest |un| component keeps the remaining
  // eleven projections linearly independent.
  std::size_t drop = 0;
  for (std::size_t i = 1; i < 12; ++i)
    if (std::abs(un[i]) > std::abs(un[drop])) drop = i;

  std::vector<std::array<double, 12>> frame;
  frame.reserve(11);
  for (std::size_t i = 0; i < 12; ++i) {
    if (i == drop) continue;
    std::array<double, 12> v{};
    v[i] = 1.0;
    for (std::size_t c = 0; c < 12; ++c) v[c] -= un[i] * un[c];
    for (const auto& u : frame) {
      double d = 0.0;
      for (std::size_t c = 0; c < 12; ++c) d += u[c] * v[c];
      for (std::size_t c = 0; c < 12; ++c) v[c] -= d * u[c];
    }
    double nn = 0.0;
    for (std::size_t c = 0; c < 12; ++c) nn += v[c] * v[c];
    nn = std::sqrt(nn);
    for (std::size_t c = 0; c < 12; ++c) v[c] /= nn;
    frame.push_back(v);
  }

  SymMatrix<double> b(11);
  std::array<double, 12> y{};
  for (std::size_t a = 0; a < 11; ++a) {
    h.apply(frame[a], y);
    for (std::size_t c = a; c < 11; ++c) {
      double acc = 0.0;
      for (std::size_t k = 0; k < 12; ++k) acc += y[k] * frame[c][k];
      b.set(a, c, acc);
    }
  }
  return b;
}

}  // namespace hsl
