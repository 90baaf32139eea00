#include "hsl/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hsl {

namespace {

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
  return std::sqrt(2.0 * s);
}

}  // namespace

EigenResult eigen_sym(const SymMatrix<double>& m, bool with_vectors) {
  const std::size_t n = m.size();
  if (n == 0) return {};
  if (n > 64) throw std::invalid_argument("eigen_sym: size > 64 unsupported");

  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m.at(i, j);

  std::vector<double> v;
  if (with_vectors) {
    v.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  }

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a[i * n + j]));
  const double stop = (scale == 0.0) ? 0.0 : 1e-15 * scale * static_cast<double>(n);

  for (int sweep = 0; sweep < 64; ++sweep) {
    if (off_diagonal_norm(a, n) <= stop) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a[p * n + q];
        if (std::abs(apq) <= stop / static_cast<double>(n * n)) continue;
        double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k * n + p];
          double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a[p * n + k];
          double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        if (with_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            double vkp = v[k * n + p];
            double vkq = v[k * n + q];
            v[k * n + p] = c * vkp - s * vkq;
            v[k * n + q] = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i * n + i] > a[j * n + j];
  });

  EigenResult out;
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = a[order[k] * n + order[k]];
  if (with_vectors) {
    out.vectors.assign(n, std::vector<double>(n));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) out.vectors[k][i] = v[i * n + order[k]];
  }
  return out;
}

std::vector<double> eigenvalues(const SymMatrix<double>& a) {
  return eigen_sym(a).values;
}

double spectral_radius(const SymMatrix<double>& a) {
  std::vector<double> ev = eigenvalues(a);
  if (ev.empty()) return 0.0;
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

std::vector<std::vector<double>> haar_orthogonal(std::size_t n, Rng& rng) {
  // Columns of a Gaussian matrix, orthonormalized by modified Gram-Schmidt.
  std::vector<std::vector<double>> col(n, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) col[j][i] = rng.gaussian();

  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += col[k][i] * col[j][i];
      for (std::size_t i = 0; i < n; ++i) col[j][i] -= d * col[k][i];
    }
    double nn = 0.0;
    for (std::size_t i = 0; i < n; ++i) nn += col[j][i] * col[j][i];
    nn = std::sqrt(nn);
    // Haar correctness requires R_jj > 0; the Gram-Schmidt norm already is,
    // so no sign fix is needed beyond keeping the diagonal positive.
    for (std::size_t i = 0; i < n; ++i) col[j][i] /= nn;
  }

  std::vector<std::vector<double>> o(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) o[i][j] = col[j][i];
  return o;
}

SymMatrix<double> conjugate_by(const SymMatrix<double>& a,
                               const std::vector<std::vector<double>>& o) {
  const std::size_t n = a.size();
  // tmp = A O
  std::vector<std::vector<double>> tmp(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += a.at(i, k) * o[k][j];
      tmp[i][j] = acc;
    }
  SymMatrix<double> b(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += o[k][i] * tmp[k][j];
      b.set(i, j, acc);
    }
  return b;
}

std::vector<double> radial_spectrum(const std::vector<double>& unit_values,
                                    double rho, double delta) {
  if (!(rho > 0.0)) throw std::domain_error("radial_spectrum: rho <= 0");
  double f = std::pow(rho, -delta);
  std::vector<double> out(unit_values.size());
  for (std::size_t i = 0; i < unit_values.size(); ++i) out[i] = f * unit_values[i];
  return out;
}

WeylBounds weyl_difference_bounds(const std::vector<double>& alpha,
                                  const std::vector<double>& beta) {
  if (alpha.size() != beta.size() || alpha.empty())
    throw std::invalid_argument("weyl_difference_bounds: size mismatch");
  WeylBounds w{-1e300, 1e300};
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    double d = alpha[i] - beta[i];
    w.top_at_least = std::max(w.top_at_least, d);
    w.bottom_at_most = std::min(w.bottom_at_most, d);
  }
  return w;
}

}  // namespace hsl
