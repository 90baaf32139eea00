// Hessian of w_delta(X) = P(X) |X|^(-(1+delta)) and the site machinery
// around it: spectral invariants, canonical sites, the symmetry action, and
// the block structure at complex sites.
//
// w_delta is homogeneous of degree 2 - delta, so its Hessian is homogeneous
// of degree -delta and it suffices to know it on the unit sphere, where it
// has the closed form (all derivatives of P evaluated at x, |x| = 1):
//   H_ij = P_ij - (1+d)(P_i x_j + P_j x_i + P delta_ij) + (1+d)(3+d) P x_i x_j.
// This form is polynomial in (x, d), hence exact over the rationals.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "hsl/cubic_form.hpp"
#include "hsl/rational.hpp"
#include "hsl/sym_matrix.hpp"
#include "hsl/vec12.hpp"

namespace hsl {

template <class T>
T w_value_at_unit(const V12<T>& x) {
  return cubic_form(x);
}

inline double w_delta_value(const V12<double>& x, double delta) {
  double rho2 = norm2(x);
  if (rho2 == 0.0) throw std::domain_error("w_delta_value: x = 0");
  return cubic_form(x) * std::pow(rho2, -(1.0 + delta) / 2.0);
}

// Gradient of w_delta at a unit point: grad P - (1+d) P x.
template <class T>
V12<T> gradient_at_unit(const V12<T>& x, const T& delta) {
  T p = cubic_form(x);
  V12<T> g = cubic_gradient(x);
  return sub(g, scale((T(1) + delta) * p, x));
}

// Gradient at arbitrary nonzero x; homogeneous of degree 1 - delta.
inline V12<double> w_delta_gradient(const V12<double>& x, double delta) {
  double rho = std::sqrt(norm2(x));
  if (rho == 0.0) throw std::domain_error("w_delta_gradient: x = 0");
  V12<double> u = scale(1.0 / rho, x);
  return scale(std::pow(rho, 1.0 - delta), gradient_at_unit(u, delta));
}

// Closed-form Hessian at a unit point. Exact for T = Rational.
template <class T>
SymMatrix<T> hessian_at_unit(const V12<T>& x, const T& delta) {
  T p = cubic_form(x);
  V12<T> g = cubic_gradient(x);
  SymMatrix<T> h = cubic_second_derivative(x);
  T e = T(1) + delta;                // 1 + delta
  T f = e * (T(3) + delta) * p;      // (1+d)(3+d) P
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = i; j < 12; ++j) {
      T v = h.at(i, j) - e * (g[i] * x[j] + g[j] * x[i]) + f * x[i] * x[j];
      if (i == j) v -= e * p;
      h.set(i, j, v);
    }
  }
  return h;
}

// Hessian at arbitrary nonzero x via degree -delta homogeneity:
// H(x) = |x|^(-delta) H(x/|x|).
inline SymMatrix<double> hessian(const V12<double>& x, double delta) {
  double rho = std::sqrt(norm2(x));
  if (rho == 0.0) throw std::domain_error("hessian: x = 0");
  V12<double> u = scale(1.0 / rho, x);
  return sym_scale(std::pow(rho, -delta), hessian_at_unit(u, delta));
}

// Tr H_delta(a) = -(1+d)(15-d) P(a) at unit a.
template <class T>
T hessian_trace_closed_form(const T& p, const T& delta) {
  return -(T(1) + delta) * (T(15) - delta) * p;
}

// Trace of the compression of H_delta(a) to the hyperplane through a with
// unit normal nu (so nu . a = 0):
//   -(1+d)(14-d) P(a) - P_nunu(a).
// The P_nunu term drops exactly when nu has single-block support with the
// complementary blocks of a completing it to zero products, in particular for
// every coordinate normal nu = e_k at sites with the k-th coordinate zero
// paired against blocks that annihilate the two nu slots.
template <class T>
T restricted_trace_closed_form(const T& p, const T& p_nunu, const T& delta) {
  return -(T(1) + delta) * (T(14) - delta) * p - p_nunu;
}

// Normal-direction value: e^T H_delta(a) e = P_ee(a) - (1+d) P(a) for unit
// e orthogonal to the unit point a.
template <class T>
T hessian_quad_orthogonal_closed_form(const T& p_ee, const T& p, const T& delta) {
  return p_ee - (T(1) + delta) * p;
}

// Spectral invariants of a unit point a = (r, s, t):
//   W = P(a), m2 = |s|^2, n2 = |t|^2,
//   L = m2 + n2 - m2 n2 - m2^2 - n2^2,  M = m2 n2 (1 - m2 - n2).
// r0 = W/(mn) is only defined when both m and n are positive.
template <class T>
struct Invariants {
  T W, m2, n2, L, M;
  bool r0_defined;
  T r0_squared;  // W^2 / (m2 n2); T(0) when undefined
};

template <class T>
Invariants<T> invariants(const V12<T>& a) {
  Invariants<T> inv;
  inv.W = cubic_form(a);
  inv.m2 = qnorm2(a.s());
  inv.n2 = qnorm2(a.t());
  inv.L = inv.m2 + inv.n2 - inv.m2 * inv.n2 - inv.m2 * inv.m2 - inv.n2 * inv.n2;
  inv.M = inv.m2 * inv.n2 * (T(1) - inv.m2 - inv.n2);
  inv.r0_defined = inv.m2 != T(0) && inv.n2 != T(0);
  inv.r0_squared = inv.r0_defined ? inv.W * inv.W / (inv.m2 * inv.n2) : T(0);
  return inv;
}

// Canonical unit site with prescribed invariants: r = r0 + r1 i, s = m,
// t = n. Caller guarantees r0^2 + r1^2 + m^2 + n^2 = 1; checked exactly for
// Rational inputs by the debug assertion below.
template <class T>
V12<T> canonical_site(const T& r0, const T& r1, const T& m, const T& n) {
  V12<T> a;
  a[0] = r0;
  a[1] = r1;
  a[4] = m;
  a[8] = n;
  return a;
}

// Double site realizing the invariant triple (r0, m, n) with
// r0^2 + m^2 + n^2 <= 1; the slack goes into the imaginary part of r.
inline V12<double> site_from_invariants(double r0, double m, double n) {
  double slack = 1.0 - r0 * r0 - m * m - n * n;
  if (slack < 0.0) {
    if (slack < -1e-12) throw std::domain_error("site_from_invariants: outside ball");
    slack = 0.0;
  }
  return canonical_site(r0, std::sqrt(slack), m, n);
}

// Symmetry of the cubic form: for unit quaternions g1, g2, g3,
//   (r, s, t) -> (g1 r conj(g2), g2 s conj(g3), g3 t conj(g1))
// satisfies P(action(x)) = P(x) (the inner g factors cancel in r s t and the
// outer pair conjugates, preserving the real part). It is an isometry of
// R^12, so it preserves the whole Hessian spectrum of w_delta.
template <class T>
V12<T> twisted_action(const Quat<T>& g1, const Quat<T>& g2, const Quat<T>& g3,
                      const V12<T>& x) {
  Quat<T> nr = qmul(qmul(g1, x.r()), qconj(g2));
  Quat<T> ns = qmul(qmul(g2, x.s()), qconj(g3));
  Quat<T> nt = qmul(qmul(g3, x.t()), qconj(g1));
  return join(nr, ns, nt);
}

// Unit quaternion from a rational chart point (stereographic on S^3):
// g = ((1 - |u|^2) + 2u_1 i + 2u_2 j + 2u_3 k) / (1 + |u|^2).
template <class T>
Quat<T> unit_quaternion_from_chart(const std::array<T, 3>& u) {
  T u2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
  T den = T(1) + u2;
  return Quat<T>((T(1) - u2) / den, T(2) * u[0] / den, T(2) * u[1] / den,
                 T(2) * u[2] / den);
}

// A site is complex when every quaternion coordinate with basis index 2 or 3
// vanishes, i.e. (r, s, t) lies in C^3. There the Hessian splits into two
// 6x6 blocks in the index sets below.
constexpr std::array<std::size_t, 6> kComplexCoords = {0, 1, 4, 5, 8, 9};
constexpr std::array<std::size_t, 6> kQuatCoords = {2, 3, 6, 7, 10, 11};

template <class T>
bool is_complex_site(const V12<T>& a) {
  for (std::size_t i : kQuatCoords)
    if (!(a[i] == T(0))) return false;
  return true;
}

template <class T>
SymMatrix<T> extract_block(const SymMatrix<T>& h, const std::array<std::size_t, 6>& idx) {
  SymMatrix<T> b(6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i; j < 6; ++j) b.set(i, j, h.at(idx[i], idx[j]));
  return b;
}

// True iff every entry coupling the complex-coordinate block with the
// quaternion-coordinate block vanishes (exact for Rational).
template <class T>
bool off_block_vanishes(const SymMatrix<T>& h) {
  for (std::size_t i : kComplexCoords)
    for (std::size_t j : kQuatCoords)
      if (!(h.at(i, j) == T(0))) return false;
  return true;
}

inline double off_block_max_abs(const SymMatrix<double>& h) {
  double m = 0.0;
  for (std::size_t i : kComplexCoords)
    for (std::size_t j : kQuatCoords) m = std::max(m, std::abs(h.at(i, j)));
  return m;
}

// The quaternion-coordinate block of H_delta at a complex unit site equals
// N6 - (1+d) W I_6 where N6 depends only on (r0, r1, s0, s1, t0, t1):
// rows/columns ordered (r2, r3, s2, s3, t2, t3).
template <class T>
SymMatrix<T> n6_display(const V12<T>& a) {
  T r0 = a[0], r1 = a[1], s0 = a[4], s1 = a[5], t0 = a[8], t1 = a[9];
  SymMatrix<T> n(6);
  n.set(0, 2, -t0);
  n.set(0, 3, -t1);
  n.set(0, 4, -s0);
  n.set(0, 5, s1);
  n.set(1, 2, t1);
  n.set(1, 3, -t0);
  n.set(1, 4, -s1);
  n.set(1, 5, -s0);
  n.set(2, 4, -r0);
  n.set(2, 5, -r1);
  n.set(3, 4, r1);
  n.set(3, 5, -r0);
  return n;
}

template <class T>
SymMatrix<T> m6_display(const V12<T>& a, const T& delta) {
  T w = cubic_form(a);
  SymMatrix<T> m = n6_display(a);
  T shift = (T(1) + delta) * w;
  for (std::size_t i = 0; i < 6; ++i) m.add(i, i, -shift);
  return m;
}

// Compression of h to the hyperplane with unit normal nu: V^T h V for an
// orthonormal basis V of nu^perp, built by Gram-Schmidt over the coordinate
// directions. The compression spectrum does not depend on the basis choice.
SymMatrix<double> restrict_to_hyperplane(const SymMatrix<double>& h,
                                         const V12<double>& nu);

// Deleting row/column k is the compression onto the coordinate hyperplane
// x_k = 0.
template <class T>
SymMatrix<T> delete_coordinate(const SymMatrix<T>& h, std::size_t k) {
  SymMatrix<T> b(h.size() - 1);
  for (std::size_t i = 0, bi = 0; i < h.size(); ++i) {
    if (i == k) continue;
    for (std::size_t j = i, bj = bi; j < h.size(); ++j) {
      if (j == k) continue;
      b.set(bi, bj, h.at(i, j));
      ++bj;
    }
    ++bi;
  }
  return b;
}

// Basis-free trace of the compression of h to nu^perp:
//   Tr(V^T h V) = Tr h - nu^T h nu / |nu|^2.
// Exact for Rational inputs with any nonzero (not necessarily unit) nu.
template <class T>
T restricted_trace(const SymMatrix<T>& h, const V12<T>& nu) {
  T n2 = norm2(nu);
  if (n2 == T(0)) throw std::domain_error("restricted_trace: nu = 0");
  return h.trace() - h.quad(nu.c) / n2;
}

}  // namespace hsl
