// The cubic form P(X) = Re(r s t) for X = (r, s, t) in H^3 = R^12,
// together with its gradient and (constant-in-degree-1) second derivative.
//
// Gradient blocks: dP/dr = conj(s t), dP/ds = conj(t r), dP/dt = conj(r s),
// using Re(x y) = Re(y x) and d/dx Re(x c) = conj(c) componentwise in the
// real coordinates of x.
//
// Second derivative: D2P(X) has zero diagonal 4x4 blocks; the off-diagonal
// block coupling coordinate e_k of one factor with e_l of the next is
// R(x)_{kl} = Re(e_k e_l x) where x is the remaining factor:
//   d2P/(dr ds) = R(t), d2P/(ds dt) = R(r), d2P/(dr dt) = R(s)^T.
#pragma once

#include <array>
#include <cstddef>

#include "hsl/quaternion.hpp"
#include "hsl/sym_matrix.hpp"
#include "hsl/vec12.hpp"

namespace hsl {

template <class T>
T cubic_form(const V12<T>& x) {
  return qre(qmul(qmul(x.r(), x.s()), x.t()));
}

template <class T>
V12<T> cubic_gradient(const V12<T>& x) {
  Quat<T> gr = qconj(qmul(x.s(), x.t()));
  Quat<T> gs = qconj(qmul(x.t(), x.r()));
  Quat<T> gt = qconj(qmul(x.r(), x.s()));
  return join(gr, gs, gt);
}

namespace detail {

// R(x)_{kl} = Re(e_k e_l x), the 4x4 matrix of the bilinear map
// (u, v) -> Re(u v x) in the quaternion basis.
template <class T>
std::array<std::array<T, 4>, 4> re_pair_matrix(const Quat<T>& x) {
  std::array<std::array<T, 4>, 4> m;
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t l = 0; l < 4; ++l)
      m[k][l] = qre(qmul(qmul(qbasis<T>(k), qbasis<T>(l)), x));
  return m;
}

}  // namespace detail

// Full 12x12 Hessian of the cubic form at x (entries are linear in x).
template <class T>
SymMatrix<T> cubic_second_derivative(const V12<T>& x) {
  SymMatrix<T> h(12);
  auto rs = detail::re_pair_matrix(x.t());  // couples r-block with s-block
  auto st = detail::re_pair_matrix(x.r());  // couples s-block with t-block
  auto tr = detail::re_pair_matrix(x.s());  // couples t-block with r-block
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t l = 0; l < 4; ++l) {
      h.set(k, 4 + l, rs[k][l]);
      h.set(4 + k, 8 + l, st[k][l]);
      // d2P/(dr_k dt_l) = Re(e_l e_k s): transpose of the t->r coupling.
      h.set(k, 8 + l, tr[l][k]);
    }
  }
  return h;
}

// Second directional derivative P_vv(x) = v^T D2P(x) v, computed directly as
// 2 [ Re(x_r v_s v_t) + Re(v_r x_s v_t) + Re(v_r v_s x_t) ]
// (polarization of the trilinear expansion of P(x + v)).
template <class T>
T cubic_second_directional(const V12<T>& x, const V12<T>& v) {
  T a = qre(qmul(qmul(x.r(), v.s()), v.t()));
  T b = qre(qmul(qmul(v.r(), x.s()), v.t()));
  T c = qre(qmul(qmul(v.r(), v.s()), x.t()));
  return T(2) * (a + b + c);
}

}  // namespace hsl
