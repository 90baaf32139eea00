// Hamilton quaternions over an arbitrary commutative scalar (double or Rational).
//
// Multiplication follows i*j = k, j*k = i, k*i = j, i*i = j*j = k*k = -1.
// Re(x*y) = Re(y*x) and Re(g*x*conj(g)) = Re(x)*|g|^2 are relied on by callers.
#pragma once

#include <array>
#include <cstddef>

namespace hsl {

template <class T>
struct Quat {
  std::array<T, 4> c{};  // c[0] + c[1] i + c[2] j + c[3] k

  Quat() = default;
  Quat(T a, T b, T cc, T d) : c{a, b, cc, d} {}

  T& operator[](std::size_t i) { return c[i]; }
  const T& operator[](std::size_t i) const { return c[i]; }
};

template <class T>
Quat<T> qmul(const Quat<T>& a, const Quat<T>& b) {
  return Quat<T>(
      a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
      a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
      a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
      a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]);
}

template <class T>
Quat<T> qconj(const Quat<T>& a) {
  return Quat<T>(a[0], -a[1], -a[2], -a[3]);
}

template <class T>
T qre(const Quat<T>& a) {
  return a[0];
}

template <class T>
T qnorm2(const Quat<T>& a) {
  return a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3];
}

template <class T>
Quat<T> qadd(const Quat<T>& a, const Quat<T>& b) {
  return Quat<T>(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]);
}

template <class T>
Quat<T> qscale(const T& s, const Quat<T>& a) {
  return Quat<T>(s * a[0], s * a[1], s * a[2], s * a[3]);
}

// Basis unit e_k: 1, i, j, k.
template <class T>
Quat<T> qbasis(std::size_t k) {
  Quat<T> q(T(0), T(0), T(0), T(0));
  q[k] = T(1);
  return q;
}

}  // namespace hsl
