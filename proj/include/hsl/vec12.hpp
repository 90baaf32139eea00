// Points of R^12 viewed as quaternion triples (r, s, t).
//
// Coordinates 0..3 are r, 4..7 are s, 8..11 are t. Helper constructors keep
// the block convention in one place so form/Hessian code never hand-indexes.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "hsl/quaternion.hpp"

namespace hsl {

template <class T>
struct V12 {
  std::array<T, 12> c{};

  V12() { c.fill(T(0)); }

  T& operator[](std::size_t i) { return c[i]; }
  const T& operator[](std::size_t i) const { return c[i]; }

  Quat<T> r() const { return Quat<T>(c[0], c[1], c[2], c[3]); }
  Quat<T> s() const { return Quat<T>(c[4], c[5], c[6], c[7]); }
  Quat<T> t() const { return Quat<T>(c[8], c[9], c[10], c[11]); }
};

template <class T>
V12<T> join(const Quat<T>& r, const Quat<T>& s, const Quat<T>& t) {
  V12<T> x;
  for (std::size_t k = 0; k < 4; ++k) {
    x[k] = r[k];
    x[4 + k] = s[k];
    x[8 + k] = t[k];
  }
  return x;
}

template <class T>
T dot(const V12<T>& a, const V12<T>& b) {
  T acc(0);
  for (std::size_t i = 0; i < 12; ++i) acc += a[i] * b[i];
  return acc;
}

template <class T>
T norm2(const V12<T>& a) {
  return dot(a, a);
}

template <class T>
V12<T> add(const V12<T>& a, const V12<T>& b) {
  V12<T> x;
  for (std::size_t i = 0; i < 12; ++i) x[i] = a[i] + b[i];
  return x;
}

template <class T>
V12<T> sub(const V12<T>& a, const V12<T>& b) {
  V12<T> x;
  for (std::size_t i = 0; i < 12; ++i) x[i] = a[i] - b[i];
  return x;
}

template <class T>
V12<T> scale(const T& s, const V12<T>& a) {
  V12<T> x;
  for (std::size_t i = 0; i < 12; ++i) x[i] = s * a[i];
  return x;
}

inline V12<double> normalized(const V12<double>& a) {
  double n = std::sqrt(norm2(a));
  return scale(1.0 / n, a);
}

// Rational point on the unit sphere S^11 via stereographic projection from
// the south pole: given u in Q^11,
//   x_0 = (1 - |u|^2) / (1 + |u|^2),  x_i = 2 u_{i-1} / (1 + |u|^2).
// u = 0 maps to the north pole e_0. Always satisfies |x|^2 = 1 exactly.
template <class T>
V12<T> sphere_point_from_chart(const std::array<T, 11>& u) {
  T u2(0);
  for (const T& ui : u) u2 += ui * ui;
  T den = T(1) + u2;
  V12<T> x;
  x[0] = (T(1) - u2) / den;
  for (std::size_t i = 0; i < 11; ++i) x[i + 1] = (T(2) * u[i]) / den;
  return x;
}

template <class T>
V12<double> to_double_vec(const V12<T>& a) {
  V12<double> x;
  for (std::size_t i = 0; i < 12; ++i) x[i] = to_double(a[i]);
  return x;
}

inline V12<double> to_double_vec(const V12<double>& a) { return a; }

}  // namespace hsl
