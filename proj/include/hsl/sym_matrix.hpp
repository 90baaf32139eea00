// Dense symmetric matrix with packed upper-triangle storage.
//
// Only the entries i <= j are stored; get/set mirror automatically. Works for
// both exact Rational and double scalars.
#pragma once

#include <cstddef>
#include <vector>

namespace hsl {

template <class T>
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t n) : n_(n), a_(n * (n + 1) / 2, T(0)) {}

  std::size_t size() const { return n_; }

  const T& at(std::size_t i, std::size_t j) const {
    return a_[idx(i <= j ? i : j, i <= j ? j : i)];
  }

  void set(std::size_t i, std::size_t j, const T& v) {
    a_[idx(i <= j ? i : j, i <= j ? j : i)] = v;
  }

  void add(std::size_t i, std::size_t j, const T& v) {
    a_[idx(i <= j ? i : j, i <= j ? j : i)] += v;
  }

  T trace() const {
    T acc(0);
    for (std::size_t i = 0; i < n_; ++i) acc += at(i, i);
    return acc;
  }

  // Quadratic form v^T A v.
  template <class Vec>
  T quad(const Vec& v) const {
    T acc(0);
    for (std::size_t i = 0; i < n_; ++i) {
      acc += at(i, i) * v[i] * v[i];
      for (std::size_t j = i + 1; j < n_; ++j) acc += T(2) * at(i, j) * v[i] * v[j];
    }
    return acc;
  }

  // y = A v.
  template <class VecIn, class VecOut>
  void apply(const VecIn& v, VecOut& y) const {
    for (std::size_t i = 0; i < n_; ++i) {
      T acc(0);
      for (std::size_t j = 0; j < n_; ++j) acc += at(i, j) * v[j];
      y[i] = acc;
    }
  }

 private:
  std::size_t idx(std::size_t i, std::size_t j) const {
    return i * n_ - i * (i - 1) / 2 + (j - i);
  }

  std::size_t n_;
  std::vector<T> a_;
};

template <class T>
SymMatrix<T> sym_sub(const SymMatrix<T>& a, const SymMatrix<T>& b) {
  SymMatrix<T> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i; j < a.size(); ++j) c.set(i, j, a.at(i, j) - b.at(i, j));
  return c;
}

template <class T>
SymMatrix<T> sym_scale(const T& s, const SymMatrix<T>& a) {
  SymMatrix<T> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i; j < a.size(); ++j) c.set(i, j, s * a.at(i, j));
  return c;
}

template <class T>
SymMatrix<double> to_double_mat(const SymMatrix<T>& a) {
  SymMatrix<double> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i; j < a.size(); ++j) c.set(i, j, to_double(a.at(i, j)));
  return c;
}

inline SymMatrix<double> to_double_mat(const SymMatrix<double>& a) { return a; }

}  // namespace hsl
