// Dense univariate polynomials with exact rational coefficients.
//
// Coefficients are stored ascending by degree with trailing zeros stripped,
// so degree() == coeffs.size()-1 and the zero polynomial has empty storage.
// All arithmetic is exact.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hsl/rational.hpp"

namespace hsl {

class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> ascending);
  static UniPoly constant(const Rational& c);
  static UniPoly monomial(std::size_t deg, const Rational& c);

  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is reported as -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& coeff(std::size_t k) const;  // 0 beyond degree
  const Rational& leading() const;             // precondition: nonzero

  Rational eval(const Rational& x) const;
  double eval_double(double x) const;

  UniPoly derivative() const;
  UniPoly monic() const;

  // Composition with the linear shift T -> T + c, i.e. returns p(T + c).
  UniPoly shift(const Rational& c) const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const Rational& s, const UniPoly& a);
  friend bool operator==(const UniPoly& a, const UniPoly& b);

  // Exact euclidean division; quotient/remainder with deg r < deg b.
  static void divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r);

  // True iff b divides a exactly (zero remainder).
  static bool divides(const UniPoly& b, const UniPoly& a);

  // Monic gcd via the euclidean algorithm over Q.
  static UniPoly gcd(const UniPoly& a, const UniPoly& b);

  // p / gcd(p, p'); same roots, all simple.
  UniPoly squarefree_part() const;

  std::string to_string(const std::string& var = "T") const;

 private:
  void strip();
  std::vector<Rational> c_;
};

}  // namespace hsl
