// Exact rational scalar used by every exact verification path.
//
// Rational is GMP's canonicalizing mpq_class: always reduced, denominator > 0.
// Helpers here cover the few operations the lab needs beyond the operators.
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hsl {

using Rational = mpq_class;
using Integer = mpz_class;

inline double to_double(const Rational& q) { return q.get_d(); }

// mpq_class's two-argument constructor does NOT canonicalize; this one does.
// Use it whenever num/den might share a factor.
inline Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Exact conversion: every finite IEEE double is a rational.
inline Rational rational_of_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational_of_double: non-finite");
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

// Accepts "p", "-p", "p/q". Used by the CLI for exact-valued flags.
inline Rational rational_from_string(const std::string& s) {
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("rational_from_string: cannot parse '" + s + "'");
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("rational_from_string: zero denominator");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational pow_ui(const Rational& base, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
  return r;  // num/den already coprime, so the power is canonical
}

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace hsl
