#include "hsl/unipoly.hpp"

#include <sstream>
#include <stdexcept>

namespace hsl {

namespace {
const Rational kZero(0);
}

UniPoly::UniPoly(std::vector<Rational> ascending) : c_(std::move(ascending)) { strip(); }

UniPoly UniPoly::constant(const Rational& c) { return UniPoly({c}); }

UniPoly UniPoly::monomial(std::size_t deg, const Rational& c) {
  std::vector<Rational> v(deg + 1, Rational(0));
  v[deg] = c;
  return UniPoly(std::move(v));
}

void UniPoly::strip() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

const Rational& UniPoly::coeff(std::size_t k) const {
  if (k < c_.size()) return c_[k];
  return kZero;
}

const Rational& UniPoly::leading() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

Rational UniPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

double UniPoly::eval_double(double x) const {
  double acc = 0.0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + to_double(c_[i]);
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly();
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rational(static_cast<long>(i)) * c_[i];
  return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  Rational inv = Rational(1) / leading();
  return inv * *this;
}

UniPoly UniPoly::shift(const Rational& c) const {
  // Horner in the shifted variable: p(T+c) built from highest coefficient down.
  UniPoly acc;
  UniPoly lin({c, Rational(1)});
  for (std::size_t i = c_.size(); i-- > 0;) {
    acc = acc * lin + UniPoly::constant(c_[i]);
  }
  return acc;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
  return UniPoly(std::move(v));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
  return UniPoly(std::move(v));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly();
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return UniPoly(std::move(v));
}

UniPoly operator*(const Rational& s, const UniPoly& a) {
  std::vector<Rational> v(a.c_);
  for (auto& x : v) x *= s;
  return UniPoly(std::move(v));
}

bool operator==(const UniPoly& a, const UniPoly& b) {
  if (a.c_.size() != b.c_.size()) return false;
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

void UniPoly::divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  std::vector<Rational> rem(a.c_);
  int db = b.degree();
  int da = static_cast<int>(rem.size()) - 1;
  if (da < db) {
    q = UniPoly();
    r = UniPoly(std::move(rem));
    return;
  }
  std::vector<Rational> quot(da - db + 1, Rational(0));
  Rational lead_inv = Rational(1) / b.leading();
  for (int k = da; k >= db; --k) {
    Rational f = rem[k] * lead_inv;
    if (sgn(f) != 0) {
      quot[k - db] = f;
      for (int j = 0; j <= db; ++j) rem[k - db + j] -= f * b.c_[j];
    }
  }
  q = UniPoly(std::move(quot));
  r = UniPoly(std::move(rem));
}

bool UniPoly::divides(const UniPoly& b, const UniPoly& a) {
  UniPoly q, r;
  divmod(a, b, q, r);
  return r.is_zero();
}

UniPoly UniPoly::gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly q, r;
    divmod(x, y, q, r);
    x = y;
    y = r.monic();  // monic normalization keeps coefficient growth in check
  }
  return x.monic();
}

UniPoly UniPoly::squarefree_part() const {
  if (degree() <= 0) return *this;
  UniPoly g = gcd(*this, derivative());
  if (g.degree() <= 0) return *this;
  UniPoly q, r;
  divmod(*this, g, q, r);
  return q;
}

std::string UniPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (sgn(c_[i]) == 0) continue;
    if (!first) os << (sgn(c_[i]) > 0 ? " + " : " - ");
    else if (sgn(c_[i]) < 0) os << "-";
    Rational a = abs(c_[i]);
    bool unit = (a == Rational(1));
    if (i == 0 || !unit) os << hsl::to_string(a);
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

}  // namespace hsl
