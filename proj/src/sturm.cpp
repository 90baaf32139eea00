#include "hsl/sturm.hpp"

#include <algorithm>
#include <stdexcept>

namespace hsl {

namespace {

// Positive rescale to keep Sturm-chain coefficients small without touching
// signs: divide by |leading coefficient|.
UniPoly positive_normalize(const UniPoly& p) {
  if (p.is_zero()) return p;
  Rational a = abs(p.leading());
  return (Rational(1) / a) * p;
}

int sign_variations(const std::vector<UniPoly>& chain, const Rational& x) {
  int count = 0, prev = 0;
  for (const UniPoly& s : chain) {
    int sg = sgn(s.eval(x));
    if (sg == 0) continue;
    if (prev != 0 && sg != prev) ++count;
    prev = sg;
  }
  return count;
}

// Multiplicity of the single root of p inside (a, b]: one plus the
// multiplicity of that root in gcd(p, p'), which has strictly smaller degree.
int multiplicity_in(const UniPoly& p, const Rational& a, const Rational& b) {
  UniPoly sf = p.squarefree_part();
  auto chain = sturm_chain(sf);
  if (sturm_count(chain, a, b) == 0) return 0;
  UniPoly g = UniPoly::gcd(p, p.derivative());
  if (g.degree() <= 0) return 1;
  return 1 + multiplicity_in(g, a, b);
}

}  // namespace

std::vector<UniPoly> sturm_chain(const UniPoly& p) {
  std::vector<UniPoly> chain;
  chain.push_back(positive_normalize(p));
  if (p.degree() <= 0) return chain;
  chain.push_back(positive_normalize(p.derivative()));
  while (chain.back().degree() > 0) {
    UniPoly q, r;
    UniPoly::divmod(chain[chain.size() - 2], chain.back(), q, r);
    if (r.is_zero()) break;
    chain.push_back(positive_normalize(Rational(-1) * r));
  }
  return chain;
}

int sturm_count(const std::vector<UniPoly>& chain, const Rational& a, const Rational& b) {
  return sign_variations(chain, a) - sign_variations(chain, b);
}

std::vector<RealRoot> sturm_real_roots(const UniPoly& p, const Rational& lo,
                                       const Rational& hi, double tol) {
  if (p.is_zero()) throw std::domain_error("root isolation of zero polynomial");
  std::vector<RealRoot> out;
  if (p.degree() == 0) return out;

  UniPoly sf = p.squarefree_part();
  auto chain = sturm_chain(sf);
  bool multiple_roots = UniPoly::gcd(p, p.derivative()).degree() > 0;

  // (a, b] intervals miss a root exactly at lo; handle it directly.
  if (sgn(p.eval(lo)) == 0) {
    RealRoot r{to_double(lo), lo, lo, 1};
    if (multiple_roots) {
      // Shrink the probe interval until it isolates lo from other roots.
      Rational eps(1, 1000000);
      while (sturm_count(chain, lo - eps, lo) > 1) eps /= Rational(2);
      r.multiplicity = multiplicity_in(p, lo - eps, lo);
    }
    out.push_back(r);
  }

  // Work stack of (a, b] intervals with their root counts.
  struct Item {
    Rational a, b;
    int count;
  };
  std::vector<Item> stack;
  int total = sturm_count(chain, lo, hi);
  if (total > 0) stack.push_back({lo, hi, total});

  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.count == 1) {
      // Refine by bisection; every midpoint sign is exact. The root stays in
      // the half-open interval (a, b] throughout.
      Rational a = it.a, b = it.b;
      Rational open_edge = it.a;
      while (to_double(b - a) > tol) {
        Rational mid = (a + b) / Rational(2);
        int sm = sgn(sf.eval(mid));
        if (sm == 0) {
          open_edge = a;
          a = mid;
          b = mid;
          break;
        }
        // Root is in (a, mid] iff the count there is 1.
        if (sturm_count(chain, a, mid) == 1) b = mid;
        else a = mid;
      }
      RealRoot r{to_double((a + b) / Rational(2)), a, b, 1};
      if (multiple_roots) {
        // (left, b] isolates this root, so the gcd-chain count is exact.
        const Rational& left = (a == b) ? open_edge : a;
        r.multiplicity = multiplicity_in(p, left, b);
      }
      out.push_back(r);
    } else if (it.count > 1) {
      Rational mid = (it.a + it.b) / Rational(2);
      int left = sturm_count(chain, it.a, mid);
      if (left > 0) stack.push_back({it.a, mid, left});
      if (it.count - left > 0) stack.push_back({mid, it.b, it.count - left});
    }
  }

  std::sort(out.begin(), out.end(),
            [](const RealRoot& x, const RealRoot& y) { return x.value > y.value; });
  return out;
}

std::vector<RealRoot> sturm_real_roots(const UniPoly& p, double tol) {
  // Cauchy bound: all roots lie in |x| <= 1 + max|a_i / a_n|.
  Rational bound(1);
  const Rational& lead = p.leading();
  for (int i = 0; i < p.degree(); ++i) {
    Rational c = abs(p.coeff(static_cast<std::size_t>(i)) / lead);
    if (c > bound) bound = c;
  }
  bound += Rational(1);
  return sturm_real_roots(p, -bound, bound, tol);
}

}  // namespace hsl
