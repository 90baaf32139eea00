#include "hsl/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hsl/charpoly.hpp"
#include "hsl/hessian.hpp"
#include "hsl/poly_families.hpp"
#include "hsl/resultant.hpp"
#include "hsl/rng.hpp"
#include "hsl/spectra.hpp"
#include "hsl/sturm.hpp"

namespace hsl {
namespace {

void require_unit(const V12<Rational>& a, const char* who) {
  if (!(norm2(a) == Rational(1)))
    throw std::domain_error(std::string(who) + ": site is not a unit vector");
}

UniPoly expected_charpoly(const Invariants<Rational>& inv, const Rational& delta) {
  UniPoly p1 = p1_family(inv.W, delta);
  return p1 * p1 * p2_family(inv.W, inv.L, inv.M, delta);
}

// Real roots of p as a multiset, non-increasing. Empty result signals that
// some roots are not real (the multiplicity total falls short of the degree).
std::vector<double> real_root_multiset(const UniPoly& p) {
  std::vector<double> out;
  for (const RealRoot& r : sturm_real_roots(p, 1e-13))
    for (int k = 0; k < r.multiplicity; ++k) out.push_back(r.value);
  if (static_cast<int>(out.size()) != p.degree()) out.clear();
  return out;
}

template <class T>
V12<double> project_out(V12<double> v, const std::vector<T>& span) {
  for (const auto& s : span) {
    double c = 0.0;
    for (std::size_t i = 0; i < 12; ++i) c += v[i] * s[i];
    for (std::size_t i = 0; i < 12; ++i) v[i] -= c * s[i];
  }
  return v;
}

InterlacingCheck interlacing_from_invariants(const Rational& W, const Rational& L,
                                             const Rational& M, const Rational& delta,
                                             double slack_tol) {
  InterlacingCheck c;
  std::vector<double> mu = real_root_multiset(p1_family(W, delta));
  std::vector<double> nu = real_root_multiset(p2_family(W, L, M, delta));
  if (mu.size() != 3) {
    c.detail = "cubic factor has nonreal roots";
    return c;
  }
  if (nu.size() != 6) {
    c.detail = "sextic factor has nonreal roots";
    return c;
  }
  std::copy(mu.begin(), mu.end(), c.mu.begin());
  std::copy(nu.begin(), nu.end(), c.nu.begin());

  // Cross-check the trigonometric cubic solver against the Sturm roots. Not a
  // gate: near |W| = 1/(3 sqrt 3) the arccos loses a few digits by itself.
  std::array<double, 3> trig = mu_roots(to_double(W), to_double(delta));
  double trig_dev = 0.0;
  for (int i = 0; i < 3; ++i) trig_dev = std::max(trig_dev, std::abs(trig[i] - c.mu[i]));
  if (trig_dev > 1e-6) {
    std::ostringstream os;
    os << "trig solver deviates from Sturm roots by " << trig_dev;
    c.detail = os.str();
  }

  const double chain[8] = {c.mu[0] - c.nu[0], c.nu[0] - c.nu[1], c.nu[1] - c.nu[2],
                           c.nu[2] - c.mu[1], c.mu[1] - c.nu[3], c.nu[3] - c.nu[4],
                           c.nu[4] - c.nu[5], c.nu[5] - c.mu[2]};
  c.min_slack = *std::min_element(chain, chain + 8);

  std::array<double, 12> merged = {c.mu[0], c.mu[0], c.mu[1], c.mu[1], c.mu[2], c.mu[2],
                                   c.nu[0], c.nu[1], c.nu[2], c.nu[3], c.nu[4], c.nu[5]};
  std::sort(merged.begin(), merged.end(), std::greater<double>());
  c.merged = merged;

  c.pass = c.min_slack >= -slack_tol;
  return c;
}

// Merged-roots vs eigensolver gap at the double site; gates the check at 1e-9.
void attach_float_gap(InterlacingCheck& c, const V12<double>& site, double delta) {
  if (!c.pass) return;
  std::vector<double> lam = eigenvalues(hessian_at_unit(site, delta));
  double gap = 0.0;
  for (int i = 0; i < 12; ++i) gap = std::max(gap, std::abs(lam[i] - c.merged[i]));
  c.float_gap = gap;
  if (gap > 1e-9) {
    c.pass = false;
    c.detail = "eigensolver disagrees with the merged exact roots";
  }
}

}  // namespace

FactorizationCheck verify_factorization(const V12<Rational>& a, const Rational& delta) {
  require_unit(a, "verify_factorization");
  FactorizationCheck c;
  Invariants<Rational> inv = invariants(a);
  c.W = inv.W;
  c.L = inv.L;
  c.M = inv.M;
  UniPoly cp = charpoly_exact(hessian_at_unit(a, delta));
  UniPoly diff = cp - expected_charpoly(inv, delta);
  c.residuals.assign(13, Rational(0));
  for (std::size_t k = 0; k <= 12; ++k) c.residuals[k] = diff.coeff(k);
  c.pass = diff.is_zero();
  if (!c.pass) c.detail = "characteristic polynomial differs from p1^2 p2";
  return c;
}

FactorizationCheck verify_block_factorization(const V12<Rational>& a, const Rational& delta) {
  require_unit(a, "verify_block_factorization");
  if (!is_complex_site(a))
    throw std::domain_error("verify_block_factorization: site is not complex");
  FactorizationCheck c;
  Invariants<Rational> inv = invariants(a);
  c.W = inv.W;
  c.L = inv.L;
  c.M = inv.M;
  SymMatrix<Rational> h = hessian_at_unit(a, delta);
  if (!off_block_vanishes(h)) {
    c.detail = "complex/quaternion coupling block does not vanish";
    return c;
  }
  UniPoly cp_complex = charpoly_exact(extract_block(h, kComplexCoords));
  UniPoly cp_quat = charpoly_exact(extract_block(h, kQuatCoords));
  UniPoly p1 = p1_family(inv.W, delta);
  bool quat_ok = cp_quat == p1 * p1;
  bool complex_ok = cp_complex == p2_family(inv.W, inv.L, inv.M, delta);
  bool product_ok = cp_complex * cp_quat == charpoly_exact(h);
  c.pass = quat_ok && complex_ok && product_ok;
  if (!quat_ok)
    c.detail = "quaternion block charpoly differs from p1^2";
  else if (!complex_ok)
    c.detail = "complex block charpoly differs from p2";
  else if (!product_ok)
    c.detail = "block product differs from the full charpoly";
  return c;
}

InterlacingCheck verify_interlacing(const V12<Rational>& a, const Rational& delta,
                                    double slack_tol) {
  require_unit(a, "verify_interlacing");
  Invariants<Rational> inv = invariants(a);
  InterlacingCheck c =
      interlacing_from_invariants(inv.W, inv.L, inv.M, delta, slack_tol);
  attach_float_gap(c, to_double_vec(a), to_double(delta));
  return c;
}

InterlacingCheck verify_interlacing_at(double r0, double m, double n, double delta,
                                       double slack_tol) {
  Rational qr0 = rational_of_double(r0);
  Rational qm = rational_of_double(m);
  Rational qn = rational_of_double(n);
  Rational m2 = qm * qm, n2 = qn * qn;
  Rational W = qr0 * qm * qn;
  Rational L = m2 + n2 - m2 * n2 - m2 * m2 - n2 * n2;
  Rational M = m2 * n2 * (Rational(1) - m2 - n2);
  InterlacingCheck c = interlacing_from_invariants(W, L, M, rational_of_double(delta),
                                                   slack_tol);
  attach_float_gap(c, site_from_invariants(r0, m, n), delta);
  return c;
}

Lambda67Check verify_lambda67(const V12<double>& a, double tol) {
  Lambda67Check c;
  V12<double> u = normalized(a);
  c.closed_form = mu_roots(cubic_form(u), 0.0)[1];
  std::vector<double> lam = eigenvalues(hessian_at_unit(u, 0.0));
  c.lambda6 = lam[5];
  c.lambda7 = lam[6];
  c.deviation =
      std::max(std::abs(c.lambda6 - c.closed_form), std::abs(c.lambda7 - c.closed_form));
  c.pass = c.deviation <= tol;
  return c;
}

MultiplicityCheck verify_double_root_multiplicity(const V12<Rational>& a,
                                                  const Rational& delta) {
  require_unit(a, "verify_double_root_multiplicity");
  MultiplicityCheck c;
  Invariants<Rational> inv = invariants(a);
  UniPoly cp = charpoly_exact(hessian_at_unit(a, delta));
  UniPoly p1 = p1_family(inv.W, delta);
  c.p1_squared_divides = UniPoly::divides(p1 * p1, cp);
  c.p1_divides_derivative = UniPoly::divides(p1, cp.derivative());
  c.pass = c.p1_squared_divides && c.p1_divides_derivative;
  return c;
}

PositionCheck classify_and_verify_position(const Rational& r0, const Rational& m,
                                           const Rational& n, const Rational& delta,
                                           double tol) {
  PositionCheck c;
  Rational m2 = m * m, n2 = n * n;
  Rational W = r0 * m * n;
  Rational M = m2 * n2 * (Rational(1) - m2 - n2);
  int s = resultant_sign_exact(W, M, delta);
  c.region = s > 0 ? RegionLabel::B_PLUS : s < 0 ? RegionLabel::B_MINUS
                                                 : RegionLabel::B_ZERO;
  c.w_sign = sign(W);

  // Admissible mu_2 position pairs (1-based). On the boundary set the
  // closures overlap, so several patterns are acceptable there.
  std::vector<std::array<int, 2>> candidates;
  if (c.region == RegionLabel::B_PLUS) {
    candidates.push_back(c.w_sign >= 0 ? std::array<int, 2>{5, 6}
                                       : std::array<int, 2>{7, 8});
  } else if (c.region == RegionLabel::B_MINUS) {
    candidates.push_back({6, 7});
  } else {
    candidates.push_back({6, 7});
    if (c.w_sign >= 0) candidates.push_back({5, 6});
    if (c.w_sign <= 0) candidates.push_back({7, 8});
  }

  V12<double> site = site_from_invariants(to_double(r0), to_double(m), to_double(n));
  std::vector<double> lam = eigenvalues(hessian_at_unit(site, to_double(delta)));
  std::array<double, 3> mu = mu_roots(to_double(W), to_double(delta));

  c.edge_deviation = std::max(
      std::max(std::abs(lam[0] - mu[0]), std::abs(lam[1] - mu[0])),
      std::max(std::abs(lam[10] - mu[2]), std::abs(lam[11] - mu[2])));

  double best = -1.0;
  for (const auto& pos : candidates) {
    double dev = std::max(std::abs(lam[pos[0] - 1] - mu[1]),
                          std::abs(lam[pos[1] - 1] - mu[1]));
    if (best < 0.0 || dev < best) {
      best = dev;
      c.mu2_positions = pos;
    }
  }
  c.mu2_deviation = best;
  c.pass = c.mu2_deviation <= tol && c.edge_deviation <= tol;
  if (!c.pass) c.detail = "eigenvalue positions deviate from the classification";
  return c;
}

ResultantCheck verify_resultant_identity(const Rational& r0, const Rational& m,
                                         const Rational& n, const Rational& delta) {
  ResultantCheck c;
  Rational m2 = m * m, n2 = n * n, r0sq = r0 * r0;
  Rational W = r0 * m * n;
  Rational L = m2 + n2 - m2 * n2 - m2 * m2 - n2 * n2;
  Rational M = m2 * n2 * (Rational(1) - m2 - n2);
  c.sylvester = resultant(p1_family(W, delta), p2_family(W, L, M, delta));
  c.sign = sign(c.sylvester);
  c.matches_closed = c.sylvester == resultant_closed(W, M, delta);
  c.matches_quartic_prefactor =
      c.sylvester == resultant_variant_quartic_prefactor(W, m2, n2, r0sq, delta);
  c.matches_quadratic_prefactor =
      c.sylvester == resultant_variant_quadratic_prefactor(W, m2, n2, r0sq, delta);
  c.pass = c.matches_closed;
  if (!c.pass) c.detail = "Sylvester resultant differs from the closed form";
  return c;
}

SeparationCheck separation_check(const V12<double>& a_in, const V12<double>& b_in,
                                 double delta, int restarts, std::uint64_t seed,
                                 double tol) {
  V12<double> a = normalized(a_in);
  V12<double> b = normalized(b_in);
  V12<double> d = sub(a, b);
  if (norm2(d) == 0.0) throw std::domain_error("separation_check: a = b");

  SeparationCheck c;
  c.bound = std::sqrt(norm2(d) / 3.0);
  SymMatrix<double> D =
      sym_sub(hessian_at_unit(a, delta), hessian_at_unit(b, delta));

  // Orthonormal span of {a, b}; one vector when b = +-a.
  std::vector<V12<double>> span;
  span.push_back(a);
  V12<double> bp = project_out(b, span);
  if (norm2(bp) > 1e-20) span.push_back(scale(1.0 / std::sqrt(norm2(bp)), bp));

  // Exact-in-float oracle: spectral radius of the compression of D to the
  // orthogonal complement of span{a, b}.
  std::vector<V12<double>> basis;
  for (std::size_t k = 0; k < 12; ++k) {
    V12<double> v;
    v[k] = 1.0;
    v = project_out(v, span);
    v = project_out(v, basis);
    double n2v = norm2(v);
    if (n2v > 1e-16) basis.push_back(scale(1.0 / std::sqrt(n2v), v));
  }
  SymMatrix<double> comp(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    V12<double> Dbi;
    D.apply(basis[i].c, Dbi.c);
    for (std::size_t j = i; j < basis.size(); ++j)
      comp.set(i, j, dot(Dbi, basis[j]));
  }
  c.oracle = spectral_radius(comp);

  // Projected-gradient ascent of |e^T D e| over unit e in span{a,b}^perp,
  // with step halving and random restarts.
  Rng g(seed);
  double best = 0.0;
  V12<double> best_e;
  for (int r = 0; r < restarts; ++r) {
    V12<double> e;
    for (std::size_t i = 0; i < 12; ++i) e[i] = g.gaussian();
    e = project_out(e, span);
    if (norm2(e) < 1e-12) continue;
    e = scale(1.0 / std::sqrt(norm2(e)), e);
    double val = D.quad(e.c);
    double step = 0.5;
    for (int iter = 0; iter < 200 && step > 1e-14; ++iter) {
      V12<double> De;
      D.apply(e.c, De.c);
      V12<double> grad = scale(val >= 0.0 ? 2.0 : -2.0, De);
      grad = project_out(grad, span);
      double ge = dot(grad, e);
      for (std::size_t i = 0; i < 12; ++i) grad[i] -= ge * e[i];
      if (norm2(grad) < 1e-24) break;
      bool advanced = false;
      while (step > 1e-14) {
        V12<double> cand = add(e, scale(step, grad));
        cand = project_out(cand, span);
        cand = scale(1.0 / std::sqrt(norm2(cand)), cand);
        double cval = D.quad(cand.c);
        if (std::abs(cval) > std::abs(val)) {
          e = cand;
          val = cval;
          advanced = true;
          step *= 1.5;
          break;
        }
        step *= 0.5;
      }
      if (!advanced) break;
    }
    if (std::abs(val) > best) {
      best = std::abs(val);
      best_e = e;
    }
  }
  c.best_witness = best;
  c.witness_e.assign(best_e.c.begin(), best_e.c.end());
  c.status = best >= c.bound - tol ? CheckStatus::PASS : CheckStatus::INCONCLUSIVE;
  return c;
}

}  // namespace hsl
