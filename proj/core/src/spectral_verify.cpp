#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "cayley/errors.hpp"
#include "cayley/spectral.hpp"

namespace cayley {

namespace {

GroupElement syllable_power(int factor, int exp) {
  GroupElement g;
  if (exp != 0)
    g.rep = std::vector<Syllable>{
        Syllable{static_cast<std::int32_t>(factor), static_cast<std::int32_t>(exp)}};
  else
    g.rep = std::vector<Syllable>{};
  return g;
}

RingElement one_minus(const GroupSpec& spec, const GroupElement& g) {
  return subtract(ring_one(spec), ring_delta(spec, g));
}

// k = (1/m) sum_{j=1}^{m-1} sum_{i=0}^{j-1} s^i, the explicit one-sided
// inverse of (1-s) modulo the averaging projection: (1-s) k = 1 - p.
RingElement telescoping_inverse(const GroupSpec& spec, int factor, int order) {
  RingElement k = ring_zero(spec);
  for (int j = 1; j < order; ++j)
    for (int i = 0; i < j; ++i)
      k = add(k, ring_delta(spec, syllable_power(factor, i)));
  return scalar_mul(Rational(1, order), k);
}

// The multiplicative functional a(g) = prod over syllables of
// -1/(order(factor)-1), evaluated on a window.
std::map<GroupElement, Rational> witness_function(const std::vector<GroupElement>& window,
                                                  int m, int n) {
  std::map<GroupElement, Rational> a;
  for (const auto& g : window) {
    Rational v = 1;
    for (const auto& syl : std::get<std::vector<Syllable>>(g.rep))
      v *= Rational(-1, (syl.factor == 0 ? m : n) - 1);
    a.emplace(g, v);
  }
  return a;
}

// (x * f)(g) = sum_h x(h) f(h^-1 g), evaluated where every lookup lands
// inside f's window. Throws if a lookup escapes (the caller sizes windows
// so it cannot).
Rational apply_element(const GroupSpec& spec, const RingElement& x,
                       const std::map<GroupElement, Rational>& f, const GroupElement& g) {
  Rational out = 0;
  for (const auto& [h, c] : x.coeffs) {
    const GroupElement hg = multiply(spec, inverse(spec, h), g);
    const auto it = f.find(hg);
    if (it == f.end())
      throw std::invalid_argument("window too small for exact evaluation");
    out += c * it->second;
  }
  return out;
}

}  // namespace

KernelCheckReport verify_kernel_structure(int m, int n, const KernelCheckOptions& opts) {
  if (m < 2 || n < 2) throw std::invalid_argument("factor orders must be >= 2");
  if (m == 2 && n == 2)
    throw unsupported_error(
        "Z2 * Z2 is infinite dihedral (amenable): the degree-1 kernel analysis "
        "requires (m-1)(n-1) > 1");
  if (opts.witness_window_radius < 3)
    throw std::invalid_argument("witness window radius must be >= 3");
  if (opts.altproj_radius < 1 || opts.altproj_iterations < 0)
    throw std::invalid_argument("bad alternating-projection options");

  const GroupSpec spec = make_free_product({m, n});
  const GroupElement s = syllable_power(0, 1);
  const GroupElement t = syllable_power(1, 1);

  std::vector<GroupElement> sub_s, sub_t;
  for (int i = 0; i < m; ++i) sub_s.push_back(syllable_power(0, i));
  for (int i = 0; i < n; ++i) sub_t.push_back(syllable_power(1, i));
  const RingElement p = averaging_projection(spec, sub_s);
  const RingElement q = averaging_projection(spec, sub_t);

  KernelCheckReport report;
  report.m = m;
  report.n = n;

  // (1) Splitting identity for the degree-1 Laplacian.
  const CochainComplex complex = free_product_complex(m, n, 2);
  const RingMatrix delta1 = laplacian(complex, 1);
  {
    RingMatrix diag = mat_zero(spec, 2, 2);
    diag.at(0, 0) = scalar_mul(Rational(m) * m, p);
    diag.at(1, 1) = scalar_mul(Rational(n) * n, q);
    RingMatrix g = mat_zero(spec, 2, 2);
    g.at(0, 0) = one_minus(spec, s);
    g.at(1, 1) = one_minus(spec, t);
    RingMatrix ones = mat_zero(spec, 2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) ones.at(i, j) = ring_one(spec);
    const RingMatrix rhs = mat_add(diag, mat_mul(mat_mul(g, ones), mat_star(g)));
    report.splitting_identity_ok = (delta1 == rhs);
  }

  // (2) Telescoping factorizations 1 - p = (1-s) k = k (1-s), same for t.
  const RingElement k = telescoping_inverse(spec, 0, m);
  const RingElement l = telescoping_inverse(spec, 1, n);
  {
    const RingElement oms = one_minus(spec, s);
    const RingElement omt = one_minus(spec, t);
    const RingElement one_minus_p = subtract(ring_one(spec), p);
    const RingElement one_minus_q = subtract(ring_one(spec), q);
    report.factorization_ok = convolve(oms, k) == one_minus_p &&
                              convolve(k, oms) == one_minus_p &&
                              convolve(omt, l) == one_minus_q &&
                              convolve(l, omt) == one_minus_q;
  }

  // (3) Exact kernel witness xi = [k* a; -l* a].
  {
    const int radius = opts.witness_window_radius;
    report.witness_window_radius = radius;
    const std::vector<GroupElement> window = ball(spec, radius);
    const std::map<GroupElement, Rational> a = witness_function(window, m, n);

    bool annihilated = true;
    std::map<GroupElement, Rational> xi1, xi2;
    const RingElement k_star = star(k);
    const RingElement l_star = star(l);
    for (const auto& g : ball(spec, radius - 1)) {
      if (!(apply_element(spec, p, a, g) == 0) || !(apply_element(spec, q, a, g) == 0))
        annihilated = false;
      xi1.emplace(g, apply_element(spec, k_star, a, g));
      xi2.emplace(g, -apply_element(spec, l_star, a, g));
    }

    Rational norm_sq = 0;
    for (const auto& [g, v] : xi1) norm_sq += v * v;
    for (const auto& [g, v] : xi2) norm_sq += v * v;
    report.witness_norm_sq = norm_sq;

    // Rows of Delta_1 xi, exact on the inner window (the Laplacian entries
    // propagate by at most 2, xi is exact out to radius-1).
    Rational max_abs = 0;
    bool rows_vanish = true;
    for (const auto& g : ball(spec, radius - 3)) {
      for (int row = 0; row < 2; ++row) {
        const Rational v = apply_element(spec, delta1.at(row, 0), xi1, g) +
                           apply_element(spec, delta1.at(row, 1), xi2, g);
        if (!(v == 0)) rows_vanish = false;
        const Rational av = v < 0 ? Rational(-v) : v;
        if (av > max_abs) max_abs = av;
      }
    }
    report.witness_residual = to_double(max_abs);
    report.witness_ok = annihilated && rows_vanish && norm_sq > 0;
  }

  // Diagnostic: alternating projections (1-q)(1-p) on the compressed window,
  // seeded with the scalar witness. The compressed p, q are not exact
  // projections (boundary truncation), so the residual stalls at the level
  // the compression allows; reported, not gated.
  {
    const int radius = opts.altproj_radius;
    report.altproj_radius = radius;
    report.altproj_iterations = opts.altproj_iterations;

    RingMatrix pm = mat_zero(spec, 1, 1);
    pm.at(0, 0) = p;
    RingMatrix qm = mat_zero(spec, 1, 1);
    qm.at(0, 0) = q;
    const CompressedOperator cp = compress(pm, radius);
    const CompressedOperator cq = compress(qm, radius);

    const std::map<GroupElement, Rational> a = witness_function(cp.window, m, n);
    Eigen::VectorXd y(cp.dim());
    for (int i = 0; i < cp.dim(); ++i) y[i] = to_double(a.at(cp.window[i]));
    y.normalize();
    for (int it = 0; it < opts.altproj_iterations; ++it) {
      y -= cp.op * y;
      y -= cq.op * y;
      const double norm = y.norm();
      if (norm < 1e-300) break;
      y /= norm;
    }
    const double norm = y.norm();
    if (norm > 0) {
      const double rp = (cp.op * y).norm() / norm;
      const double rq = (cq.op * y).norm() / norm;
      report.altproj_residual = std::max(rp, rq);
    } else {
      report.altproj_residual = 1.0;
    }
  }

  return report;
}

}  // namespace cayley
