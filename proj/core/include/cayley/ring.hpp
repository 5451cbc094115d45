#pragma once

#include <map>
#include <vector>

#include "cayley/group.hpp"
#include "cayley/rational.hpp"

namespace cayley {

// ---------------------------------------------------------------------------
// The rational group ring Q[G] and matrices over it.
//
// A RingElement is a finitely supported function G -> Q, stored as an
// ordered map from group elements (in normal form) to nonzero rationals;
// zero coefficients are pruned eagerly, so equality is structural.
// ---------------------------------------------------------------------------

struct RingElement {
  GroupSpec spec;
  std::map<GroupElement, Rational> coeffs;

  bool operator==(const RingElement& other) const;
  bool is_zero() const { return coeffs.empty(); }
};

RingElement ring_zero(const GroupSpec& spec);
RingElement ring_one(const GroupSpec& spec);
// coeff * delta_g
RingElement ring_delta(const GroupSpec& spec, const GroupElement& g,
                       const Rational& coeff = Rational(1));

Rational coefficient(const RingElement& a, const GroupElement& g);

RingElement add(const RingElement& a, const RingElement& b);
RingElement subtract(const RingElement& a, const RingElement& b);
RingElement negate(const RingElement& a);
RingElement scalar_mul(const Rational& c, const RingElement& a);
// Convolution product: (a*b)(g) = sum_{uv=g} a(u) b(v).
RingElement convolve(const RingElement& a, const RingElement& b);
// The *-involution a*(g) = conj(a(g^-1)); coefficients are rational, so
// this is just a |-> a composed with inversion. Antimultiplicative.
RingElement star(const RingElement& a);

// l1 norm of a single element: sum of |coefficients|.
Rational l1_norm(const RingElement& a);

// Averaging projection (1/|H|) sum_{h in H} delta_h over a finite subgroup.
// Validates that `subgroup` contains the identity and is closed under
// multiplication and inverses; throws std::invalid_argument otherwise.
RingElement averaging_projection(const GroupSpec& spec,
                                 const std::vector<GroupElement>& subgroup);

// ---------------------------------------------------------------------------
// Dense matrices over the group ring (small: operator blocks, <= ~4x4).
// ---------------------------------------------------------------------------

struct RingMatrix {
  GroupSpec spec;
  int rows = 0;
  int cols = 0;
  std::vector<RingElement> entries;  // row-major, entries[r*cols + c]

  bool operator==(const RingMatrix& other) const;
  const RingElement& at(int r, int c) const;
  RingElement& at(int r, int c);
};

RingMatrix mat_zero(const GroupSpec& spec, int rows, int cols);
RingMatrix mat_identity(const GroupSpec& spec, int n);
RingMatrix mat_add(const RingMatrix& a, const RingMatrix& b);
RingMatrix mat_sub(const RingMatrix& a, const RingMatrix& b);
RingMatrix mat_mul(const RingMatrix& a, const RingMatrix& b);
RingMatrix mat_scalar_mul(const Rational& c, const RingMatrix& a);
// Conjugate transpose: (A*)_{ij} = (A_{ji})*.
RingMatrix mat_star(const RingMatrix& a);
bool is_self_adjoint(const RingMatrix& a);

// ---------------------------------------------------------------------------
// Traces.
//
// The canonical trace reads off the identity coefficient on the diagonal.
// The delocalised trace attached to (the conjugacy class of) g sums the
// diagonal coefficients over the whole class of g. For g = e the two agree.
// Both are tracial: trace(AB) = trace(BA).
// ---------------------------------------------------------------------------

struct TraceSpec {
  enum class Kind { Canonical, Delocalised };
  Kind kind = Kind::Canonical;
  GroupElement cls;  // any representative of the class, when Delocalised

  static TraceSpec canonical() { return {Kind::Canonical, {}}; }
  static TraceSpec delocalised(GroupElement g) {
    return {Kind::Delocalised, std::move(g)};
  }
};

Rational trace(const RingElement& a, const TraceSpec& tr);
Rational trace(const RingMatrix& a, const TraceSpec& tr);

// Matrix l1 norm: max over columns of the column sum of entrywise l1 norms,
// and symmetrically over rows; the larger of the two. Submultiplicative,
// invariant under *, and an upper bound for the operator norm of the left
// regular representation.
Rational l1_norm(const RingMatrix& a);

}  // namespace cayley
