#pragma once

#include <string>
#include <vector>

#include "cayley/ring.hpp"

namespace cayley {

// ---------------------------------------------------------------------------
// K-theory class representatives and delocalised Betti numbers.
//
// A KClassExpr is a formal rational combination of matrix projections over
// the group ring, tagged with the degree it represents. Pairing it with the
// delocalised trace at a conjugacy class gives the delocalised Betti number
//   betti(expr, g) = sum_i coeff_i * trace_g(P_i),
// an exact rational.
//
// An expression may be empty with explanatory notes: that encodes a degree
// whose Betti numbers vanish identically for structural reasons (the value
// is exactly 0, and the notes say why).
// ---------------------------------------------------------------------------

struct KClassTerm {
  Rational coeff;
  RingMatrix projection;  // square; idempotent and self-adjoint
};

struct KClassExpr {
  GroupSpec spec;
  int degree = 0;
  std::vector<KClassTerm> terms;
  std::vector<std::string> notes;
};

// Checks that every term's matrix is square, idempotent (P^2 = P) and
// self-adjoint (P* = P), exactly. Throws std::invalid_argument.
void validate(const KClassExpr& expr);

// Degree-1 class for Z_m * Z_n: [1] - [p] - [q], where p and q are the
// averaging projections of the two finite factors. Requires m, n >= 2 and
// (m, n) != (2, 2) (that product is amenable and carries no such class).
KClassExpr kazhdan_class_free_product(int m, int n);

// Degree-1 class for F_k: (k - 1) [1]. For k = 1 the expression is empty
// (rank-one free group is amenable; the value is 0) with a note.
KClassExpr kazhdan_class_free_group(int rank);

// Class for direct products of copies of F_2 with finite groups:
//   G = F_2 x ... x F_2 x F_1' x ... (n free-rank-2 factors, any number of
//   finite factors). The class is the averaging projection of the finite
//   tail {(e, ..., e)} x F, placed in degree n, with canonical trace 1/|F|.
// A group with no finite factor uses F = {e} (trace 1). Factors that are
// neither F_2 nor finite raise unsupported_error.
KClassExpr kazhdan_class_product(const GroupSpec& spec);

// Dispatch by (spec, degree). Returns a possibly-empty expression; empty
// expressions carry notes explaining the structural zero (degree 0 of an
// infinite group, degrees above the product dimension, degrees >= 2 of a
// free product, ...). Throws unsupported_error when the family/degree
// combination is outside the implemented range.
KClassExpr kazhdan_class(const GroupSpec& spec, int degree);

// The delocalised Betti number: exact trace pairing against the class of g.
Rational betti(const KClassExpr& expr, const GroupElement& g);

}  // namespace cayley
