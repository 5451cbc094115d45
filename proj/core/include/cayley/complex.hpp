#pragma once

#include <vector>

#include "cayley/ring.hpp"

namespace cayley {

// ---------------------------------------------------------------------------
// Finite-rank cochain complexes of free modules over the group ring.
//
// ranks[i] is the rank k_i in degree i (0 <= i <= D). The coboundary d_i
// maps degree i to degree i+1 and is stored as a k_{i+1} x k_i matrix acting
// on column vectors; coboundaries[i] = d_i for 0 <= i < D. The chain law
// d_{i+1} d_i = 0 holds exactly and is validated on construction.
//
// The degree-i Laplacian is Delta_i = d_i* d_i + d_{i-1} d_{i-1}* (terms
// outside the degree range are omitted). It is self-adjoint with
// non-negative spectrum.
// ---------------------------------------------------------------------------

struct CochainComplex {
  GroupSpec spec;
  std::vector<int> ranks;
  std::vector<RingMatrix> coboundaries;

  int top_degree() const { return static_cast<int>(ranks.size()) - 1; }
};

// Shape checks plus the exact chain law; throws std::invalid_argument.
void validate(const CochainComplex& c);

RingMatrix laplacian(const CochainComplex& c, int degree);
std::vector<RingMatrix> laplacians(const CochainComplex& c);

// The standard resolution-derived complex for Z_m * Z_n (m >= 2, n >= 2):
// ranks (1, 2, 2, 2, ...) up to max_degree, with
//   d_0 = [1 - s; 1 - t]
//   d_1 = diag(N_s, N_t)          N_s = 1 + s + ... + s^{m-1}
//   d_2 = diag(1 - s, 1 - t)
// and periodic continuation alternating the last two.
CochainComplex free_product_complex(int m, int n, int max_degree);

// For F_k: ranks (1, k), d_0 the column (1 - a_1, ..., 1 - a_k).
CochainComplex free_group_complex(int rank);

// For Z_m: ranks all 1 up to max_degree, alternating d = (1 - t) and
// d = N_t = 1 + t + ... + t^{m-1}.
CochainComplex finite_cyclic_complex(int order, int max_degree);

// Tensor product over the direct product group, truncated at max_degree.
// Degree i has one block per split i = r + s, ordered by r ascending, with
// basis (a, b) in row-major order; the coboundary is
//   d(x (x) y) = d_r x (x) y + (-1)^r x (x) d_s y
// (Koszul sign on the first-factor degree, which is what makes the
// cross terms cancel in d d = 0 — checked exactly by validate()).
// The Laplacian then splits blockwise as Delta_r (x) I + I (x) Delta_s.
CochainComplex tensor_complex(const CochainComplex& c1, const CochainComplex& c2,
                              int max_degree);

}  // namespace cayley
