#include "cayley/complex.hpp"

#include <stdexcept>
#include <string>

namespace cayley {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

// 1 - g as a ring element.
RingElement one_minus(const GroupSpec& spec, const GroupElement& g) {
  return subtract(ring_one(spec), ring_delta(spec, g));
}

// 1 + g + g^2 + ... + g^{order-1}.
RingElement power_sum(const GroupSpec& spec, const GroupElement& g, int order) {
  RingElement total = ring_zero(spec);
  GroupElement p = identity(spec);
  for (int i = 0; i < order; ++i) {
    total = add(total, ring_delta(spec, p));
    p = multiply(spec, p, g);
  }
  return total;
}

}  // namespace

void validate(const CochainComplex& c) {
  if (c.ranks.empty()) fail("complex needs at least degree 0");
  for (int k : c.ranks)
    if (k < 1) fail("complex ranks must be >= 1");
  if (c.coboundaries.size() + 1 != c.ranks.size())
    fail("complex needs exactly one coboundary per adjacent degree pair");
  for (std::size_t i = 0; i < c.coboundaries.size(); ++i) {
    const RingMatrix& d = c.coboundaries[i];
    if (!(d.spec == c.spec)) fail("coboundary over the wrong group");
    if (d.rows != c.ranks[i + 1] || d.cols != c.ranks[i])
      fail("coboundary " + std::to_string(i) + " has the wrong shape");
  }
  for (std::size_t i = 0; i + 1 < c.coboundaries.size(); ++i) {
    const RingMatrix prod = mat_mul(c.coboundaries[i + 1], c.coboundaries[i]);
    for (const auto& e : prod.entries)
      if (!e.is_zero()) fail("chain law fails at degree " + std::to_string(i));
  }
}

RingMatrix laplacian(const CochainComplex& c, int degree) {
  if (degree < 0 || degree > c.top_degree()) fail("laplacian degree out of range");
  const int k = c.ranks[degree];
  RingMatrix delta = mat_zero(c.spec, k, k);
  if (degree < c.top_degree()) {
    const RingMatrix& d = c.coboundaries[degree];
    delta = mat_add(delta, mat_mul(mat_star(d), d));
  }
  if (degree > 0) {
    const RingMatrix& d = c.coboundaries[degree - 1];
    delta = mat_add(delta, mat_mul(d, mat_star(d)));
  }
  return delta;
}

std::vector<RingMatrix> laplacians(const CochainComplex& c) {
  std::vector<RingMatrix> out;
  out.reserve(c.ranks.size());
  for (int i = 0; i <= c.top_degree(); ++i) out.push_back(laplacian(c, i));
  return out;
}

CochainComplex free_product_complex(int m, int n, int max_degree) {
  if (m < 2 || n < 2) fail("free product complex needs factor orders >= 2");
  if (max_degree < 1) fail("free product complex needs max_degree >= 1");
  const GroupSpec spec = make_free_product({m, n});
  const GroupElement s{std::vector<Syllable>{{0, 1}}};
  const GroupElement t{std::vector<Syllable>{{1, 1}}};

  CochainComplex c;
  c.spec = spec;
  c.ranks.push_back(1);
  for (int i = 1; i <= max_degree; ++i) c.ranks.push_back(2);

  RingMatrix d0 = mat_zero(spec, 2, 1);
  d0.at(0, 0) = one_minus(spec, s);
  d0.at(1, 0) = one_minus(spec, t);
  c.coboundaries.push_back(std::move(d0));

  for (int i = 1; i < max_degree; ++i) {
    RingMatrix d = mat_zero(spec, 2, 2);
    if (i % 2 == 1) {
      d.at(0, 0) = power_sum(spec, s, m);
      d.at(1, 1) = power_sum(spec, t, n);
    } else {
      d.at(0, 0) = one_minus(spec, s);
      d.at(1, 1) = one_minus(spec, t);
    }
    c.coboundaries.push_back(std::move(d));
  }
  validate(c);
  return c;
}

CochainComplex free_group_complex(int rank) {
  if (rank < 1) fail("free group complex needs rank >= 1");
  const GroupSpec spec = make_free_group(rank);
  CochainComplex c;
  c.spec = spec;
  c.ranks = {1, rank};
  RingMatrix d0 = mat_zero(spec, rank, 1);
  for (std::int32_t i = 0; i < rank; ++i)
    d0.at(i, 0) = one_minus(spec, GroupElement{std::vector<std::int32_t>{i + 1}});
  c.coboundaries.push_back(std::move(d0));
  validate(c);
  return c;
}

CochainComplex finite_cyclic_complex(int order, int max_degree) {
  if (order < 2) fail("cyclic complex needs order >= 2");
  if (max_degree < 1) fail("cyclic complex needs max_degree >= 1");
  const GroupSpec spec = make_finite_cyclic(order);
  const GroupElement t{CyclicPow{1}};
  CochainComplex c;
  c.spec = spec;
  c.ranks.assign(max_degree + 1, 1);
  for (int i = 0; i < max_degree; ++i) {
    RingMatrix d = mat_zero(spec, 1, 1);
    d.at(0, 0) = (i % 2 == 0) ? one_minus(spec, t) : power_sum(spec, t, order);
    c.coboundaries.push_back(std::move(d));
  }
  validate(c);
  return c;
}

CochainComplex tensor_complex(const CochainComplex& c1, const CochainComplex& c2,
                              int max_degree) {
  validate(c1);
  validate(c2);
  if (max_degree < 0) fail("tensor complex needs max_degree >= 0");
  const GroupSpec spec = make_direct_product({c1.spec, c2.spec});

  // The product spec is flattened; the first factor of the pair occupies
  // slots [0, split) of the tuple and the second the rest.
  const auto& flat = std::get<DirectProduct>(spec.desc).factors;
  const std::size_t split =
      std::holds_alternative<DirectProduct>(c1.spec.desc)
          ? std::get<DirectProduct>(c1.spec.desc).factors.size()
          : 1;

  auto embed = [&](const RingElement& a, bool first_side) {
    RingElement out = ring_zero(spec);
    for (const auto& [g, coeff] : a.coeffs) {
      GroupElement id = identity(spec);
      auto& parts = std::get<std::vector<GroupElement>>(id.rep);
      if (first_side) {
        if (split == 1) {
          parts[0] = g;
        } else {
          const auto& comps = std::get<std::vector<GroupElement>>(g.rep);
          for (std::size_t i = 0; i < split; ++i) parts[i] = comps[i];
        }
      } else {
        if (flat.size() - split == 1) {
          parts[split] = g;
        } else {
          const auto& comps = std::get<std::vector<GroupElement>>(g.rep);
          for (std::size_t i = 0; i < comps.size(); ++i) parts[split + i] = comps[i];
        }
      }
      out.coeffs.emplace(std::move(id), coeff);
    }
    return out;
  };

  const int d1 = c1.top_degree();
  const int d2 = c2.top_degree();
  const int top = std::min(max_degree, d1 + d2);

  // Degree i basis: for each split i = r + s (r ascending), pairs (a, b)
  // with a < ranks1[r], b < ranks2[s], in row-major order.
  auto blocks = [&](int i) {
    std::vector<std::pair<int, int>> rs;  // (r, s) with both in range
    for (int r = std::max(0, i - d2); r <= std::min(i, d1); ++r) rs.emplace_back(r, i - r);
    return rs;
  };
  auto block_offsets = [&](int i) {
    std::vector<int> offs;
    int acc = 0;
    for (auto [r, s] : blocks(i)) {
      offs.push_back(acc);
      acc += c1.ranks[r] * c2.ranks[s];
    }
    offs.push_back(acc);  // total rank at the end
    return offs;
  };

  CochainComplex c;
  c.spec = spec;
  for (int i = 0; i <= top; ++i) c.ranks.push_back(block_offsets(i).back());

  for (int i = 0; i < top; ++i) {
    const auto src_blocks = blocks(i);
    const auto src_offs = block_offsets(i);
    const auto dst_blocks = blocks(i + 1);
    const auto dst_offs = block_offsets(i + 1);
    auto dst_index = [&](int r, int s, int a, int b) -> int {
      for (std::size_t bi = 0; bi < dst_blocks.size(); ++bi)
        if (dst_blocks[bi].first == r && dst_blocks[bi].second == s)
          return dst_offs[bi] + a * c2.ranks[s] + b;
      return -1;
    };

    RingMatrix d = mat_zero(spec, c.ranks[i + 1], c.ranks[i]);
    for (std::size_t bi = 0; bi < src_blocks.size(); ++bi) {
      const auto [r, s] = src_blocks[bi];
      for (int a = 0; a < c1.ranks[r]; ++a)
        for (int b = 0; b < c2.ranks[s]; ++b) {
          const int col = src_offs[bi] + a * c2.ranks[s] + b;
          // d_r (x) I : (r, s) -> (r+1, s)
          if (r < d1) {
            const RingMatrix& dr = c1.coboundaries[r];
            for (int a2 = 0; a2 < c1.ranks[r + 1]; ++a2) {
              if (dr.at(a2, a).is_zero()) continue;
              const int row = dst_index(r + 1, s, a2, b);
              if (row >= 0)
                d.at(row, col) = add(d.at(row, col), embed(dr.at(a2, a), /*first_side=*/true));
            }
          }
          // (-1)^r I (x) d_s : (r, s) -> (r, s+1)
          if (s < d2) {
            const RingMatrix& ds = c2.coboundaries[s];
            const Rational sign = (r % 2 == 0) ? Rational(1) : Rational(-1);
            for (int b2 = 0; b2 < c2.ranks[s + 1]; ++b2) {
              if (ds.at(b2, b).is_zero()) continue;
              const int row = dst_index(r, s + 1, a, b2);
              if (row >= 0)
                d.at(row, col) = add(d.at(row, col),
                                     scalar_mul(sign, embed(ds.at(b2, b), /*first_side=*/false)));
            }
          }
        }
    }
    c.coboundaries.push_back(std::move(d));
  }
  validate(c);
  return c;
}

}  // namespace cayley
