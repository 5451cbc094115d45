#include "cayley/kclass.hpp"

#include <stdexcept>
#include <string>

#include "cayley/errors.hpp"

namespace cayley {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

KClassExpr zero_expr(const GroupSpec& spec, int degree, std::string note) {
  KClassExpr e;
  e.spec = spec;
  e.degree = degree;
  e.notes.push_back(std::move(note));
  return e;
}

RingMatrix as_1x1(const RingElement& a) {
  RingMatrix m = mat_zero(a.spec, 1, 1);
  m.at(0, 0) = a;
  return m;
}

// All powers of one free-product factor generator, as group elements.
std::vector<GroupElement> factor_subgroup(int factor, int order) {
  std::vector<GroupElement> elems;
  elems.push_back({std::vector<Syllable>{}});
  for (std::int32_t e = 1; e < order; ++e)
    elems.push_back({std::vector<Syllable>{{factor, e}}});
  return elems;
}

struct ProductShape {
  std::vector<GroupSpec> factors;   // flattened view (singleton for non-products)
  std::vector<std::size_t> free_slots;    // positions of rank-2 free factors
  std::vector<std::size_t> finite_slots;  // positions of finite factors
};

// Classifies a spec as a direct product of rank-2 free groups and finite
// groups; throws unsupported_error for any other factor kind.
ProductShape classify_product(const GroupSpec& spec) {
  ProductShape shape;
  if (const auto* dp = std::get_if<DirectProduct>(&spec.desc))
    shape.factors = dp->factors;
  else
    shape.factors = {spec};
  for (std::size_t i = 0; i < shape.factors.size(); ++i) {
    const GroupSpec& f = shape.factors[i];
    if (const auto* fg = std::get_if<FreeGroup>(&f.desc)) {
      if (fg->rank != 2)
        throw unsupported_error(
            "product-type class representatives need rank-2 free factors (got rank " +
            std::to_string(fg->rank) + ")");
      shape.free_slots.push_back(i);
    } else if (is_finite(f)) {
      shape.finite_slots.push_back(i);
    } else {
      throw unsupported_error(
          "product-type class representatives need each factor to be a rank-2 free group "
          "or a finite group");
    }
  }
  return shape;
}

}  // namespace

void validate(const KClassExpr& expr) {
  for (const auto& term : expr.terms) {
    const RingMatrix& p = term.projection;
    if (p.rows != p.cols) fail("class term is not square");
    if (!(p.spec == expr.spec)) fail("class term over the wrong group");
    if (!(mat_mul(p, p) == p)) fail("class term is not idempotent");
    if (!(mat_star(p) == p)) fail("class term is not self-adjoint");
  }
}

KClassExpr kazhdan_class_free_product(int m, int n) {
  if (m < 2 || n < 2) fail("free product class needs factor orders >= 2");
  if (m == 2 && n == 2)
    throw unsupported_error(
        "Z2 * Z2 is amenable; it carries no degree-1 class representative");
  const GroupSpec spec = make_free_product({m, n});
  KClassExpr e;
  e.spec = spec;
  e.degree = 1;
  // [1] - [p] - [q]: identity minus the two factor averaging projections.
  e.terms.push_back({Rational(1), mat_identity(spec, 1)});
  e.terms.push_back({Rational(-1), as_1x1(averaging_projection(spec, factor_subgroup(0, m)))});
  e.terms.push_back({Rational(-1), as_1x1(averaging_projection(spec, factor_subgroup(1, n)))});
  return e;
}

KClassExpr kazhdan_class_free_group(int rank) {
  if (rank < 1) fail("free group class needs rank >= 1");
  const GroupSpec spec = make_free_group(rank);
  if (rank == 1)
    return zero_expr(spec, 1,
                     "rank-1 free group is amenable; degree-1 values vanish identically");
  KClassExpr e;
  e.spec = spec;
  e.degree = 1;
  e.terms.push_back({Rational(rank - 1), mat_identity(spec, 1)});
  return e;
}

KClassExpr kazhdan_class_product(const GroupSpec& spec) {
  const ProductShape shape = classify_product(spec);

  // Enumerate the finite tail {(e, ..., e)} x F as tuples of the product.
  std::uint64_t tail_order = 1;
  for (std::size_t slot : shape.finite_slots) {
    tail_order *= *group_order(shape.factors[slot]);
    if (tail_order > 100000) fail("finite tail too large to enumerate");
  }
  std::vector<GroupElement> tail{identity(spec)};
  const bool is_product = std::holds_alternative<DirectProduct>(spec.desc);
  for (std::size_t slot : shape.finite_slots) {
    const GroupSpec& fspec = shape.factors[slot];
    const auto elems = ball(fspec, 1);  // the whole finite group
    std::vector<GroupElement> extended;
    extended.reserve(tail.size() * elems.size());
    for (const auto& base : tail)
      for (const auto& fe : elems) {
        if (is_product) {
          GroupElement tuple = base;
          std::get<std::vector<GroupElement>>(tuple.rep)[slot] = fe;
          extended.push_back(std::move(tuple));
        } else {
          extended.push_back(fe);  // bare finite group: the element itself
        }
      }
    tail = std::move(extended);
  }

  KClassExpr e;
  e.spec = spec;
  e.degree = static_cast<int>(shape.free_slots.size());
  e.terms.push_back({Rational(1), as_1x1(averaging_projection(spec, tail))});
  e.notes.push_back("averaging projection over a finite tail of order " +
                    std::to_string(tail.size()));
  return e;
}

KClassExpr kazhdan_class(const GroupSpec& spec, int degree) {
  if (degree < 0) fail("degree must be >= 0");

  if (const auto* fp = std::get_if<FreeProduct>(&spec.desc)) {
    if (degree == 0)
      return zero_expr(spec, 0, "degree-0 values vanish for infinite groups");
    if (fp->orders.size() != 2)
      throw unsupported_error(
          "class representatives are implemented for two-factor free products only");
    if (degree == 1) return kazhdan_class_free_product(fp->orders[0], fp->orders[1]);
    return zero_expr(spec, degree,
                     "the resolution of a two-factor free product has no cohomology above "
                     "degree 1; values vanish identically");
  }

  if (std::get_if<FreeGroup>(&spec.desc)) {
    if (degree == 0)
      return zero_expr(spec, 0, "degree-0 values vanish for infinite groups");
    if (degree == 1) return kazhdan_class_free_group(std::get<FreeGroup>(spec.desc).rank);
    return zero_expr(spec, degree,
                     "free groups have cohomological dimension 1; values vanish identically");
  }

  if (std::get_if<FiniteCyclic>(&spec.desc) || std::get_if<FiniteTable>(&spec.desc)) {
    if (degree == 0) return kazhdan_class_product(spec);
    return zero_expr(spec, degree,
                     "finite groups have no cohomology above degree 0; values vanish "
                     "identically");
  }

  // Direct products of rank-2 free factors and finite factors: the class
  // representative sits in degree n = number of free factors, everything
  // else vanishes by the product formula for the values.
  const ProductShape shape = classify_product(spec);  // throws if unsupported
  const int n = static_cast<int>(shape.free_slots.size());
  if (degree == n) return kazhdan_class_product(spec);
  return zero_expr(spec, degree,
                   "product values concentrate in degree " + std::to_string(n) +
                       "; all other degrees vanish identically");
}

Rational betti(const KClassExpr& expr, const GroupElement& g) {
  // Validates g against the spec via the trace's conjugacy machinery.
  const TraceSpec tr = TraceSpec::delocalised(multiply(expr.spec, g, identity(expr.spec)));
  Rational total = 0;
  for (const auto& term : expr.terms) total += term.coeff * trace(term.projection, tr);
  return total;
}

}  // namespace cayley
