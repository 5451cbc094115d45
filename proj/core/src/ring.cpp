#include "cayley/ring.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cayley {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void require_same_spec(const GroupSpec& a, const GroupSpec& b) {
  if (!(a == b)) fail("group-ring operands belong to different groups");
}

void require_same_shape(const RingMatrix& a, const RingMatrix& b) {
  require_same_spec(a.spec, b.spec);
  if (a.rows != b.rows || a.cols != b.cols) fail("matrix shapes do not match");
}

void insert_term(std::map<GroupElement, Rational>& coeffs, const GroupElement& g,
                 const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs.emplace(g, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs.erase(it);
  }
}

}  // namespace

// ---- elements -------------------------------------------------------------

bool RingElement::operator==(const RingElement& other) const {
  return spec == other.spec && coeffs == other.coeffs;
}

RingElement ring_zero(const GroupSpec& spec) { return {spec, {}}; }

RingElement ring_one(const GroupSpec& spec) { return ring_delta(spec, identity(spec)); }

RingElement ring_delta(const GroupSpec& spec, const GroupElement& g, const Rational& coeff) {
  RingElement a{spec, {}};
  // Route through multiply-by-identity to validate the element's shape.
  const GroupElement gg = multiply(spec, g, identity(spec));
  if (coeff != 0) a.coeffs.emplace(gg, coeff);
  return a;
}

Rational coefficient(const RingElement& a, const GroupElement& g) {
  auto it = a.coeffs.find(g);
  return it == a.coeffs.end() ? Rational(0) : it->second;
}

RingElement add(const RingElement& a, const RingElement& b) {
  require_same_spec(a.spec, b.spec);
  RingElement r = a;
  for (const auto& [g, c] : b.coeffs) insert_term(r.coeffs, g, c);
  return r;
}

RingElement subtract(const RingElement& a, const RingElement& b) {
  require_same_spec(a.spec, b.spec);
  RingElement r = a;
  for (const auto& [g, c] : b.coeffs) insert_term(r.coeffs, g, -c);
  return r;
}

RingElement negate(const RingElement& a) {
  RingElement r = a;
  for (auto& [g, c] : r.coeffs) c = -c;
  return r;
}

RingElement scalar_mul(const Rational& c, const RingElement& a) {
  if (c == 0) return ring_zero(a.spec);
  RingElement r = a;
  for (auto& [g, v] : r.coeffs) v *= c;
  return r;
}

RingElement convolve(const RingElement& a, const RingElement& b) {
  require_same_spec(a.spec, b.spec);
  RingElement r{a.spec, {}};
  for (const auto& [u, cu] : a.coeffs)
    for (const auto& [v, cv] : b.coeffs)
      insert_term(r.coeffs, multiply(a.spec, u, v), cu * cv);
  return r;
}

RingElement star(const RingElement& a) {
  RingElement r{a.spec, {}};
  for (const auto& [g, c] : a.coeffs) r.coeffs.emplace(inverse(a.spec, g), c);
  return r;
}

Rational l1_norm(const RingElement& a) {
  Rational total = 0;
  for (const auto& [g, c] : a.coeffs) total += abs(c);
  return total;
}

RingElement averaging_projection(const GroupSpec& spec,
                                 const std::vector<GroupElement>& subgroup) {
  if (subgroup.empty()) fail("averaging projection needs a nonempty subgroup");
  std::set<GroupElement> members;
  for (const auto& h : subgroup) {
    const GroupElement hh = multiply(spec, h, identity(spec));  // validates shape
    if (!members.insert(hh).second) fail("averaging projection: repeated subgroup element");
  }
  if (!members.count(identity(spec))) fail("averaging projection: identity missing");
  for (const auto& x : members) {
    if (!members.count(inverse(spec, x)))
      fail("averaging projection: set not closed under inverses");
    for (const auto& y : members)
      if (!members.count(multiply(spec, x, y)))
        fail("averaging projection: set not closed under multiplication");
  }
  RingElement p{spec, {}};
  const Rational w(1, static_cast<long>(members.size()));
  for (const auto& h : members) p.coeffs.emplace(h, w);
  return p;
}

// ---- matrices -------------------------------------------------------------

bool RingMatrix::operator==(const RingMatrix& other) const {
  return spec == other.spec && rows == other.rows && cols == other.cols &&
         entries == other.entries;
}

const RingElement& RingMatrix::at(int r, int c) const {
  if (r < 0 || r >= rows || c < 0 || c >= cols) fail("matrix index out of range");
  return entries[static_cast<std::size_t>(r) * cols + c];
}

RingElement& RingMatrix::at(int r, int c) {
  if (r < 0 || r >= rows || c < 0 || c >= cols) fail("matrix index out of range");
  return entries[static_cast<std::size_t>(r) * cols + c];
}

RingMatrix mat_zero(const GroupSpec& spec, int rows, int cols) {
  if (rows < 0 || cols < 0) fail("matrix shape must be non-negative");
  RingMatrix m{spec, rows, cols, {}};
  m.entries.assign(static_cast<std::size_t>(rows) * cols, ring_zero(spec));
  return m;
}

RingMatrix mat_identity(const GroupSpec& spec, int n) {
  RingMatrix m = mat_zero(spec, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = ring_one(spec);
  return m;
}

RingMatrix mat_add(const RingMatrix& a, const RingMatrix& b) {
  require_same_shape(a, b);
  RingMatrix r = a;
  for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] = add(r.entries[i], b.entries[i]);
  return r;
}

RingMatrix mat_sub(const RingMatrix& a, const RingMatrix& b) {
  require_same_shape(a, b);
  RingMatrix r = a;
  for (std::size_t i = 0; i < r.entries.size(); ++i)
    r.entries[i] = subtract(r.entries[i], b.entries[i]);
  return r;
}

RingMatrix mat_mul(const RingMatrix& a, const RingMatrix& b) {
  require_same_spec(a.spec, b.spec);
  if (a.cols != b.rows) fail("matrix shapes do not compose");
  RingMatrix r = mat_zero(a.spec, a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const RingElement& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols; ++j) {
        if (b.at(k, j).is_zero()) continue;
        r.at(i, j) = add(r.at(i, j), convolve(aik, b.at(k, j)));
      }
    }
  return r;
}

RingMatrix mat_scalar_mul(const Rational& c, const RingMatrix& a) {
  RingMatrix r = a;
  for (auto& e : r.entries) e = scalar_mul(c, e);
  return r;
}

RingMatrix mat_star(const RingMatrix& a) {
  RingMatrix r = mat_zero(a.spec, a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) r.at(j, i) = star(a.at(i, j));
  return r;
}

bool is_self_adjoint(const RingMatrix& a) { return a.rows == a.cols && mat_star(a) == a; }

// ---- traces and norms -----------------------------------------------------

Rational trace(const RingElement& a, const TraceSpec& tr) {
  if (tr.kind == TraceSpec::Kind::Canonical) return coefficient(a, identity(a.spec));
  const GroupElement key = conjugacy_key(a.spec, tr.cls);
  Rational total = 0;
  for (const auto& [g, c] : a.coeffs)
    if (conjugacy_key(a.spec, g) == key) total += c;
  return total;
}

Rational trace(const RingMatrix& a, const TraceSpec& tr) {
  if (a.rows != a.cols) fail("trace needs a square matrix");
  Rational total = 0;
  for (int i = 0; i < a.rows; ++i) total += trace(a.at(i, i), tr);
  return total;
}

Rational l1_norm(const RingMatrix& a) {
  Rational best = 0;
  for (int j = 0; j < a.cols; ++j) {
    Rational col = 0;
    for (int i = 0; i < a.rows; ++i) col += l1_norm(a.at(i, j));
    best = std::max(best, col);
  }
  for (int i = 0; i < a.rows; ++i) {
    Rational row = 0;
    for (int j = 0; j < a.cols; ++j) row += l1_norm(a.at(i, j));
    best = std::max(best, row);
  }
  return best;
}

}  // namespace cayley
