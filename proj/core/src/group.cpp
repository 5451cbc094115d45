#include "cayley/group.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace cayley {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

// ---- spec validation ------------------------------------------------------

void validate_table(const FiniteTable& t) {
  const int n = static_cast<int>(t.labels.size());
  if (n < 1 || n > 24) fail("finite table: order must be between 1 and 24");
  if (static_cast<int>(t.table.size()) != n) fail("finite table: table must be square");
  std::set<std::string> seen_labels(t.labels.begin(), t.labels.end());
  if (static_cast<int>(seen_labels.size()) != n) fail("finite table: labels must be distinct");
  for (const auto& row : t.table) {
    if (static_cast<int>(row.size()) != n) fail("finite table: table must be square");
    for (int v : row)
      if (v < 0 || v >= n) fail("finite table: entry out of range");
  }
  if (t.identity < 0 || t.identity >= n) fail("finite table: identity index out of range");
  for (int i = 0; i < n; ++i) {
    if (t.table[t.identity][i] != i || t.table[i][t.identity] != i)
      fail("finite table: identity row/column mismatch");
  }
  // Rows and columns must be permutations (cancellation).
  for (int i = 0; i < n; ++i) {
    std::vector<char> row_seen(n, 0), col_seen(n, 0);
    for (int j = 0; j < n; ++j) {
      if (row_seen[t.table[i][j]]++) fail("finite table: row is not a permutation");
      if (col_seen[t.table[j][i]]++) fail("finite table: column is not a permutation");
    }
  }
  // Every element needs an inverse.
  for (int i = 0; i < n; ++i) {
    bool has_inverse = false;
    for (int j = 0; j < n; ++j)
      if (t.table[i][j] == t.identity && t.table[j][i] == t.identity) has_inverse = true;
    if (!has_inverse) fail("finite table: element without inverse");
  }
  // Full associativity check; n <= 24 keeps this at <= 24^3 lookups.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (t.table[t.table[a][b]][c] != t.table[a][t.table[b][c]])
          fail("finite table: multiplication is not associative");
}

// ---- element shape checks -------------------------------------------------

void check_element(const GroupSpec& spec, const GroupElement& g);

struct CheckVisitor {
  const GroupSpec& spec;

  void operator()(const FiniteCyclic& s) const {
    const auto* p = std::get_if<CyclicPow>(&g->rep);
    if (!p) fail("element does not belong to a finite cyclic group");
    if (p->exp < 0 || p->exp >= s.order) fail("cyclic exponent out of range");
  }
  void operator()(const FreeProduct& s) const {
    const auto* w = std::get_if<std::vector<Syllable>>(&g->rep);
    if (!w) fail("element does not belong to a free product");
    const int k = static_cast<int>(s.orders.size());
    for (std::size_t i = 0; i < w->size(); ++i) {
      const Syllable& syl = (*w)[i];
      if (syl.factor < 0 || syl.factor >= k) fail("syllable factor out of range");
      if (syl.exp < 1 || syl.exp >= s.orders[syl.factor]) fail("syllable exponent out of range");
      if (i > 0 && (*w)[i - 1].factor == syl.factor)
        fail("syllable word is not alternating");
    }
  }
  void operator()(const FreeGroup& s) const {
    const auto* w = std::get_if<std::vector<std::int32_t>>(&g->rep);
    if (!w) fail("element does not belong to a free group");
    for (std::size_t i = 0; i < w->size(); ++i) {
      const std::int32_t x = (*w)[i];
      if (x == 0 || x > s.rank || x < -s.rank) fail("free-group letter out of range");
      if (i > 0 && (*w)[i - 1] == -x) fail("free-group word is not reduced");
    }
  }
  void operator()(const FiniteTable& s) const {
    const auto* p = std::get_if<TableIndex>(&g->rep);
    if (!p) fail("element does not belong to a table group");
    if (p->index < 0 || p->index >= static_cast<int>(s.labels.size()))
      fail("table element index out of range");
  }
  void operator()(const DirectProduct& s) const {
    const auto* t = std::get_if<std::vector<GroupElement>>(&g->rep);
    if (!t) fail("element does not belong to a direct product");
    if (t->size() != s.factors.size()) fail("tuple arity does not match the product");
    for (std::size_t i = 0; i < t->size(); ++i) check_element(s.factors[i], (*t)[i]);
  }

  const GroupElement* g;
};

void check_element(const GroupSpec& spec, const GroupElement& g) {
  CheckVisitor v{spec, &g};
  std::visit(v, spec.desc);
}

// ---- unchecked core operations (shapes assumed valid) ---------------------

GroupElement identity_impl(const GroupSpec& spec) {
  return std::visit(
      [&](const auto& s) -> GroupElement {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FiniteCyclic>) return {CyclicPow{0}};
        if constexpr (std::is_same_v<T, FreeProduct>) return {std::vector<Syllable>{}};
        if constexpr (std::is_same_v<T, FreeGroup>) return {std::vector<std::int32_t>{}};
        if constexpr (std::is_same_v<T, FiniteTable>)
          return {TableIndex{static_cast<std::int32_t>(s.identity)}};
        if constexpr (std::is_same_v<T, DirectProduct>) {
          std::vector<GroupElement> parts;
          parts.reserve(s.factors.size());
          for (const auto& f : s.factors) parts.push_back(identity_impl(f));
          return {std::move(parts)};
        }
      },
      spec.desc);
}

GroupElement multiply_impl(const GroupSpec& spec, const GroupElement& a, const GroupElement& b);

// Appends one syllable to an alternating word, merging at the seam.
void push_syllable(const FreeProduct& s, std::vector<Syllable>& w, Syllable syl) {
  if (!w.empty() && w.back().factor == syl.factor) {
    const std::int32_t ord = s.orders[syl.factor];
    const std::int32_t e = (w.back().exp + syl.exp) % ord;
    if (e == 0)
      w.pop_back();
    else
      w.back().exp = e;
  } else {
    w.push_back(syl);
  }
}

void push_letter(std::vector<std::int32_t>& w, std::int32_t x) {
  if (!w.empty() && w.back() == -x)
    w.pop_back();
  else
    w.push_back(x);
}

GroupElement multiply_impl(const GroupSpec& spec, const GroupElement& a, const GroupElement& b) {
  return std::visit(
      [&](const auto& s) -> GroupElement {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FiniteCyclic>) {
          return {CyclicPow{static_cast<std::int32_t>(
              (std::get<CyclicPow>(a.rep).exp + std::get<CyclicPow>(b.rep).exp) % s.order)}};
        }
        if constexpr (std::is_same_v<T, FreeProduct>) {
          std::vector<Syllable> w = std::get<std::vector<Syllable>>(a.rep);
          for (const Syllable& syl : std::get<std::vector<Syllable>>(b.rep))
            push_syllable(s, w, syl);
          return {std::move(w)};
        }
        if constexpr (std::is_same_v<T, FreeGroup>) {
          std::vector<std::int32_t> w = std::get<std::vector<std::int32_t>>(a.rep);
          for (std::int32_t x : std::get<std::vector<std::int32_t>>(b.rep)) push_letter(w, x);
          return {std::move(w)};
        }
        if constexpr (std::is_same_v<T, FiniteTable>) {
          return {TableIndex{static_cast<std::int32_t>(
              s.table[std::get<TableIndex>(a.rep).index][std::get<TableIndex>(b.rep).index])}};
        }
        if constexpr (std::is_same_v<T, DirectProduct>) {
          const auto& ta = std::get<std::vector<GroupElement>>(a.rep);
          const auto& tb = std::get<std::vector<GroupElement>>(b.rep);
          std::vector<GroupElement> parts;
          parts.reserve(ta.size());
          for (std::size_t i = 0; i < ta.size(); ++i)
            parts.push_back(multiply_impl(s.factors[i], ta[i], tb[i]));
          return {std::move(parts)};
        }
      },
      spec.desc);
}

GroupElement inverse_impl(const GroupSpec& spec, const GroupElement& g) {
  return std::visit(
      [&](const auto& s) -> GroupElement {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FiniteCyclic>) {
          const std::int32_t e = std::get<CyclicPow>(g.rep).exp;
          return {CyclicPow{e == 0 ? 0 : s.order - e}};
        }
        if constexpr (std::is_same_v<T, FreeProduct>) {
          const auto& w = std::get<std::vector<Syllable>>(g.rep);
          std::vector<Syllable> r;
          r.reserve(w.size());
          for (auto it = w.rbegin(); it != w.rend(); ++it)
            r.push_back({it->factor, s.orders[it->factor] - it->exp});
          return {std::move(r)};
        }
        if constexpr (std::is_same_v<T, FreeGroup>) {
          const auto& w = std::get<std::vector<std::int32_t>>(g.rep);
          std::vector<std::int32_t> r;
          r.reserve(w.size());
          for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(-*it);
          return {std::move(r)};
        }
        if constexpr (std::is_same_v<T, FiniteTable>) {
          const int i = std::get<TableIndex>(g.rep).index;
          const int n = static_cast<int>(s.labels.size());
          for (int j = 0; j < n; ++j)
            if (s.table[i][j] == s.identity) return {TableIndex{static_cast<std::int32_t>(j)}};
          fail("finite table: element without inverse");  // unreachable after validation
        }
        if constexpr (std::is_same_v<T, DirectProduct>) {
          const auto& t = std::get<std::vector<GroupElement>>(g.rep);
          std::vector<GroupElement> parts;
          parts.reserve(t.size());
          for (std::size_t i = 0; i < t.size(); ++i)
            parts.push_back(inverse_impl(s.factors[i], t[i]));
          return {std::move(parts)};
        }
      },
      spec.desc);
}

// Deterministic order on letters of a free group: a < a^-1 < b < b^-1 < ...
std::int64_t letter_rank(std::int32_t x) {
  return 2 * static_cast<std::int64_t>(x > 0 ? x : -x) + (x < 0 ? 1 : 0);
}

}  // namespace

// ---- spec construction ----------------------------------------------------

bool GroupSpec::operator==(const GroupSpec& other) const {
  if (desc.index() != other.desc.index()) return false;
  return std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        const auto& b = std::get<T>(other.desc);
        if constexpr (std::is_same_v<T, FiniteCyclic>) return a.order == b.order;
        if constexpr (std::is_same_v<T, FreeProduct>) return a.orders == b.orders;
        if constexpr (std::is_same_v<T, FreeGroup>) return a.rank == b.rank;
        if constexpr (std::is_same_v<T, FiniteTable>)
          return a.labels == b.labels && a.table == b.table && a.identity == b.identity;
        if constexpr (std::is_same_v<T, DirectProduct>) {
          if (a.factors.size() != b.factors.size()) return false;
          for (std::size_t i = 0; i < a.factors.size(); ++i)
            if (!(a.factors[i] == b.factors[i])) return false;
          return true;
        }
      },
      desc);
}

GroupSpec make_finite_cyclic(int order) {
  if (order < 2) fail("finite cyclic group needs order >= 2");
  return {FiniteCyclic{order}};
}

GroupSpec make_free_product(std::vector<int> orders) {
  if (orders.size() < 2) fail("free product needs at least two factors");
  for (int m : orders)
    if (m < 2) fail("free-product factor orders must be >= 2");
  return {FreeProduct{std::move(orders)}};
}

GroupSpec make_free_group(int rank) {
  if (rank < 1) fail("free group needs rank >= 1");
  return {FreeGroup{rank}};
}

GroupSpec make_finite_table(std::vector<std::string> labels, std::vector<std::vector<int>> table,
                            int identity) {
  FiniteTable t{std::move(labels), std::move(table), identity};
  validate_table(t);
  return {std::move(t)};
}

GroupSpec make_direct_product(std::vector<GroupSpec> factors) {
  if (factors.size() < 2) fail("direct product needs at least two factors");
  // Flatten nested products so that structurally equal groups get equal specs.
  std::vector<GroupSpec> flat;
  for (auto& f : factors) {
    if (auto* dp = std::get_if<DirectProduct>(&f.desc)) {
      for (auto& inner : dp->factors) flat.push_back(std::move(inner));
    } else {
      flat.push_back(std::move(f));
    }
  }
  return {DirectProduct{std::move(flat)}};
}

bool is_finite(const GroupSpec& spec) { return group_order(spec).has_value(); }

std::optional<std::uint64_t> group_order(const GroupSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::optional<std::uint64_t> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FiniteCyclic>)
          return static_cast<std::uint64_t>(s.order);
        if constexpr (std::is_same_v<T, FreeProduct>) return std::nullopt;
        if constexpr (std::is_same_v<T, FreeGroup>) return std::nullopt;
        if constexpr (std::is_same_v<T, FiniteTable>)
          return static_cast<std::uint64_t>(s.labels.size());
        if constexpr (std::is_same_v<T, DirectProduct>) {
          std::uint64_t total = 1;
          for (const auto& f : s.factors) {
            auto sub = group_order(f);
            if (!sub) return std::nullopt;
            total *= *sub;  // factor orders <= 24, factor count small
          }
          return total;
        }
      },
      spec.desc);
}

// ---- element order --------------------------------------------------------

bool GroupElement::operator==(const GroupElement& other) const { return rep == other.rep; }

bool GroupElement::operator<(const GroupElement& other) const {
  if (rep.index() != other.rep.index()) return rep.index() < other.rep.index();
  return std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        const auto& b = std::get<T>(other.rep);
        if constexpr (std::is_same_v<T, CyclicPow>) return a.exp < b.exp;
        if constexpr (std::is_same_v<T, std::vector<Syllable>>) {
          if (a.size() != b.size()) return a.size() < b.size();
          return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
        }
        if constexpr (std::is_same_v<T, std::vector<std::int32_t>>) {
          if (a.size() != b.size()) return a.size() < b.size();
          return std::lexicographical_compare(
              a.begin(), a.end(), b.begin(), b.end(),
              [](std::int32_t x, std::int32_t y) { return letter_rank(x) < letter_rank(y); });
        }
        if constexpr (std::is_same_v<T, TableIndex>) return a.index < b.index;
        if constexpr (std::is_same_v<T, std::vector<GroupElement>>) {
          if (a.size() != b.size()) return a.size() < b.size();
          for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] < b[i]) return true;
            if (b[i] < a[i]) return false;
          }
          return false;
        }
      },
      rep);
}

// ---- public operations ----------------------------------------------------

GroupElement identity(const GroupSpec& spec) { return identity_impl(spec); }

bool is_identity(const GroupSpec& spec, const GroupElement& g) {
  check_element(spec, g);
  return g == identity_impl(spec);
}

GroupElement multiply(const GroupSpec& spec, const GroupElement& a, const GroupElement& b) {
  check_element(spec, a);
  check_element(spec, b);
  return multiply_impl(spec, a, b);
}

GroupElement inverse(const GroupSpec& spec, const GroupElement& g) {
  check_element(spec, g);
  return inverse_impl(spec, g);
}

std::vector<GroupElement> word_generators(const GroupSpec& spec) {
  return std::visit(
      [&](const auto& s) -> std::vector<GroupElement> {
        using T = std::decay_t<decltype(s)>;
        std::vector<GroupElement> gens;
        if constexpr (std::is_same_v<T, FiniteCyclic>) {
          for (std::int32_t e = 1; e < s.order; ++e) gens.push_back({CyclicPow{e}});
        } else if constexpr (std::is_same_v<T, FreeProduct>) {
          for (std::int32_t f = 0; f < static_cast<std::int32_t>(s.orders.size()); ++f)
            for (std::int32_t e = 1; e < s.orders[f]; ++e)
              gens.push_back({std::vector<Syllable>{{f, e}}});
        } else if constexpr (std::is_same_v<T, FreeGroup>) {
          for (std::int32_t i = 1; i <= s.rank; ++i) {
            gens.push_back({std::vector<std::int32_t>{i}});
            gens.push_back({std::vector<std::int32_t>{-i}});
          }
        } else if constexpr (std::is_same_v<T, FiniteTable>) {
          for (std::int32_t i = 0; i < static_cast<std::int32_t>(s.labels.size()); ++i)
            if (i != s.identity) gens.push_back({TableIndex{i}});
        } else if constexpr (std::is_same_v<T, DirectProduct>) {
          const GroupSpec self{s};
          const GroupElement id = identity_impl(self);
          const auto& id_parts = std::get<std::vector<GroupElement>>(id.rep);
          for (std::size_t i = 0; i < s.factors.size(); ++i) {
            for (auto& fg : word_generators(s.factors[i])) {
              std::vector<GroupElement> parts = id_parts;
              parts[i] = std::move(fg);
              gens.push_back({std::move(parts)});
            }
          }
        }
        return gens;
      },
      spec.desc);
}

std::vector<GroupElement> ball(const GroupSpec& spec, int radius) {
  if (radius < 0) fail("ball radius must be >= 0");
  const std::vector<GroupElement> gens = word_generators(spec);
  std::vector<GroupElement> result{identity_impl(spec)};
  std::set<GroupElement> seen(result.begin(), result.end());
  std::vector<GroupElement> frontier = result;
  for (int layer = 1; layer <= radius; ++layer) {
    std::set<GroupElement> next;
    for (const auto& u : frontier)
      for (const auto& g : gens) {
        GroupElement v = multiply_impl(spec, u, g);
        if (!seen.count(v)) next.insert(std::move(v));
      }
    if (next.empty()) break;
    frontier.assign(next.begin(), next.end());  // sorted: set iterates in element order
    for (const auto& v : frontier) seen.insert(v);
    result.insert(result.end(), frontier.begin(), frontier.end());
  }
  return result;
}

GroupElement cyclic_reduce(const GroupSpec& spec, const GroupElement& g) {
  check_element(spec, g);
  return std::visit(
      [&](const auto& s) -> GroupElement {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FreeProduct>) {
          std::vector<Syllable> w = std::get<std::vector<Syllable>>(g.rep);
          while (w.size() >= 2 && w.front().factor == w.back().factor) {
            const std::int32_t f = w.front().factor;
            const std::int32_t ord = s.orders[f];
            const std::int32_t e = (w.front().exp + w.back().exp) % ord;
            w.pop_back();
            w.erase(w.begin());
            if (e != 0) w.insert(w.begin(), Syllable{f, e});
          }
          return {std::move(w)};
        } else if constexpr (std::is_same_v<T, FreeGroup>) {
          std::vector<std::int32_t> w = std::get<std::vector<std::int32_t>>(g.rep);
          while (w.size() >= 2 && w.front() == -w.back()) {
            w.pop_back();
            w.erase(w.begin());
          }
          return {std::move(w)};
        } else if constexpr (std::is_same_v<T, DirectProduct>) {
          const auto& t = std::get<std::vector<GroupElement>>(g.rep);
          std::vector<GroupElement> parts;
          parts.reserve(t.size());
          for (std::size_t i = 0; i < t.size(); ++i)
            parts.push_back(cyclic_reduce(s.factors[i], t[i]));
          return {std::move(parts)};
        } else {
          return g;  // abelian / table groups: nothing to reduce
        }
      },
      spec.desc);
}

GroupElement conjugacy_key(const GroupSpec& spec, const GroupElement& g) {
  const GroupElement reduced = cyclic_reduce(spec, g);
  return std::visit(
      [&](const auto& s) -> GroupElement {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FreeProduct>) {
          const auto& w = std::get<std::vector<Syllable>>(reduced.rep);
          if (w.size() <= 1) return reduced;
          // All syllable rotations of a cyclically reduced word are valid
          // alternating words; the class is exactly the rotation orbit.
          std::vector<Syllable> best = w;
          std::vector<Syllable> rot = w;
          for (std::size_t i = 1; i < w.size(); ++i) {
            std::rotate(rot.begin(), rot.begin() + 1, rot.end());
            if (std::lexicographical_compare(rot.begin(), rot.end(), best.begin(), best.end()))
              best = rot;
          }
          return {std::move(best)};
        } else if constexpr (std::is_same_v<T, FreeGroup>) {
          const auto& w = std::get<std::vector<std::int32_t>>(reduced.rep);
          if (w.size() <= 1) return reduced;
          std::vector<std::int32_t> best = w;
          std::vector<std::int32_t> rot = w;
          auto less = [](const std::vector<std::int32_t>& x, const std::vector<std::int32_t>& y) {
            return std::lexicographical_compare(
                x.begin(), x.end(), y.begin(), y.end(),
                [](std::int32_t a, std::int32_t b) { return letter_rank(a) < letter_rank(b); });
          };
          for (std::size_t i = 1; i < w.size(); ++i) {
            std::rotate(rot.begin(), rot.begin() + 1, rot.end());
            if (less(rot, best)) best = rot;
          }
          return {std::move(best)};
        } else if constexpr (std::is_same_v<T, FiniteTable>) {
          // Small group: take the minimal element of the orbit directly.
          const GroupSpec self{s};
          const int n = static_cast<int>(s.labels.size());
          GroupElement best = reduced;
          for (std::int32_t h = 0; h < n; ++h) {
            const GroupElement hh{TableIndex{h}};
            GroupElement conj =
                multiply_impl(self, multiply_impl(self, hh, reduced), inverse_impl(self, hh));
            if (conj < best) best = conj;
          }
          return best;
        } else if constexpr (std::is_same_v<T, DirectProduct>) {
          const auto& t = std::get<std::vector<GroupElement>>(reduced.rep);
          std::vector<GroupElement> parts;
          parts.reserve(t.size());
          for (std::size_t i = 0; i < t.size(); ++i)
            parts.push_back(conjugacy_key(s.factors[i], t[i]));
          return {std::move(parts)};
        } else {
          return reduced;  // abelian: classes are singletons
        }
      },
      spec.desc);
}

bool is_conjugate(const GroupSpec& spec, const GroupElement& a, const GroupElement& b) {
  return conjugacy_key(spec, a) == conjugacy_key(spec, b);
}

std::vector<GroupElement> conjugacy_intersection(const GroupSpec& spec, const GroupElement& g,
                                                 const std::vector<GroupElement>& elements) {
  const GroupElement key = conjugacy_key(spec, g);
  std::vector<GroupElement> hits;
  for (const auto& h : elements)
    if (conjugacy_key(spec, h) == key) hits.push_back(h);
  return hits;
}

}  // namespace cayley
