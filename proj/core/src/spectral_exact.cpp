#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cayley/errors.hpp"
#include "cayley/spectral.hpp"

namespace cayley {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

using int128 = __int128;

Integer to_integer(int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u =
      neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Integer r = static_cast<std::uint64_t>(u >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(u);
  return neg ? Integer(-r) : r;
}

// Tail bound for the exponential series after order K, at argument tN:
//   sum_{k>K} (tN)^k / k!  <=  (tN)^{K+1} / ((K+1)! (1 - tN/(K+2))),
// valid when K + 2 > tN. Evaluated in log space to dodge overflow.
std::pair<double, bool> series_tail_bound(double tN, int K) {
  if (tN <= 0.0) return {0.0, true};
  if (static_cast<double>(K + 2) <= tN)
    return {std::numeric_limits<double>::infinity(), false};
  const double log_term = (K + 1) * std::log(tN) - std::lgamma(static_cast<double>(K + 2));
  const double geometric = 1.0 / (1.0 - tN / static_cast<double>(K + 2));
  return {std::exp(log_term) * geometric, true};
}

// ---------------------------------------------------------------------------
// Indexed enumeration of a ball in a free product of finite cyclic groups or
// a free group, as a prefix tree: node = word, parent = word minus its last
// syllable/letter. Children of a node are laid out contiguously in
// generator order, so right multiplication by a generator is pure index
// arithmetic — no hashing, no per-node allocation.
// ---------------------------------------------------------------------------

struct BallTree {
  bool free_group = false;
  std::vector<std::int32_t> orders;  // free product factor orders
  int rank = 0;                      // free group rank
  int gen_count = 0;

  // Generator table in canonical order. Free product: (factor, exp) with
  // factors ascending and exponents 1..order-1; block_start[f] is the first
  // generator index of factor f. Free group: letters a, a^-1, b, b^-1, ...
  std::vector<std::int32_t> gen_factor, gen_exp, gen_letter;
  std::vector<std::int32_t> block_start;

  int depth = 0;
  std::vector<std::int64_t> layer_off;  // layer L occupies [layer_off[L], layer_off[L+1])
  std::vector<std::int32_t> parent;
  std::vector<std::int64_t> first_child;
  std::vector<std::int16_t> last_f;  // factor (free product) or letter (free group); root sentinel
  std::vector<std::int16_t> last_e;  // exponent; free product only

  std::int64_t node_count() const { return layer_off.back(); }

  static int letter_pos(std::int32_t v) {
    return 2 * ((v > 0 ? v : -v) - 1) + (v < 0 ? 1 : 0);
  }

  std::int64_t fp_child(std::int64_t u, std::int32_t f, std::int32_t e) const {
    // Rank of the (f, e) child among u's children: generator order with the
    // parent's own factor block removed.
    std::int32_t excl = 0;
    const std::int16_t lf = last_f[u];
    if (lf >= 0 && f > lf) excl = orders[lf] - 1;
    return first_child[u] + block_start[f] + (e - 1) - excl;
  }

  std::int64_t fg_child(std::int64_t u, std::int32_t v) const {
    std::int32_t excl = 0;
    const std::int16_t l = last_f[u];
    if (l != 0 && letter_pos(v) > letter_pos(-l)) excl = 1;
    return first_child[u] + letter_pos(v) - excl;
  }

  // Node index of (word of u) * generator j. Valid whenever u's layer is
  // below `depth`, so the result exists in the tree.
  std::int64_t transition(std::int64_t u, int j) const {
    if (free_group) {
      const std::int32_t v = gen_letter[j];
      if (last_f[u] == -v) return parent[u];
      return fg_child(u, v);
    }
    const std::int32_t f = gen_factor[j];
    const std::int32_t e = gen_exp[j];
    if (last_f[u] == f) {
      std::int32_t enew = last_e[u] + e;
      if (enew >= orders[f]) enew -= orders[f];
      if (enew == 0) return parent[u];
      return fp_child(parent[u], f, enew);
    }
    return fp_child(u, f, e);
  }

  // Word of node u, front to back, as (factor, exp) pairs or letters.
  void reconstruct_fp(std::int64_t u, std::vector<std::pair<std::int32_t, std::int32_t>>& buf) const {
    buf.clear();
    while (u > 0) {
      buf.emplace_back(last_f[u], last_e[u]);
      u = parent[u];
    }
    std::reverse(buf.begin(), buf.end());
  }

  void reconstruct_fg(std::int64_t u, std::vector<std::int32_t>& buf) const {
    buf.clear();
    while (u > 0) {
      buf.push_back(last_f[u]);
      u = parent[u];
    }
    std::reverse(buf.begin(), buf.end());
  }
};

constexpr std::int64_t kMaxTreeNodes = 24'000'000;

BallTree build_tree(const GroupSpec& spec, int depth) {
  BallTree tree;
  tree.depth = depth;
  if (const auto* fp = std::get_if<FreeProduct>(&spec.desc)) {
    tree.orders.assign(fp->orders.begin(), fp->orders.end());
    for (std::int32_t f = 0; f < static_cast<std::int32_t>(tree.orders.size()); ++f) {
      if (tree.orders[f] > 127)
        throw unsupported_error("factor order too large for the indexed path");
      tree.block_start.push_back(tree.gen_count);
      for (std::int32_t e = 1; e < tree.orders[f]; ++e) {
        tree.gen_factor.push_back(f);
        tree.gen_exp.push_back(e);
        ++tree.gen_count;
      }
    }
  } else if (const auto* fg = std::get_if<FreeGroup>(&spec.desc)) {
    tree.free_group = true;
    tree.rank = fg->rank;
    for (std::int32_t i = 1; i <= fg->rank; ++i) {
      tree.gen_letter.push_back(i);
      tree.gen_letter.push_back(-i);
      tree.gen_count += 2;
    }
  } else {
    throw unsupported_error("indexed enumeration covers free products and free groups only");
  }

  // Layer sizes up front, so the total is known and bounded before any
  // allocation. Free product: counts per last-factor evolve linearly.
  std::vector<std::int64_t> layer_sizes{1};
  bool overflowed = false;
  if (tree.free_group) {
    std::int64_t cur = 1;
    for (int L = 1; L <= depth; ++L) {
      cur *= (L == 1) ? 2 * tree.rank : (2 * tree.rank - 1);
      if (cur > kMaxTreeNodes) {
        overflowed = true;
        break;
      }
      layer_sizes.push_back(cur);
    }
  } else {
    const int nf = static_cast<int>(tree.orders.size());
    std::vector<std::int64_t> by_factor(nf, 0);
    for (int L = 1; L <= depth; ++L) {
      std::vector<std::int64_t> next(nf, 0);
      if (L == 1) {
        for (int f = 0; f < nf; ++f) next[f] = tree.orders[f] - 1;
      } else {
        std::int64_t total_prev = 0;
        for (int f = 0; f < nf; ++f) total_prev += by_factor[f];
        for (int f = 0; f < nf; ++f)
          next[f] = (total_prev - by_factor[f]) * (tree.orders[f] - 1);
      }
      by_factor = next;
      std::int64_t layer = 0;
      for (int f = 0; f < nf; ++f) layer += by_factor[f];
      if (layer > kMaxTreeNodes) {
        overflowed = true;
        break;
      }
      layer_sizes.push_back(layer);
    }
  }
  std::int64_t total = 0;
  tree.layer_off.push_back(0);
  for (std::int64_t sz : layer_sizes) {
    total += sz;
    tree.layer_off.push_back(total);
  }
  if (overflowed || static_cast<int>(layer_sizes.size()) <= depth || total > kMaxTreeNodes)
    throw unsupported_error("ball too large for the indexed path (depth " +
                            std::to_string(depth) + ")");

  tree.parent.assign(total, -1);
  tree.first_child.assign(total, -1);
  tree.last_f.assign(total, tree.free_group ? 0 : -1);
  tree.last_e.assign(total, 0);

  std::int64_t next_node = 1;
  for (int L = 0; L < depth; ++L) {
    for (std::int64_t u = tree.layer_off[L]; u < tree.layer_off[L + 1]; ++u) {
      tree.first_child[u] = next_node;
      for (int j = 0; j < tree.gen_count; ++j) {
        if (tree.free_group) {
          if (tree.last_f[u] == -tree.gen_letter[j]) continue;
          tree.parent[next_node] = static_cast<std::int32_t>(u);
          tree.last_f[next_node] = static_cast<std::int16_t>(tree.gen_letter[j]);
          ++next_node;
        } else {
          if (tree.last_f[u] == tree.gen_factor[j]) continue;
          tree.parent[next_node] = static_cast<std::int32_t>(u);
          tree.last_f[next_node] = static_cast<std::int16_t>(tree.gen_factor[j]);
          tree.last_e[next_node] = static_cast<std::int16_t>(tree.gen_exp[j]);
          ++next_node;
        }
      }
    }
  }
  if (next_node != total) fail("internal error: tree layout mismatch");
  return tree;
}

// Cyclic reduction on raw buffers; returns the surviving span [i, j].
std::pair<int, int> fp_cyclic_span(std::vector<std::pair<std::int32_t, std::int32_t>>& w,
                                   const std::vector<std::int32_t>& orders) {
  int i = 0, j = static_cast<int>(w.size()) - 1;
  while (j > i && w[i].first == w[j].first) {
    const std::int32_t ord = orders[w[i].first];
    const std::int32_t e = (w[i].second + w[j].second) % ord;
    if (e != 0) {
      w[i].second = e;
      --j;
      break;  // ends now differ: the word inside was alternating
    }
    ++i;
    --j;
  }
  return {i, j};
}

std::pair<int, int> fg_cyclic_span(std::vector<std::int32_t>& w) {
  int i = 0, j = static_cast<int>(w.size()) - 1;
  while (j > i && w[i] == -w[j]) {
    ++i;
    --j;
  }
  return {i, j};
}

// Lexicographically minimal rotation of w[i..j] (inclusive), by the same
// comparator the conjugacy key uses.
template <typename T, typename Less>
std::vector<T> min_rotation(const std::vector<T>& w, int i, int j, Less less) {
  std::vector<T> best(w.begin() + i, w.begin() + j + 1);
  std::vector<T> rot = best;
  const int len = static_cast<int>(best.size());
  for (int r = 1; r < len; ++r) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (std::lexicographical_compare(rot.begin(), rot.end(), best.begin(), best.end(), less))
      best = rot;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Class sums of scalar powers on the tree. Coefficients ride in __int128;
// the caller certifies l1^order < 2^126 before entering, which bounds every
// intermediate value.
// ---------------------------------------------------------------------------

ScalarPowerSums tree_power_class_sums(const GroupSpec& spec, const RingElement& a, int order,
                                      const std::vector<GroupElement>& keys) {
  const BallTree tree = build_tree(spec, order);

  // Split the support into the identity coefficient and generator terms.
  std::int64_t c_ident = 0;
  std::vector<std::pair<int, std::int64_t>> gen_terms;  // (generator index, coefficient)
  for (const auto& [g, c] : a.coeffs) {
    const Integer num = boost::multiprecision::numerator(c);
    const std::int64_t ci = num.convert_to<std::int64_t>();
    if (tree.free_group) {
      const auto& w = std::get<std::vector<std::int32_t>>(g.rep);
      if (w.empty()) {
        c_ident = ci;
      } else {
        gen_terms.emplace_back(BallTree::letter_pos(w[0]), ci);
      }
    } else {
      const auto& w = std::get<std::vector<Syllable>>(g.rep);
      if (w.empty()) {
        c_ident = ci;
      } else {
        gen_terms.emplace_back(tree.block_start[w[0].factor] + w[0].exp - 1, ci);
      }
    }
  }

  // Classify nodes: for each requested key, the sorted list of nodes whose
  // cyclic reduction lands in that class.
  std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> fp_keys;
  std::vector<std::vector<std::int32_t>> fg_keys;
  auto fp_less = [](const std::pair<std::int32_t, std::int32_t>& x,
                    const std::pair<std::int32_t, std::int32_t>& y) { return x < y; };
  auto fg_less = [](std::int32_t x, std::int32_t y) {
    return BallTree::letter_pos(x) < BallTree::letter_pos(y);
  };
  for (const auto& key : keys) {
    if (tree.free_group) {
      fg_keys.push_back(std::get<std::vector<std::int32_t>>(key.rep));
    } else {
      const auto& w = std::get<std::vector<Syllable>>(key.rep);
      std::vector<std::pair<std::int32_t, std::int32_t>> raw;
      raw.reserve(w.size());
      for (const auto& syl : w) raw.emplace_back(syl.factor, syl.exp);
      fp_keys.push_back(std::move(raw));
    }
  }

  const std::size_t n_keys = keys.size();
  std::vector<std::vector<std::int64_t>> matches(n_keys);
  {
    std::vector<std::pair<std::int32_t, std::int32_t>> fbuf;
    std::vector<std::int32_t> gbuf;
    for (std::int64_t u = 0; u < tree.node_count(); ++u) {
      if (tree.free_group) {
        tree.reconstruct_fg(u, gbuf);
        const auto [i, j] = fg_cyclic_span(gbuf);
        const int len = j - i + 1 < 0 ? 0 : j - i + 1;
        for (std::size_t ki = 0; ki < n_keys; ++ki) {
          if (static_cast<int>(fg_keys[ki].size()) != len) continue;
          if (len == 0) {
            matches[ki].push_back(u);
          } else if (len == 1) {
            if (gbuf[i] == fg_keys[ki][0]) matches[ki].push_back(u);
          } else if (min_rotation(gbuf, i, j, fg_less) == fg_keys[ki]) {
            matches[ki].push_back(u);
          }
        }
      } else {
        tree.reconstruct_fp(u, fbuf);
        const auto [i, j] = fp_cyclic_span(fbuf, tree.orders);
        const int len = j - i + 1 < 0 ? 0 : j - i + 1;
        for (std::size_t ki = 0; ki < n_keys; ++ki) {
          if (static_cast<int>(fp_keys[ki].size()) != len) continue;
          if (len == 0) {
            matches[ki].push_back(u);
          } else if (len == 1) {
            if (fbuf[i] == fp_keys[ki][0]) matches[ki].push_back(u);
          } else if (min_rotation(fbuf, i, j, fp_less) == fp_keys[ki]) {
            matches[ki].push_back(u);
          }
        }
      }
    }
  }

  // Power iteration: cur holds the coefficients of a^k on the tree.
  ScalarPowerSums out;
  out.order = order;
  out.keys = keys;
  out.sums.assign(order + 1, std::vector<Rational>(n_keys, Rational(0)));

  std::vector<int128> cur(tree.node_count(), 0), nxt(tree.node_count(), 0);
  cur[0] = 1;
  // Per-key pointer into the sorted match list: nodes in layers <= k are a
  // prefix, and only those can carry coefficients of a^k.
  std::vector<std::size_t> active(n_keys, 0);

  auto accumulate = [&](int k) {
    const std::int64_t limit = tree.layer_off[std::min<std::size_t>(k + 1, tree.layer_off.size() - 1)];
    for (std::size_t ki = 0; ki < n_keys; ++ki) {
      while (active[ki] < matches[ki].size() && matches[ki][active[ki]] < limit) ++active[ki];
      int128 total = 0;
      for (std::size_t mi = 0; mi < active[ki]; ++mi) total += cur[matches[ki][mi]];
      out.sums[k][ki] = Rational(to_integer(total));
    }
  };

  accumulate(0);
  for (int k = 1; k <= order; ++k) {
    const std::int64_t src_end = tree.layer_off[k];      // support of a^{k-1}
    const std::int64_t dst_end = tree.layer_off[k + 1];  // support of a^k
    std::fill(nxt.begin(), nxt.begin() + dst_end, int128(0));
    for (std::int64_t u = 0; u < src_end; ++u) {
      const int128 c = cur[u];
      if (c == 0) continue;
      if (c_ident != 0) nxt[u] += c * c_ident;
      for (const auto& [j, cj] : gen_terms) nxt[tree.transition(u, j)] += c * cj;
    }
    std::swap(cur, nxt);
    accumulate(k);
  }
  return out;
}

// Exact fallback: repeated convolution with class sums read off per step.
ScalarPowerSums generic_power_class_sums(const RingElement& a, int order,
                                         const std::vector<GroupElement>& keys) {
  if (order > 30)
    throw unsupported_error(
        "generic scalar powers support order <= 30; use an integer-coefficient "
        "generator-supported element for the indexed path");
  ScalarPowerSums out;
  out.order = order;
  out.keys = keys;
  out.sums.assign(order + 1, std::vector<Rational>(keys.size(), Rational(0)));

  std::map<GroupElement, int> key_of;  // cache: element -> key index (or -1)
  auto key_index = [&](const GroupElement& g) {
    auto it = key_of.find(g);
    if (it != key_of.end()) return it->second;
    const GroupElement key = conjugacy_key(a.spec, g);
    int idx = -1;
    for (std::size_t ki = 0; ki < keys.size(); ++ki)
      if (keys[ki] == key) idx = static_cast<int>(ki);
    key_of.emplace(g, idx);
    return idx;
  };

  RingElement p = ring_one(a.spec);
  for (int k = 0; k <= order; ++k) {
    if (k > 0) p = convolve(p, a);
    for (const auto& [g, c] : p.coeffs) {
      const int idx = key_index(g);
      if (idx >= 0) out.sums[k][idx] += c;
    }
  }
  return out;
}

bool integer_coefficients(const RingElement& a) {
  for (const auto& [g, c] : a.coeffs)
    if (boost::multiprecision::denominator(c) != 1) return false;
  return true;
}

bool generator_supported(const RingElement& a) {
  // Support within {identity} union single syllables/letters.
  for (const auto& [g, c] : a.coeffs) {
    if (const auto* w = std::get_if<std::vector<Syllable>>(&g.rep)) {
      if (w->size() > 1) return false;
    } else if (const auto* l = std::get_if<std::vector<std::int32_t>>(&g.rep)) {
      if (l->size() > 1) return false;
    } else {
      return false;
    }
  }
  return true;
}

bool int128_capacity_ok(const RingElement& a, int order) {
  Integer l1 = 0;
  for (const auto& [g, c] : a.coeffs) l1 += abs(boost::multiprecision::numerator(c));
  if (l1 <= 1) return true;
  Integer bound = 1;
  for (int k = 0; k < order; ++k) {
    bound *= l1;
    if (bound > (Integer(1) << 126)) return false;
  }
  return true;
}

}  // namespace

ScalarPowerSums scalar_power_class_sums(const RingElement& a, int order,
                                        const std::vector<GroupElement>& classes) {
  if (order < 0) fail("power order must be >= 0");
  std::vector<GroupElement> keys;
  keys.reserve(classes.size());
  for (const auto& g : classes) keys.push_back(conjugacy_key(a.spec, g));

  const bool tree_family = std::holds_alternative<FreeProduct>(a.spec.desc) ||
                           std::holds_alternative<FreeGroup>(a.spec.desc);
  if (tree_family && generator_supported(a) && integer_coefficients(a)) {
    if (!int128_capacity_ok(a, order))
      throw unsupported_error("power order too large for 128-bit coefficients");
    return tree_power_class_sums(a.spec, a, order, keys);
  }
  return generic_power_class_sums(a, order, keys);
}

// ---------------------------------------------------------------------------
// Taylor partial sums of the heat semigroup.
// ---------------------------------------------------------------------------

namespace {

void finish_result(ExactHeatResult& r, const Rational& t, const Rational& n, int order) {
  r.order = order;
  const auto [bound, valid] = series_tail_bound(to_double(t * n), order);
  r.remainder_bound = bound;
  r.bound_valid = valid;
}

bool is_zero_matrix(const RingMatrix& m) {
  for (const auto& e : m.entries)
    if (!e.is_zero()) return false;
  return true;
}

// trace_g(X^k) for k = 1..K, choosing the cheapest exact route:
//  - diagonal with entries proportional to idempotents: closed form;
//  - X (or a trace-equivalent second form `reduced`) of size 1x1: scalar
//    class sums on the indexed ball;
//  - otherwise explicit matrix powers.
std::vector<Rational> power_traces(const RingMatrix& x, const RingMatrix* reduced,
                                   const GroupElement& g, int order) {
  const TraceSpec tr = TraceSpec::delocalised(g);
  std::vector<Rational> t(order + 1, Rational(0));  // t[k], k >= 1 used

  // Diagonal of proportional idempotents: entry a with a*a = c a gives
  // trace_g(a^k) = c^{k-1} trace_g(a).
  bool diag_ok = x.rows == x.cols;
  for (int i = 0; diag_ok && i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j)
      if (i != j && !x.at(i, j).is_zero()) diag_ok = false;
  if (diag_ok) {
    std::vector<std::pair<Rational, Rational>> parts;  // (c, trace_g(a))
    for (int i = 0; diag_ok && i < x.rows; ++i) {
      const RingElement& a = x.at(i, i);
      if (a.is_zero()) continue;
      const RingElement a2 = convolve(a, a);
      const Rational lead = a.coeffs.begin()->second;
      const Rational c = coefficient(a2, a.coeffs.begin()->first) / lead;
      if (!(a2 == scalar_mul(c, a))) {
        diag_ok = false;
        break;
      }
      parts.emplace_back(c, trace(a, tr));
    }
    if (diag_ok) {
      for (auto& [c, tr_a] : parts) {
        Rational ck = 1;  // c^{k-1}
        for (int k = 1; k <= order; ++k) {
          t[k] += ck * tr_a;
          ck *= c;
        }
      }
      return t;
    }
  }

  const RingMatrix* scalar_src = nullptr;
  if (x.rows == 1 && x.cols == 1)
    scalar_src = &x;
  else if (reduced && reduced->rows == 1 && reduced->cols == 1)
    scalar_src = reduced;
  if (scalar_src) {
    const ScalarPowerSums sums =
        scalar_power_class_sums(scalar_src->at(0, 0), order, {g});
    for (int k = 1; k <= order; ++k) t[k] = sums.sums[k][0];
    return t;
  }

  if (order > 30)
    throw unsupported_error("unstructured exact powers support order <= 30");
  RingMatrix p = x;
  for (int k = 1; k <= order; ++k) {
    if (k > 1) p = mat_mul(p, x);
    t[k] = trace(p, tr);
  }
  return t;
}

}  // namespace

ExactHeatResult heat_trace_exact(const RingMatrix& delta, const Rational& t,
                                 const GroupElement& g, int order) {
  if (delta.rows != delta.cols) fail("heat trace needs a square matrix");
  if (t < 0) fail("heat time must be >= 0");
  if (order < 0) fail("taylor order must be >= 0");
  if (order > 30)
    throw unsupported_error(
        "generic exact heat supports order <= 30; use the complex-based overload "
        "for structured operators");

  const TraceSpec tr = TraceSpec::delocalised(g);
  ExactHeatResult r;
  RingMatrix p = mat_identity(delta.spec, delta.rows);
  Rational coeff = 1;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) {
      p = mat_mul(p, delta);
      coeff *= -t / k;
    }
    r.value += coeff * trace(p, tr);
  }
  finish_result(r, t, l1_norm(delta), order);
  return r;
}

ExactHeatResult heat_trace_exact(const CochainComplex& c, int degree, const Rational& t,
                                 const GroupElement& g, int order) {
  if (degree < 0 || degree > c.top_degree()) fail("degree out of range for the complex");
  if (t < 0) fail("heat time must be >= 0");
  if (order < 0) fail("taylor order must be >= 0");

  const RingMatrix delta = laplacian(c, degree);

  std::optional<RingMatrix> a_part, b_part, b_reduced;
  if (degree < c.top_degree()) {
    const RingMatrix& d = c.coboundaries[degree];
    a_part = mat_mul(mat_star(d), d);
  }
  if (degree > 0) {
    const RingMatrix& d = c.coboundaries[degree - 1];
    b_part = mat_mul(d, mat_star(d));
    b_reduced = mat_mul(mat_star(d), d);
  }

  // The split Delta^k = A^k + B^k needs AB = BA = 0 (it follows from the
  // chain law, but is checked on the actual matrices before use).
  if (a_part && b_part) {
    if (!is_zero_matrix(mat_mul(*a_part, *b_part)) ||
        !is_zero_matrix(mat_mul(*b_part, *a_part)))
      return heat_trace_exact(delta, t, g, order);
  }

  std::vector<Rational> ta(order + 1, Rational(0)), tb(order + 1, Rational(0));
  if (a_part) ta = power_traces(*a_part, nullptr, g, order);
  // trace_g((d d*)^k) = trace_g((d* d)^k) for k >= 1 (traciality), and the
  // reduced side may be scalar.
  if (b_part) tb = power_traces(*b_part, &*b_reduced, g, order);

  const bool class_of_identity = conjugacy_key(c.spec, g) == identity(c.spec);

  ExactHeatResult r;
  Rational coeff = 1;
  if (class_of_identity) r.value += Rational(c.ranks[degree]);
  for (int k = 1; k <= order; ++k) {
    coeff *= -t / k;
    r.value += coeff * (ta[k] + tb[k]);
  }
  finish_result(r, t, l1_norm(delta), order);
  return r;
}

}  // namespace cayley
