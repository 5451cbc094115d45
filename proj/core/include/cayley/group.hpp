#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cayley {

// ---------------------------------------------------------------------------
// Group descriptions
//
// A GroupSpec is an immutable structural description of a group from one of
// the supported families. Elements do not carry their spec; every operation
// takes the spec explicitly and verifies that element shapes match it.
// ---------------------------------------------------------------------------

// Z_m, m >= 2, written multiplicatively with one generator.
struct FiniteCyclic {
  int order = 2;
};

// Z_{m_1} * Z_{m_2} * ... * Z_{m_k}: a free product of finite cyclic groups,
// k >= 2, each order >= 2. Elements are alternating syllable words.
struct FreeProduct {
  std::vector<int> orders;
};

// F_k, the free group on k >= 1 generators. Elements are freely reduced
// letter words.
struct FreeGroup {
  int rank = 1;
};

// An explicit finite group given by its multiplication table (order <= 24).
// table[i][j] is the index of g_i * g_j. Validated on construction:
// index ranges, identity row/column, row/column cancellation, existence of
// inverses, and full associativity.
struct FiniteTable {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table;
  int identity = 0;
};

struct GroupSpec;

// A direct product of >= 2 factors. Nested direct products are flattened on
// construction, so the factor list never itself contains a DirectProduct.
struct DirectProduct {
  std::vector<GroupSpec> factors;
};

struct GroupSpec {
  std::variant<FiniteCyclic, FreeProduct, FreeGroup, FiniteTable, DirectProduct> desc;

  bool operator==(const GroupSpec& other) const;
};

// Validating constructors. All throw std::invalid_argument on bad input.
GroupSpec make_finite_cyclic(int order);
GroupSpec make_free_product(std::vector<int> orders);
GroupSpec make_free_group(int rank);
GroupSpec make_finite_table(std::vector<std::string> labels,
                            std::vector<std::vector<int>> table, int identity);
GroupSpec make_direct_product(std::vector<GroupSpec> factors);

bool is_finite(const GroupSpec& spec);
// Group order when finite; nullopt for infinite groups.
std::optional<std::uint64_t> group_order(const GroupSpec& spec);

// ---------------------------------------------------------------------------
// Elements
//
// Normal forms:
//   FiniteCyclic  t^e with 0 <= e < m
//   FreeProduct   alternating syllable word (factor, exp), adjacent factors
//                 distinct, 1 <= exp < order(factor); empty word = identity
//   FreeGroup     freely reduced word of letters +i / -i (1-based generator
//                 index, sign = inverse); empty word = identity
//   FiniteTable   element index
//   DirectProduct tuple of component elements, one per factor
// ---------------------------------------------------------------------------

struct Syllable {
  std::int32_t factor = 0;
  std::int32_t exp = 1;

  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

struct CyclicPow {
  std::int32_t exp = 0;
  friend auto operator<=>(const CyclicPow&, const CyclicPow&) = default;
};

struct TableIndex {
  std::int32_t index = 0;
  friend auto operator<=>(const TableIndex&, const TableIndex&) = default;
};

struct GroupElement {
  using Rep = std::variant<CyclicPow,                   // FiniteCyclic
                           std::vector<Syllable>,       // FreeProduct
                           std::vector<std::int32_t>,   // FreeGroup
                           TableIndex,                  // FiniteTable
                           std::vector<GroupElement>>;  // DirectProduct
  Rep rep;

  bool operator==(const GroupElement& other) const;
  // Deterministic total order (shortlex within each representation kind);
  // used for canonical ball ordering and as the map key order everywhere.
  bool operator<(const GroupElement& other) const;
};

// ---------------------------------------------------------------------------
// Core operations. Every function validates that elements belong to the
// spec's normal form and throws std::invalid_argument otherwise.
// ---------------------------------------------------------------------------

GroupElement identity(const GroupSpec& spec);
bool is_identity(const GroupSpec& spec, const GroupElement& g);
GroupElement multiply(const GroupSpec& spec, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupSpec& spec, const GroupElement& g);

// The word-metric generating set used by ball():
//   FiniteCyclic   all non-identity powers of the generator
//   FreeProduct    all non-identity powers of every factor generator
//   FreeGroup      the generators and their inverses
//   FiniteTable    all non-identity elements
//   DirectProduct  union of the factor generating sets, embedded
// With this choice a free-product syllable word of length L lies on the
// sphere of radius exactly L, and every group-ring element supported on one
// factor has propagation 1.
std::vector<GroupElement> word_generators(const GroupSpec& spec);

// Closed ball of the given radius in the word metric, as one flat list:
// identity first, then BFS layer by layer, each layer sorted in the
// element order. Deterministic; calling twice gives identical vectors.
std::vector<GroupElement> ball(const GroupSpec& spec, int radius);

// Cyclic reduction: the minimal-length representative shape of the
// conjugacy class. For free products this merges equal end factors until
// the first and last syllables differ (or one syllable is left); for free
// groups it strips matching inverse letters from the two ends. For the
// other families (abelian or componentwise) it is the element itself.
GroupElement cyclic_reduce(const GroupSpec& spec, const GroupElement& g);

// Canonical representative of the conjugacy class: cyclic reduction
// followed by the lexicographically minimal cyclic rotation (free product /
// free group), the minimal element of the class (finite table), or the
// componentwise key (direct product). Two elements are conjugate iff their
// keys are equal.
GroupElement conjugacy_key(const GroupSpec& spec, const GroupElement& g);

bool is_conjugate(const GroupSpec& spec, const GroupElement& a, const GroupElement& b);

// The members of the conjugacy class of g among `elements`, in the order
// they appear there.
std::vector<GroupElement> conjugacy_intersection(const GroupSpec& spec, const GroupElement& g,
                                                 const std::vector<GroupElement>& elements);

}  // namespace cayley
