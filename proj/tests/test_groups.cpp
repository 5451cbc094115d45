// Group families: normal forms, word-metric balls, conjugacy machinery.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "cayley/group.hpp"
#include "cayley/io.hpp"

using namespace cayley;

namespace {

GroupElement el(const GroupSpec& spec, const std::string& word) {
  return parse_element(spec, word);
}

// Multiplication table of the symmetric group on three points, built from
// permutation composition so the table validator gets a genuine group.
GroupSpec sym3() {
  const std::vector<std::vector<int>> perms = {
      {0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  std::vector<std::vector<int>> table(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      std::vector<int> comp(3);
      for (int x = 0; x < 3; ++x) comp[x] = perms[i][perms[j][x]];
      table[i][j] = static_cast<int>(std::find(perms.begin(), perms.end(), comp) -
                                     perms.begin());
    }
  return make_finite_table({"e", "r", "s", "t", "c", "d"}, table, 0);
}

}  // namespace

TEST_CASE("finite cyclic groups") {
  const GroupSpec z5 = make_finite_cyclic(5);
  CHECK(is_finite(z5));
  CHECK(group_order(z5) == 5);

  const GroupElement t = el(z5, "t");
  CHECK(multiply(z5, t, el(z5, "tttt")) == identity(z5));
  CHECK(inverse(z5, el(z5, "tt")) == el(z5, "ttt"));
  CHECK(is_identity(z5, multiply(z5, t, inverse(z5, t))));

  // All non-identity powers generate, so the ball saturates at radius 1.
  CHECK(ball(z5, 0).size() == 1);
  CHECK(ball(z5, 1).size() == 5);
  CHECK(ball(z5, 3).size() == 5);

  CHECK_THROWS_AS(make_finite_cyclic(1), std::invalid_argument);
}

TEST_CASE("free product normal forms") {
  const GroupSpec g = make_free_product({2, 3});

  const GroupElement s = el(g, "s");
  const GroupElement t = el(g, "t");
  CHECK(multiply(g, s, s) == identity(g));
  CHECK(multiply(g, t, el(g, "tt")) == identity(g));

  // (s t)(t s) merges the middle syllables: s t^2 s.
  CHECK(multiply(g, el(g, "st"), el(g, "ts")) == el(g, "stts"));
  // (s t)(t^2 s) collapses all the way to the identity.
  CHECK(multiply(g, el(g, "st"), el(g, "tts")) == identity(g));
  CHECK(inverse(g, el(g, "st")) == el(g, "tts"));

  CHECK_THROWS_AS(make_free_product({2}), std::invalid_argument);
  CHECK_THROWS_AS(make_free_product({2, 1}), std::invalid_argument);
  CHECK_FALSE(is_finite(g));
  CHECK_FALSE(group_order(g).has_value());
}

TEST_CASE("free product ball sizes") {
  const GroupSpec g = make_free_product({2, 3});
  // Alternating syllable words; layer L holds the words of syllable length L.
  CHECK(ball(g, 0).size() == 1);
  CHECK(ball(g, 1).size() == 4);
  CHECK(ball(g, 2).size() == 8);
  CHECK(ball(g, 3).size() == 14);
  CHECK(ball(g, 8).size() == 106);

  const auto b = ball(g, 3);
  CHECK(b.front() == identity(g));
  CHECK(ball(g, 3) == b);  // deterministic
  CHECK(std::set<GroupElement>(b.begin(), b.end()).size() == b.size());
}

TEST_CASE("free group normal forms and balls") {
  const GroupSpec f2 = make_free_group(2);

  CHECK(multiply(f2, el(f2, "a"), el(f2, "A")) == identity(f2));
  CHECK(multiply(f2, el(f2, "ab"), el(f2, "BA")) == identity(f2));
  CHECK(inverse(f2, el(f2, "ab")) == el(f2, "BA"));
  CHECK(multiply(f2, el(f2, "ab"), el(f2, "Ba")) == el(f2, "aa"));

  CHECK(ball(f2, 0).size() == 1);
  CHECK(ball(f2, 1).size() == 5);
  CHECK(ball(f2, 2).size() == 17);
  CHECK(ball(f2, 3).size() == 53);

  CHECK_THROWS_AS(make_free_group(0), std::invalid_argument);
}

TEST_CASE("finite table groups validate") {
  const GroupSpec s3 = sym3();
  CHECK(group_order(s3) == 6);
  CHECK(ball(s3, 1).size() == 6);

  // r and s are transpositions; their product has order 3.
  const GroupElement r = el(s3, "r");
  const GroupElement s = el(s3, "s");
  const GroupElement rs = multiply(s3, r, s);
  CHECK_FALSE(is_identity(s3, rs));
  const GroupElement rs3 = multiply(s3, rs, multiply(s3, rs, rs));
  CHECK(is_identity(s3, rs3));

  // Broken tables are rejected: out-of-range index, bad identity row,
  // and a non-associative Latin square.
  CHECK_THROWS_AS(make_finite_table({"e", "x"}, {{0, 1}, {1, 9}}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_finite_table({"e", "x"}, {{1, 0}, {0, 1}}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      make_finite_table({"e", "a", "b", "c", "d"},
                        {{0, 1, 2, 3, 4},
                         {1, 0, 3, 4, 2},
                         {2, 4, 0, 1, 3},
                         {3, 2, 4, 0, 1},
                         {4, 3, 1, 2, 0}},
                        0),
      std::invalid_argument);
}

TEST_CASE("direct products flatten and embed factor generators") {
  const GroupSpec z2 = make_finite_cyclic(2);
  const GroupSpec z3 = make_finite_cyclic(3);
  const GroupSpec f2 = make_free_group(2);

  const GroupSpec nested = make_direct_product({f2, make_direct_product({z2, z3})});
  const auto& dp = std::get<DirectProduct>(nested.desc);
  CHECK(dp.factors.size() == 3);

  const GroupSpec z2xz3 = make_direct_product({z2, z3});
  CHECK(is_finite(z2xz3));
  CHECK(group_order(z2xz3) == 6);
  // Generators are the embedded factor generators: (t,e), (e,t), (e,t^2).
  CHECK(word_generators(z2xz3).size() == 3);
  CHECK(ball(z2xz3, 1).size() == 4);
  CHECK(ball(z2xz3, 2).size() == 6);

  const GroupElement a = el(z2xz3, "(t,tt)");
  const GroupElement b = el(z2xz3, "(t,t)");
  CHECK(multiply(z2xz3, a, b) == el(z2xz3, "(e,e)"));
  CHECK(inverse(z2xz3, a) == b);

  CHECK_THROWS_AS(make_direct_product({z2}), std::invalid_argument);
}

TEST_CASE("generating sets are symmetric") {
  for (const GroupSpec& spec :
       {make_free_product({2, 3}), make_free_group(2), make_finite_cyclic(4),
        make_direct_product({make_free_group(2), make_finite_cyclic(3)}), sym3()}) {
    const auto gens = word_generators(spec);
    const std::set<GroupElement> set(gens.begin(), gens.end());
    CHECK(set.size() == gens.size());
    for (const auto& g : gens) {
      CHECK_FALSE(is_identity(spec, g));
      CHECK(set.count(inverse(spec, g)) == 1);
    }
  }
}

TEST_CASE("ball layering is breadth-first and sorted") {
  const GroupSpec g = make_free_product({2, 3});
  const auto b2 = ball(g, 2);
  const auto b1 = ball(g, 1);
  // A ball extends the smaller ball: same prefix, then the next layer.
  CHECK(std::equal(b1.begin(), b1.end(), b2.begin()));
  // Each layer is sorted in the element order.
  CHECK(std::is_sorted(b2.begin() + 1, b2.begin() + 4));
  CHECK(std::is_sorted(b2.begin() + 4, b2.end()));
}

TEST_CASE("cyclic reduction and conjugacy keys") {
  const GroupSpec g = make_free_product({2, 3});

  // s t s is conjugate to t: the ends merge under cyclic reduction.
  CHECK(cyclic_reduce(g, el(g, "sts")) == el(g, "t"));
  CHECK(is_conjugate(g, el(g, "sts"), el(g, "t")));
  CHECK(conjugacy_key(g, el(g, "sts")) == conjugacy_key(g, el(g, "t")));

  // st and ts are cyclic rotations of each other.
  CHECK(is_conjugate(g, el(g, "st"), el(g, "ts")));
  // st and st^2 are not conjugate (different syllable exponents).
  CHECK_FALSE(is_conjugate(g, el(g, "st"), el(g, "stt")));
  // t and t^2 are inverse but not conjugate in Z2 * Z3.
  CHECK_FALSE(is_conjugate(g, el(g, "t"), el(g, "tt")));

  const GroupSpec f2 = make_free_group(2);
  CHECK(cyclic_reduce(f2, el(f2, "abA")) == el(f2, "b"));
  CHECK(is_conjugate(f2, el(f2, "abA"), el(f2, "b")));
  CHECK(is_conjugate(f2, el(f2, "ab"), el(f2, "ba")));
  CHECK_FALSE(is_conjugate(f2, el(f2, "ab"), el(f2, "aB")));

  // Direct products are componentwise.
  const GroupSpec p = make_direct_product({f2, make_finite_cyclic(3)});
  CHECK(is_conjugate(p, el(p, "(abA,t)"), el(p, "(b,t)")));
  CHECK_FALSE(is_conjugate(p, el(p, "(b,t)"), el(p, "(b,tt)")));
}

TEST_CASE("conjugacy intersection with a ball") {
  const GroupSpec g = make_free_product({2, 3});
  const auto window = ball(g, 3);
  // Conjugates of t inside radius 3: t itself and s t s.
  const auto cls = conjugacy_intersection(g, el(g, "t"), window);
  CHECK(cls.size() == 2);
  CHECK(std::count(cls.begin(), cls.end(), el(g, "t")) == 1);
  CHECK(std::count(cls.begin(), cls.end(), el(g, "sts")) == 1);

  const GroupSpec s3 = sym3();
  // The three transpositions form one class.
  const auto all = ball(s3, 1);
  CHECK(conjugacy_intersection(s3, el(s3, "r"), all).size() == 3);
}

TEST_CASE("elements are validated against the spec") {
  const GroupSpec g = make_free_product({2, 3});
  // A syllable word with an out-of-range exponent is rejected.
  GroupElement bad{std::vector<Syllable>{{0, 5}}};
  CHECK_THROWS_AS(multiply(g, bad, identity(g)), std::invalid_argument);
  // Adjacent equal factors violate the alternating normal form.
  GroupElement unreduced{std::vector<Syllable>{{1, 1}, {1, 1}}};
  CHECK_THROWS_AS(inverse(g, unreduced), std::invalid_argument);
  // An element of the wrong family is rejected.
  CHECK_THROWS_AS(multiply(g, GroupElement{CyclicPow{1}}, identity(g)),
                  std::invalid_argument);

  const GroupSpec f2 = make_free_group(2);
  GroupElement unfree{std::vector<std::int32_t>{1, -1}};
  CHECK_THROWS_AS(inverse(f2, unfree), std::invalid_argument);
  GroupElement outofrange{std::vector<std::int32_t>{3}};
  CHECK_THROWS_AS(inverse(f2, outofrange), std::invalid_argument);
}
