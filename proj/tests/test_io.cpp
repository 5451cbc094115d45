// Parsing and serialization: the group-spec grammar, element words,
// fraction strings, and the JSON forms.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "cayley/complex.hpp"
#include "cayley/io.hpp"

using namespace cayley;

TEST_CASE("group spec grammar") {
  CHECK(parse_group_spec("Z2*Z3") == make_free_product({2, 3}));
  CHECK(parse_group_spec("F2") == make_free_group(2));
  CHECK(parse_group_spec("Z6") == make_finite_cyclic(6));
  CHECK(parse_group_spec("Z2*Z3*Z4") == make_free_product({2, 3, 4}));
  CHECK(parse_group_spec("F2xF2xZ3") ==
        make_direct_product({make_free_group(2), make_free_group(2),
                             make_finite_cyclic(3)}));
  // '*' binds tighter than 'x'.
  CHECK(parse_group_spec("Z2*Z3xZ4") ==
        make_direct_product({make_free_product({2, 3}), make_finite_cyclic(4)}));
  // Whitespace is ignored.
  CHECK(parse_group_spec(" Z2 * Z3 x F2 ") ==
        make_direct_product({make_free_product({2, 3}), make_free_group(2)}));

  for (const char* bad : {"", "Z1", "F0", "Z", "Zx", "Z2*", "Z2*F2", "F2*F2",
                          "xZ2", "Z2x", "Q8", "Z2**Z3", "Z2$"})
    CHECK_THROWS_AS(parse_group_spec(bad), std::invalid_argument);
}

TEST_CASE("group spec rendering round-trips") {
  for (const char* text : {"Z2*Z3", "F2", "Z6", "F3xZ2", "Z2*Z3xZ4", "F2xF2xZ2"}) {
    const GroupSpec spec = parse_group_spec(text);
    CHECK(render_group_spec(spec) == text);
    CHECK(parse_group_spec(render_group_spec(spec)) == spec);
  }
}

TEST_CASE("element words round-trip over balls") {
  for (const char* text : {"Z2*Z3", "Z3*Z3", "F2", "Z5"}) {
    const GroupSpec spec = parse_group_spec(text);
    for (const GroupElement& g : ball(spec, 3)) {
      const std::string word = render_element(spec, g);
      CHECK(parse_element(spec, word) == g);
    }
  }
  // Direct products render as tuples.
  const GroupSpec p = parse_group_spec("F2xZ3");
  for (const GroupElement& g : ball(p, 2)) {
    const std::string word = render_element(p, g);
    CHECK(word.front() == '(');
    CHECK(parse_element(p, word) == g);
  }
}

TEST_CASE("element word forms") {
  const GroupSpec fp = parse_group_spec("Z2*Z3");
  CHECK(render_element(fp, identity(fp)) == "e");
  CHECK(render_element(fp, parse_element(fp, "stt")) == "stt");
  CHECK(parse_element(fp, "st") ==
        multiply(fp, parse_element(fp, "s"), parse_element(fp, "t")));
  // Words reduce while parsing: s s = e, t t t = e.
  CHECK(parse_element(fp, "ss") == identity(fp));
  CHECK(parse_element(fp, "ttt") == identity(fp));

  const GroupSpec f2 = parse_group_spec("F2");
  CHECK(parse_element(f2, "aB") ==
        multiply(f2, parse_element(f2, "a"), inverse(f2, parse_element(f2, "b"))));
  CHECK(parse_element(f2, "aA") == identity(f2));
  CHECK(render_element(f2, parse_element(f2, "aaB")) == "aaB");

  const GroupSpec p = parse_group_spec("F2xZ3");
  CHECK(parse_element(p, "(ab,tt)") ==
        multiply(p, parse_element(p, "(ab,e)"), parse_element(p, "(e,tt)")));
  CHECK(parse_element(p, "e") == identity(p));

  for (const char* bad : {"x", "sz", "(a)", "(a,t,t)", "st)", "1"})
    CHECK_THROWS_AS(parse_element(p, bad), std::invalid_argument);
  CHECK_THROWS_AS(parse_element(fp, "a"), std::invalid_argument);
}

TEST_CASE("fraction strings") {
  CHECK(to_fraction_string(Rational(0)) == "0/1");
  CHECK(to_fraction_string(Rational(-1, 2)) == "-1/2");
  CHECK(to_fraction_string(Rational(7)) == "7/1");
  CHECK(parse_fraction("3") == Rational(3));
  CHECK(parse_fraction("-5/10") == Rational(-1, 2));
  CHECK(parse_fraction(to_fraction_string(Rational(22, 7))) == Rational(22, 7));

  for (const char* bad : {"", "1/0", "a", "1/-2", "1.5", "1/2/3", "/2"})
    CHECK_THROWS_AS(parse_fraction(bad), std::invalid_argument);
}

TEST_CASE("table groups load from JSON") {
  const Json j = {{"labels", {"e", "a", "b"}},
                  {"table", {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}},
                  {"identity", 0}};
  const GroupSpec spec = group_spec_from_json(j);
  CHECK(group_order(spec) == 3);
  CHECK(render_group_spec(spec) == "table(3)");
  const GroupElement a = parse_element(spec, "a");
  CHECK(multiply(spec, a, a) == parse_element(spec, "b"));
  CHECK(render_element(spec, a) == "a");

  // identity defaults to 0 when omitted.
  Json no_id = j;
  no_id.erase("identity");
  CHECK(group_spec_from_json(no_id) == spec);

  for (const Json& bad :
       {Json{{"labels", {"e"}}, {"table", {{0, 0}}}},            // shape mismatch
        Json{{"labels", {"e", "a"}}, {"table", {{0, 1}, {1, 9}}}},  // bad index
        Json{{"table", {{0}}}}}) {                               // missing labels
    CHECK_THROWS_AS(group_spec_from_json(bad), std::invalid_argument);
  }

  // Round-trip through a file.
  const std::string path = "io_test_table.json";
  {
    std::ofstream out(path);
    out << j.dump();
  }
  CHECK(load_group_file(path) == spec);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_group_file("does_not_exist.json"), std::invalid_argument);
}

TEST_CASE("ring elements and matrices round-trip through JSON") {
  const GroupSpec g = parse_group_spec("Z2*Z3");
  RingElement x = ring_delta(g, parse_element(g, "st"), Rational(-2, 3));
  x = add(x, ring_delta(g, identity(g), Rational(1, 2)));

  const Json jx = element_to_json(x);
  CHECK(element_from_json(g, jx) == x);
  // Words are sorted in element order and fractions are canonical.
  CHECK(jx[0][0] == "e");
  CHECK(jx[0][1] == "1/2");
  CHECK(jx[1][1] == "-2/3");
  // Byte determinism: same value, different construction order.
  RingElement y = ring_delta(g, identity(g), Rational(1, 2));
  y = add(y, ring_delta(g, parse_element(g, "st"), Rational(-2, 3)));
  CHECK(element_to_json(y).dump() == jx.dump());

  const CochainComplex c = free_product_complex(2, 3, 2);
  const RingMatrix delta1 = laplacian(c, 1);
  const Json jm = matrix_to_json(delta1);
  CHECK(jm["rows"] == 2);
  CHECK(matrix_from_json(g, jm) == delta1);

  const Json jc = complex_to_json(c);
  CHECK(jc["group"] == "Z2*Z3");
  CHECK(jc["ranks"] == Json({1, 2, 2}));
  CHECK(jc["coboundaries"].size() == 2);
}

TEST_CASE("json rejects malformed elements") {
  const GroupSpec g = parse_group_spec("Z2*Z3");
  CHECK_THROWS_AS(element_from_json(g, Json{{"not", "a list"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(element_from_json(g, Json::array({Json::array({"zz", "1/2"})})),
                  std::invalid_argument);
  CHECK_THROWS_AS(element_from_json(g, Json::array({Json::array({"s", "1/0"})})),
                  std::invalid_argument);
}
