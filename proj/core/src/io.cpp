#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "cayley/io.hpp"

namespace cayley {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

// spec := atom ('x' atom)* ; atom := 'F' int | 'Z' int ('*' 'Z' int)*
struct SpecParser {
  std::string text;
  std::size_t pos = 0;

  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }

  int parse_int() {
    std::size_t start = pos;
    while (!done() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected an integer at '" + text.substr(start) + "'");
    return std::stoi(text.substr(start, pos - start));
  }

  GroupSpec parse_atom() {
    if (peek() == 'F') {
      ++pos;
      return make_free_group(parse_int());
    }
    if (peek() != 'Z') fail(std::string("expected 'Z' or 'F', got '") + peek() + "'");
    ++pos;
    std::vector<int> orders{parse_int()};
    while (peek() == '*') {
      ++pos;
      if (peek() != 'Z') fail("'*' joins finite cyclic atoms only (Zm*Zn)");
      ++pos;
      orders.push_back(parse_int());
    }
    if (orders.size() == 1) return make_finite_cyclic(orders[0]);
    return make_free_product(orders);
  }

  GroupSpec parse() {
    std::vector<GroupSpec> factors{parse_atom()};
    while (peek() == 'x') {
      ++pos;
      factors.push_back(parse_atom());
    }
    if (!done()) fail("trailing input in group spec: '" + text.substr(pos) + "'");
    if (factors.size() == 1) return factors[0];
    return make_direct_product(std::move(factors));
  }
};

constexpr int kMaxFactorLetters = 8;   // 's'..'z'
constexpr int kMaxFreeLetters = 26;    // 'a'..'z'

void render_element_impl(const GroupSpec& spec, const GroupElement& g, std::string& out) {
  std::visit(
      [&](const auto& desc) {
        using D = std::decay_t<decltype(desc)>;
        if constexpr (std::is_same_v<D, FiniteCyclic>) {
          const auto& e = std::get<CyclicPow>(g.rep);
          if (e.exp == 0) {
            out += 'e';
          } else {
            out.append(static_cast<std::size_t>(e.exp), 't');
          }
        } else if constexpr (std::is_same_v<D, FreeProduct>) {
          const auto& word = std::get<std::vector<Syllable>>(g.rep);
          if (word.empty()) {
            out += 'e';
            return;
          }
          for (const auto& syl : word) {
            if (syl.factor >= kMaxFactorLetters)
              fail("word letters cover at most 8 free-product factors");
            out.append(static_cast<std::size_t>(syl.exp),
                       static_cast<char>('s' + syl.factor));
          }
        } else if constexpr (std::is_same_v<D, FreeGroup>) {
          const auto& word = std::get<std::vector<std::int32_t>>(g.rep);
          if (word.empty()) {
            out += 'e';
            return;
          }
          if (desc.rank > kMaxFreeLetters)
            fail("word letters cover free groups of rank <= 26");
          for (std::int32_t v : word)
            out += static_cast<char>(v > 0 ? 'a' + v - 1 : 'A' - v - 1);
        } else if constexpr (std::is_same_v<D, FiniteTable>) {
          out += desc.labels[std::get<TableIndex>(g.rep).index];
        } else {
          const auto& tuple = std::get<std::vector<GroupElement>>(g.rep);
          out += '(';
          for (std::size_t i = 0; i < tuple.size(); ++i) {
            if (i) out += ',';
            render_element_impl(desc.factors[i], tuple[i], out);
          }
          out += ')';
        }
      },
      spec.desc);
}

GroupElement parse_element_impl(const GroupSpec& spec, std::string_view word);

GroupElement parse_tuple(const DirectProduct& desc, std::string_view word) {
  if (word.size() < 2 || word.front() != '(' || word.back() != ')')
    fail("direct-product element must be a tuple '(w1,w2,...)'");
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 1;
  for (std::size_t i = 1; i + 1 < word.size(); ++i) {
    if (word[i] == '(') ++depth;
    if (word[i] == ')') --depth;
    if (word[i] == ',' && depth == 0) {
      parts.push_back(word.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(word.substr(start, word.size() - 1 - start));
  if (parts.size() != desc.factors.size())
    fail("tuple arity " + std::to_string(parts.size()) + " does not match the " +
         std::to_string(desc.factors.size()) + " product factors");
  std::vector<GroupElement> tuple;
  for (std::size_t i = 0; i < parts.size(); ++i)
    tuple.push_back(parse_element_impl(desc.factors[i], parts[i]));
  GroupElement g;
  g.rep = std::move(tuple);
  return g;
}

GroupElement parse_element_impl(const GroupSpec& spec, std::string_view word) {
  return std::visit(
      [&](const auto& desc) -> GroupElement {
        using D = std::decay_t<decltype(desc)>;
        if constexpr (std::is_same_v<D, FiniteTable>) {
          for (std::size_t i = 0; i < desc.labels.size(); ++i)
            if (desc.labels[i] == word) {
              GroupElement g;
              g.rep = TableIndex{static_cast<std::int32_t>(i)};
              return g;
            }
          if (word == "e") return identity(spec);
          fail("unknown element label '" + std::string(word) + "'");
        } else if constexpr (std::is_same_v<D, DirectProduct>) {
          if (word == "e") return identity(spec);
          return parse_tuple(desc, word);
        } else {
          if (word == "e") return identity(spec);
          GroupElement g = identity(spec);
          for (char c : word) {
            GroupElement gen;
            if constexpr (std::is_same_v<D, FiniteCyclic>) {
              if (c != 't') fail("finite cyclic words use the letter 't'");
              gen.rep = CyclicPow{1};
            } else if constexpr (std::is_same_v<D, FreeProduct>) {
              const int f = c - 's';
              if (f < 0 || f >= static_cast<int>(desc.orders.size()))
                fail(std::string("letter '") + c + "' is not a factor generator");
              gen.rep = std::vector<Syllable>{Syllable{static_cast<std::int32_t>(f), 1}};
            } else {  // FreeGroup
              std::int32_t v = 0;
              if (c >= 'a' && c <= 'z') v = c - 'a' + 1;
              else if (c >= 'A' && c <= 'Z') v = -(c - 'A' + 1);
              if (v == 0 || (v > 0 ? v : -v) > desc.rank)
                fail(std::string("letter '") + c + "' is not a generator");
              gen.rep = std::vector<std::int32_t>{v};
            }
            g = multiply(spec, g, gen);
          }
          return g;
        }
      },
      spec.desc);
}

}  // namespace

GroupSpec parse_group_spec(std::string_view text) {
  SpecParser parser{strip_spaces(text)};
  if (parser.text.empty()) fail("empty group spec");
  return parser.parse();
}

std::string render_group_spec(const GroupSpec& spec) {
  return std::visit(
      [&](const auto& desc) -> std::string {
        using D = std::decay_t<decltype(desc)>;
        if constexpr (std::is_same_v<D, FiniteCyclic>) {
          return "Z" + std::to_string(desc.order);
        } else if constexpr (std::is_same_v<D, FreeProduct>) {
          std::string out;
          for (std::size_t i = 0; i < desc.orders.size(); ++i) {
            if (i) out += '*';
            out += "Z" + std::to_string(desc.orders[i]);
          }
          return out;
        } else if constexpr (std::is_same_v<D, FreeGroup>) {
          return "F" + std::to_string(desc.rank);
        } else if constexpr (std::is_same_v<D, FiniteTable>) {
          return "table(" + std::to_string(desc.labels.size()) + ")";
        } else {
          std::string out;
          for (std::size_t i = 0; i < desc.factors.size(); ++i) {
            if (i) out += 'x';
            out += render_group_spec(desc.factors[i]);
          }
          return out;
        }
      },
      spec.desc);
}

GroupSpec group_spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("labels") || !j.contains("table"))
    fail("table group JSON needs 'labels' and 'table'");
  if (!j["labels"].is_array() || !j["table"].is_array())
    fail("'labels' must be an array of strings, 'table' an array of rows");
  std::vector<std::string> labels;
  for (const auto& l : j["labels"]) {
    if (!l.is_string()) fail("'labels' must be an array of strings");
    labels.push_back(l.get<std::string>());
  }
  std::vector<std::vector<int>> table;
  for (const auto& row : j["table"]) {
    if (!row.is_array()) fail("'table' must be an array of rows");
    std::vector<int> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) fail("'table' entries must be integers");
      r.push_back(v.get<int>());
    }
    table.push_back(std::move(r));
  }
  int identity_index = 0;
  if (j.contains("identity")) {
    if (!j["identity"].is_number_integer()) fail("'identity' must be an integer index");
    identity_index = j["identity"].get<int>();
  }
  return make_finite_table(std::move(labels), std::move(table), identity_index);
}

GroupSpec load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open group file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail("cannot parse '" + path + "': " + e.what());
  }
  return group_spec_from_json(j);
}

std::string render_element(const GroupSpec& spec, const GroupElement& g) {
  std::string out;
  render_element_impl(spec, g, out);
  return out;
}

GroupElement parse_element(const GroupSpec& spec, std::string_view word) {
  const std::string cleaned = strip_spaces(word);
  if (cleaned.empty()) fail("empty element word");
  return parse_element_impl(spec, cleaned);
}

Json element_to_json(const RingElement& a) {
  Json out = Json::array();
  for (const auto& [g, c] : a.coeffs)
    out.push_back(Json::array({render_element(a.spec, g), to_fraction_string(c)}));
  return out;
}

RingElement element_from_json(const GroupSpec& spec, const Json& j) {
  if (!j.is_array()) fail("ring element JSON must be an array of [word, coeff] pairs");
  RingElement a = ring_zero(spec);
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
      fail("ring element terms must be [word, \"p/q\"] pairs");
    a = add(a, ring_delta(spec, parse_element(spec, pair[0].get<std::string>()),
                          parse_fraction(pair[1].get<std::string>())));
  }
  return a;
}

Json matrix_to_json(const RingMatrix& a) {
  Json rows = Json::array();
  for (int r = 0; r < a.rows; ++r) {
    Json row = Json::array();
    for (int c = 0; c < a.cols; ++c) row.push_back(element_to_json(a.at(r, c)));
    rows.push_back(std::move(row));
  }
  return Json{{"rows", a.rows}, {"cols", a.cols}, {"entries", std::move(rows)}};
}

RingMatrix matrix_from_json(const GroupSpec& spec, const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    fail("matrix JSON needs 'rows', 'cols', 'entries'");
  const int rows = j["rows"].get<int>();
  const int cols = j["cols"].get<int>();
  if (rows <= 0 || cols <= 0) fail("matrix dimensions must be positive");
  if (!j["entries"].is_array() || static_cast<int>(j["entries"].size()) != rows)
    fail("'entries' must hold one array per row");
  RingMatrix m = mat_zero(spec, rows, cols);
  for (int r = 0; r < rows; ++r) {
    const auto& row = j["entries"][r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      fail("row " + std::to_string(r) + " must hold " + std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c) m.at(r, c) = element_from_json(spec, row[c]);
  }
  return m;
}

Json complex_to_json(const CochainComplex& c) {
  Json out;
  out["group"] = render_group_spec(c.spec);
  out["ranks"] = c.ranks;
  Json maps = Json::array();
  for (const auto& d : c.coboundaries) maps.push_back(matrix_to_json(d));
  out["coboundaries"] = std::move(maps);
  return out;
}

}  // namespace cayley
