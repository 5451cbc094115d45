#include "cayley/rational.hpp"

#include <sstream>
#include <stdexcept>

namespace cayley {

std::string to_fraction_string(const Rational& r) {
  std::ostringstream out;
  out << boost::multiprecision::numerator(r) << '/' << boost::multiprecision::denominator(r);
  return out.str();
}

Rational parse_fraction(std::string_view text) {
  auto bad = [&] {
    throw std::invalid_argument("malformed rational '" + std::string(text) +
                                "': expected p or p/q");
  };
  if (text.empty()) bad();
  const auto slash = text.find('/');
  const std::string_view num_part = text.substr(0, slash);
  auto parse_int = [&](std::string_view s, bool allow_sign) {
    if (s.empty()) bad();
    std::size_t i = 0;
    if (allow_sign && (s[0] == '+' || s[0] == '-')) i = 1;
    if (i == s.size()) bad();
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') bad();
    return Integer(std::string(s));
  };
  const Integer num = parse_int(num_part, true);
  if (slash == std::string_view::npos) return Rational(num);
  const std::string_view den_part = text.substr(slash + 1);
  const Integer den = parse_int(den_part, false);
  if (den == 0) bad();
  return Rational(num, den);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace cayley
