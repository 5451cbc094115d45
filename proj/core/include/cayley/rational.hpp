#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace cayley {

// Exact arithmetic types used throughout: arbitrary-precision integers and
// rationals in canonical lowest terms (denominator > 0).
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Canonical string form "p/q" with q >= 1, e.g. "0/1", "-1/2", "7/1".
// Every rational value that leaves the library (JSON, CSV, logs) goes
// through this so that output is byte-deterministic and round-trips.
std::string to_fraction_string(const Rational& r);

// Accepts "p" or "p/q" with optional sign on p; q must be positive.
// Throws std::invalid_argument on anything else.
Rational parse_fraction(std::string_view text);

double to_double(const Rational& r);

}  // namespace cayley
