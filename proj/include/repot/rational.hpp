#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace repot {

/// Exact arbitrary-precision fraction used by the rational solver mode.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q" or an integer literal. Throws SchemaError on malformed input.
Rational parse_rational(std::string_view text);

std::string rational_to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

} // namespace repot
