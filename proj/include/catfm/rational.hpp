#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace catfm {

using Rational = boost::multiprecision::cpp_rational;

/// Accepts "p/q", integers and finite decimals ("0.25"). Throws ParseError.
Rational parse_rational(const std::string& text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& r);

double to_double(const Rational& r);

}  // namespace catfm
