#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>

namespace qlp {

using Rational = boost::multiprecision::mpq_rational;

// Accepts "p/q", plain integers ("7", "-2") and decimal literals ("0.25",
// "-1.05"); decimals are converted exactly.  Throws StructuralError on
// anything else (including "1/0").
Rational parse_rational(const std::string& text);

// Canonical "p/q" with a positive denominator, e.g. "0/1", "1/1", "-3/10".
std::string fraction_string(const Rational& r);

// Exact decimal expansion when the reduced denominator is of the form
// 2^a * 5^b, otherwise nullopt.
std::optional<std::string> decimal_string(const Rational& r);

// "p/q" plus the decimal in parentheses when one exists: "3/10 (0.3)".
std::string pretty_string(const Rational& r);

}  // namespace qlp
