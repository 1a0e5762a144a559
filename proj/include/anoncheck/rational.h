#ifndef ANONCHECK_RATIONAL_H_
#define ANONCHECK_RATIONAL_H_

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace anoncheck {

// Exact probabilities. Every comparison in the checker is exact.
using Rational = boost::multiprecision::cpp_rational;

// Accepts "p/q", "n" and decimals such as "0.125" (converted exactly).
// Throws ParseError on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical "p/q" rendering in lowest terms; integers render as "n/1".
std::string to_string(const Rational& value);

// Approximate decimal rendering for human-readable tables only.
std::string to_decimal_string(const Rational& value, int digits = 6);

}  // namespace anoncheck

#endif  // ANONCHECK_RATIONAL_H_
