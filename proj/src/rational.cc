#include "anoncheck/rational.h"

#include <cctype>
#include <sstream>

#include "anoncheck/errors.h"

namespace anoncheck {
namespace {

using boost::multiprecision::cpp_int;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

cpp_int to_int(std::string_view digits) {
  cpp_int value = 0;
  for (char c : digits) value = value * 10 + (c - '0');
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    cpp_int d = to_int(den);
    if (d == 0) {
      throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    value = Rational(to_int(num), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) ||
        (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw ParseError("malformed decimal '" + std::string(text) + "'");
    }
    cpp_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    cpp_int numerator = (whole.empty() ? cpp_int(0) : to_int(whole)) * scale +
                        (frac.empty() ? cpp_int(0) : to_int(frac));
    value = Rational(numerator, scale);
  } else {
    if (!all_digits(body)) {
      throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    value = Rational(to_int(body));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  std::ostringstream out;
  out << boost::multiprecision::numerator(value) << '/'
      << boost::multiprecision::denominator(value);
  return out.str();
}

std::string to_decimal_string(const Rational& value, int digits) {
  std::ostringstream out;
  out.precision(digits);
  out << static_cast<double>(value);
  return out.str();
}

}  // namespace anoncheck
