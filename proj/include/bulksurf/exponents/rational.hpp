#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "bulksurf/errors.hpp"

namespace bulksurf {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "2", "-1.25", "1.01", "2.5e-1" or "5/2" exactly.
inline Rational parse_rational(std::string_view text) {
  using boost::multiprecision::cpp_int;
  std::string s(text);
  auto fail = [&]() -> Rational { throw usage_error("not a decimal number: '" + s + "'"); };
  if (s.empty()) return fail();
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(std::string_view(s).substr(0, slash));
    Rational den = parse_rational(std::string_view(s).substr(slash + 1));
    if (den == 0) return fail();
    return num / den;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  cpp_int digits = 0;
  int scale = 0;
  bool any = false, dot = false;
  for (; pos < s.size(); ++pos) {
    const char ch = s[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits = digits * 10 + (ch - '0');
      if (dot) ++scale;
      any = true;
    } else if (ch == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) return fail();
  long exponent = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    bool eneg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) eneg = s[pos++] == '-';
    if (pos >= s.size()) return fail();
    for (; pos < s.size(); ++pos) {
      if (!std::isdigit(static_cast<unsigned char>(s[pos]))) return fail();
      exponent = exponent * 10 + (s[pos] - '0');
      if (exponent > 4000) return fail();
    }
    if (eneg) exponent = -exponent;
  }
  if (pos != s.size()) return fail();
  const long shift = exponent - scale;
  Rational value(digits);
  const cpp_int ten = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(shift < 0 ? -shift : shift));
  value = shift < 0 ? value / Rational(ten) : value * Rational(ten);
  return negative ? -value : value;
}

inline Rational positive_part(const Rational& x) { return x > 0 ? x : Rational(0); }

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline std::string to_string(const Rational& x) { return x.str(); }

}  // namespace bulksurf
