#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>
#include <string_view>

#include "hyperspec/error.hpp"

namespace hyperspec {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Exact binary value of a finite double.
inline Rational rational_from_double(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::ParseError, "non-finite number");
  }
  if (value == 0.0) return Rational(0);
  int exponent = 0;
  double mantissa = std::frexp(value, &exponent);
  // Scale the mantissa to a 53-bit integer.
  auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational result(scaled);
  Integer power = Integer(1) << std::abs(exponent);
  if (exponent >= 0) {
    result *= power;
  } else {
    result /= power;
  }
  return result;
}

/// Accepts "p/q", integers and plain decimals such as "0.125" or "-3.5e-2".
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { return Error(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();
  try {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      Integer num(std::string(text.substr(0, slash)));
      Integer den(std::string(text.substr(slash + 1)));
      if (den == 0) throw fail();
      return Rational(num, den);
    }
    std::string s(text);
    int exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
      exp10 = std::stoi(s.substr(e + 1));
      s = s.substr(0, e);
    }
    bool negative = !s.empty() && s[0] == '-';
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) s = s.substr(1);
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string::npos) {
      digits = s.substr(0, dot) + s.substr(dot + 1);
      exp10 -= static_cast<int>(s.size() - dot - 1);
    } else {
      digits = s;
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) throw fail();
    Rational value{Integer(digits)};
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::abs(exp10)));
    if (exp10 >= 0) {
      value *= scale;
    } else {
      value /= scale;
    }
    return negative ? Rational(-value) : value;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw fail();
  }
}

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) {
    return boost::multiprecision::numerator(q).str();
  }
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace hyperspec
