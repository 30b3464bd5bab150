#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace hreg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", "-p/q" or a plain integer. Throws Error{Format}.
Rational parse_rational(std::string_view text);

/// Always "p/q" with q > 0 and gcd(p,q) = 1, e.g. "0/1", "3/8".
std::string to_string(const Rational& r);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

/// Numerator/denominator pair for inner loops. Both must fit in int64.
struct SmallFraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// Throws Error{ParameterOutOfContract} when the parts do not fit in int64.
SmallFraction to_small(const Rational& r);

using i128 = __int128;

}  // namespace hreg
