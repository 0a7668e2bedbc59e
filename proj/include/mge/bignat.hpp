#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace mge {

// Exact integer and rational arithmetic for all counts and bounds.
// Counts are nonnegative; differences between bounds may be negative,
// so the underlying type is signed.
using BigNat = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigNat factorial(long long m) {
    if (m < 0) throw InvalidArgument("factorial: negative argument " + std::to_string(m));
    BigNat r = 1;
    for (long long t = 2; t <= m; ++t) r *= t;
    return r;
}

// Factorial with the convention m! = 1 whenever m <= 0.
inline BigNat stahl_factorial(long long m) {
    return m <= 0 ? BigNat(1) : factorial(m);
}

// m!! = m (m-2) (m-4) ... down to 2 or 1; values of m below 2 give the
// empty product. Defined for m >= -1.
inline BigNat double_factorial(long long m) {
    if (m < -1)
        throw InvalidArgument("double_factorial: argument " + std::to_string(m) +
                              " is below -1");
    BigNat r = 1;
    for (long long t = m; t >= 2; t -= 2) r *= t;
    return r;
}

// "6.34e13"-style annotation for large exact values; numbers short enough to
// read are returned as-is. Display only, never used in comparisons.
inline std::string approx_notation(const BigNat& v) {
    std::string s = v.str();
    bool neg = !s.empty() && s[0] == '-';
    std::string digits = neg ? s.substr(1) : s;
    if (digits.size() <= 6) return s;
    std::string mant = digits.substr(0, 1) + "." + digits.substr(1, 2);
    return (neg ? std::string("-") : std::string()) + mant + "e" +
           std::to_string(digits.size() - 1);
}

}  // namespace mge
