#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace farey {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt to_bigint(unsigned __int128 v) {
    BigInt hi = std::uint64_t(v >> 64);
    return (hi << 64) | std::uint64_t(v);
}

inline Rational make_ratio(std::uint64_t numerator, unsigned __int128 denominator) {
    return Rational(BigInt(numerator), to_bigint(denominator));
}

// Nearest binary64 to an arbitrary-precision rational, round-half-even.
// Naive double(num)/double(den) overflows once either side outgrows the
// double range, which happens quickly for level sums.
inline double to_double(const Rational& r) {
    namespace mp = boost::multiprecision;
    const BigInt num = mp::numerator(r);
    const BigInt den = mp::denominator(r);
    if (num == 0) return 0.0;
    if (num < 0) throw std::domain_error("to_double: negative rationals not used here");

    // Scale so the integer quotient carries 62 or 63 bits, then round the
    // top 53 with guard and sticky bits.
    const long e = static_cast<long>(mp::msb(num)) - static_cast<long>(mp::msb(den));
    const long s = 62 - e;
    BigInt scaled_num = num;
    BigInt scaled_den = den;
    if (s > 0)
        scaled_num <<= s;
    else if (s < 0)
        scaled_den <<= -s;

    BigInt q, rem;
    mp::divide_qr(scaled_num, scaled_den, q, rem);
    const unsigned bits = static_cast<unsigned>(mp::msb(q)) + 1;
    const unsigned excess = bits - 53;
    std::uint64_t mantissa = BigInt(q >> excess).convert_to<std::uint64_t>();
    const bool guard = mp::bit_test(q, excess - 1);
    bool sticky = rem != 0;
    if (!sticky && excess > 1) sticky = (q & ((BigInt(1) << (excess - 1)) - 1)) != 0;
    if (guard && (sticky || (mantissa & 1))) ++mantissa;
    return std::ldexp(static_cast<double>(mantissa), static_cast<int>(excess - s));
}

inline std::string rational_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

// Integer power with negative exponents allowed; base must be nonzero when
// beta < 0.
inline Rational pow_rational(const Rational& base, long beta) {
    if (beta == 0) return Rational(1);
    const unsigned expo = static_cast<unsigned>(beta < 0 ? -beta : beta);
    BigInt num = boost::multiprecision::pow(boost::multiprecision::numerator(base), expo);
    BigInt den = boost::multiprecision::pow(boost::multiprecision::denominator(base), expo);
    if (beta < 0) {
        if (num == 0) throw std::domain_error("pow_rational: zero base with negative exponent");
        num.swap(den);
    }
    return Rational(num, den);
}

}  // namespace farey
