#pragma once

// Shared arbitrary-precision number types and small combinatorial helpers.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace reclab {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using uint128 = unsigned __int128;

inline BigInt numerator(Rat const& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(Rat const& r) { return boost::multiprecision::denominator(r); }

// floor of a rational
inline BigInt rat_floor(Rat const& r) {
    BigInt n = numerator(r), d = denominator(r);
    BigInt q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

// fractional part in [0, 1)
inline Rat rat_frac(Rat const& r) { return r - Rat(rat_floor(r)); }

inline Rat rat_abs(Rat const& r) { return r < 0 ? Rat(-r) : r; }

// ceil(a/b) for positive rationals, as an integer
inline BigInt rat_ceil(Rat const& r) {
    BigInt f = rat_floor(r);
    return (Rat(f) == r) ? f : f + 1;
}

inline BigInt binomial(BigInt const& n, long k) {
    if (k < 0) return 0;
    BigInt r = 1;
    for (long i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

inline BigInt factorial(long n) {
    BigInt r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

// Stirling numbers of the second kind S(n, k), 1 <= k <= n
inline BigInt stirling2(long n, long k) {
    if (k < 0 || k > n) return 0;
    if (n == 0) return k == 0 ? 1 : 0;
    std::vector<BigInt> row(static_cast<size_t>(n) + 1, 0);
    row[0] = 1;  // S(0,0)
    for (long i = 1; i <= n; ++i) {
        for (long j = i; j >= 1; --j)
            row[static_cast<size_t>(j)] = BigInt(j) * row[static_cast<size_t>(j)] + row[static_cast<size_t>(j - 1)];
        row[0] = 0;
    }
    return row[static_cast<size_t>(k)];
}

// uint128 <-> BigInt and strings (cpp_int converts cleanly to/from __int128)
inline BigInt to_bigint(uint128 w) { return BigInt(w); }

inline uint128 to_uint128(BigInt const& b) {
    if (b < 0) throw std::invalid_argument("to_uint128: negative value");
    return static_cast<uint128>(b & ((BigInt(1) << 128) - 1));
}

inline std::string uint128_to_hex(uint128 w) {
    static char const* digits = "0123456789abcdef";
    std::string s(32, '0');
    for (int i = 31; i >= 0; --i) {
        s[static_cast<size_t>(i)] = digits[static_cast<unsigned>(w & 0xf)];
        w >>= 4;
    }
    return s;
}

inline uint128 uint128_from_hex(std::string const& s) {
    uint128 w = 0;
    for (char c : s) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw std::invalid_argument("uint128_from_hex: bad digit");
        w = (w << 4) | static_cast<unsigned>(v);
    }
    return w;
}

}  // namespace reclab
