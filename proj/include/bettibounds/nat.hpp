#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bettibounds {

/// Arbitrary-precision integer used for all bound arithmetic.  The towers in
/// the quantified bounds overflow 64 bits at trivially small parameters, so
/// every value that can reach a bound formula lives in this type.
using Nat = boost::multiprecision::cpp_int;

inline Nat nat_pow(const Nat& base, const Nat& exp) {
    if (exp < 0) throw std::domain_error("nat_pow: negative exponent");
    Nat result = 1;
    Nat b = base;
    Nat e = exp;
    while (e > 0) {
        if ((e & 1) != 0) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

/// ceil(v / 2); bounds of the form gamma/2 use this so that halving never
/// invalidates an upper bound on an integer quantity.
inline Nat ceil_half(const Nat& v) { return (v + 1) / 2; }

inline Nat binomial(const Nat& n, const Nat& k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Nat kk = k;
    if (n - k < kk) kk = n - k;
    Nat num = 1;
    for (Nat i = 0; i < kk; ++i) {
        num *= n - i;
        num /= i + 1;  // exact at every step: product of j consecutive ints is divisible by j!
    }
    return num;
}

inline Nat nat_max(const Nat& a, const Nat& b) { return a > b ? a : b; }
inline Nat nat_min(const Nat& a, const Nat& b) { return a < b ? a : b; }

/// Truncated subtraction on naturals.
inline Nat monus(const Nat& a, const Nat& b) { return a > b ? Nat(a - b) : Nat(0); }

inline std::string nat_str(const Nat& v) { return v.str(); }

}  // namespace bettibounds
