#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "powops/errors.hpp"

namespace powops {

/// Exact arbitrary-precision integer. Every quantity in the engine is an
/// element of Z; no floating point, no modular truncation.
using Int = boost::multiprecision::cpp_int;

using boost::multiprecision::abs;
using boost::multiprecision::gcd;

inline Int pow_int(const Int& base, unsigned exponent) {
    return boost::multiprecision::pow(base, exponent);
}

/// p^e as an Int.
inline Int prime_power(long long p, unsigned exponent) {
    return pow_int(Int(p), exponent);
}

/// p-adic valuation v_p(a) of a nonzero integer.
inline unsigned valuation(Int a, long long p) {
    if (a == 0) {
        throw std::invalid_argument("valuation of zero is undefined");
    }
    unsigned v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

/// Canonical residue of a in [0, m), also for negative a.
inline Int mod_nonnegative(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) {
        r += m;
    }
    return r;
}

/// Quotient a / b, required to be exact.
inline Int exact_quotient(const Int& a, const Int& b, const char* context) {
    if (a % b != 0) {
        throw ExactnessError(std::string("inexact division in ") + context);
    }
    return a / b;
}

inline bool is_prime(long long p) {
    if (p < 2) {
        return false;
    }
    for (long long d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
            return false;
        }
    }
    return true;
}

inline Int parse_int(std::string_view text) {
    if (text.empty()) {
        throw ParseError("empty integer literal");
    }
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) {
        throw ParseError("sign without digits in integer literal");
    }
    for (std::size_t i = start; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') {
            throw ParseError("invalid digit in integer literal: '" + std::string(text) + "'");
        }
    }
    return Int(std::string(text));
}

}  // namespace powops
