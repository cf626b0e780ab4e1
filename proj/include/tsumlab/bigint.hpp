#pragma once

/**
 * @file bigint.hpp
 * @brief Arbitrary-precision element ids and exact rationals.
 *
 * Group orders produced by the reductions grow like (d B^{d+1})^2 and
 * N (2B+1)^{l+2}, which overflow 64 bits for modest parameters, so every
 * element id in the library is a boost cpp_int.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "tsumlab/error.hpp"

namespace tsumlab {

using Id = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_decimal(const Id& value) { return value.str(); }

inline Id parse_decimal(std::string_view text) {
    if (text.empty()) throw Error(Errc::ParseError, "empty decimal string");
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw Error(Errc::ParseError, "not a non-negative decimal integer: '" + std::string(text) + "'");
        }
    }
    return Id(std::string(text));
}

inline bool fits_u64(const Id& value) {
    return value >= 0 && value <= Id(std::numeric_limits<std::uint64_t>::max());
}

inline std::uint64_t to_u64(const Id& value) {
    if (!fits_u64(value)) throw Error(Errc::ParameterOverflow, "value " + value.str() + " does not fit in 64 bits");
    return value.convert_to<std::uint64_t>();
}

/// Number of bits needed to write `value` (0 for 0).
inline unsigned bit_length(const Id& value) {
    if (value <= 0) return 0;
    return static_cast<unsigned>(boost::multiprecision::msb(value)) + 1;
}

inline Id ipow(const Id& base, unsigned exponent) {
    Id result = 1;
    for (unsigned i = 0; i < exponent; ++i) result *= base;
    return result;
}

inline Id binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    Id result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result *= (n - k + i);
        result /= i;
    }
    return result;
}

/// ceil(log2(x)) for x >= 1, computed exactly.
inline unsigned ceil_log2(const Id& x) {
    if (x <= 1) return 0;
    return bit_length(Id(x - 1));
}

inline bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

}  // namespace tsumlab
