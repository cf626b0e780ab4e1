#pragma once

#include <cstdint>
#include <random>

#include "tsumlab/bigint.hpp"

namespace tsumlab {

/// Seeded generator with library-independent bounded draws, so that a fixed
/// seed gives the same stream under any standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound); bound must be >= 1.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    /// Uniform in [0, bound) for arbitrary-precision bounds (rejection on the
    /// smallest covering power of two).
    Id below(const Id& bound) {
        if (bound <= 1) return 0;
        if (fits_u64(bound)) return Id(below(bound.convert_to<std::uint64_t>()));
        const unsigned bits = bit_length(Id(bound - 1));
        while (true) {
            Id x = 0;
            unsigned filled = 0;
            while (filled < bits) {
                x <<= 64;
                x |= engine_();
                filled += 64;
            }
            x >>= (filled - bits);
            if (x < bound) return x;
        }
    }

    bool coin() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

}  // namespace tsumlab
