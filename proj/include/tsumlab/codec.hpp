#pragma once

/**
 * @file codec.hpp
 * @brief Mixed-radix digit codec shared by the reduction encoders.
 *
 * Digits are stored least-significant first: value = sum_i d_i * prod_{j<i} b_j.
 * The reductions describe their layouts most-significant first, so encoders
 * reverse before calling encode().
 *
 * The most-significant position wraps modulo its base when two values are
 * added digit-wise. That wrap is the group's own modular reduction (nothing
 * lies above the top digit), so it is never reported as a carry.
 */

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tsumlab/bigint.hpp"
#include "tsumlab/error.hpp"
#include "tsumlab/group.hpp"

namespace tsumlab {

enum class CodecMode { CyclicCarry, XorDigitwise };

struct CarryDetected {
    std::size_t position;  // least-significant-first index
    friend bool operator==(const CarryDetected&, const CarryDetected&) = default;
};

using CarryFreeSum = std::variant<Id, CarryDetected>;

class MixedRadixCodec {
public:
    MixedRadixCodec(std::vector<std::uint64_t> bases_lsb_first, CodecMode mode)
        : bases_(std::move(bases_lsb_first)), mode_(mode) {
        weights_.reserve(bases_.size());
        Id w = 1;
        for (std::size_t i = 0; i < bases_.size(); ++i) {
            const auto b = bases_[i];
            if (b < 2) throw Error(Errc::InvalidParameters, "digit base must be >= 2 (position " + std::to_string(i) + ")");
            if (mode_ == CodecMode::XorDigitwise && !is_power_of_two(b)) {
                throw Error(Errc::InvalidParameters, "xor codec requires power-of-two bases (position " + std::to_string(i) + ")");
            }
            weights_.push_back(w);
            w *= b;
        }
        order_ = w;
    }

    std::size_t length() const noexcept { return bases_.size(); }
    const std::vector<std::uint64_t>& bases() const noexcept { return bases_; }
    CodecMode mode() const noexcept { return mode_; }
    /// Product of all bases.
    const Id& order() const noexcept { return order_; }
    const Id& weight(std::size_t position) const { return weights_.at(position); }

    /// Group whose element ids this codec addresses.
    GroupSpec natural_group() const {
        if (mode_ == CodecMode::CyclicCarry) return GroupSpec::cyclic(order_);
        return GroupSpec::xor_bits(bit_length(order_) - 1);
    }

    void check_group(const GroupSpec& group) const {
        if (group.order() != order_) {
            throw Error(Errc::OrderMismatch, "codec order " + order_.str() + " != group order " + group.order().str());
        }
    }

    Id encode(std::span<const std::uint64_t> digits) const {
        if (digits.size() != bases_.size()) {
            throw Error(Errc::LengthMismatch, "expected " + std::to_string(bases_.size()) + " digits, got " +
                                                  std::to_string(digits.size()));
        }
        Id value = 0;
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (digits[i] >= bases_[i]) {
                throw Error(Errc::DigitOutOfRange, "digit " + std::to_string(digits[i]) + " at position " +
                                                       std::to_string(i) + " exceeds base " + std::to_string(bases_[i]));
            }
            if (digits[i] != 0) value += weights_[i] * digits[i];
        }
        return value;
    }

    Id encode(std::initializer_list<std::uint64_t> digits) const {
        return encode(std::span<const std::uint64_t>(digits.begin(), digits.size()));
    }

    std::vector<std::uint64_t> decode(const Id& value) const {
        if (value < 0 || value >= order_) {
            throw Error(Errc::InvalidElement, "value " + value.str() + " outside codec range " + order_.str());
        }
        std::vector<std::uint64_t> digits(bases_.size());
        Id rest = value;
        for (std::size_t i = 0; i < bases_.size(); ++i) {
            Id q, r;
            boost::multiprecision::divide_qr(rest, Id(bases_[i]), q, r);
            digits[i] = r.convert_to<std::uint64_t>();
            rest = std::move(q);
        }
        return digits;
    }

    /// Additive inverse of one digit: b - d (mod b) for cyclic codecs, bitwise
    /// complement within the digit width for xor codecs.
    std::uint64_t negate_digit(std::size_t position, std::uint64_t digit) const {
        const auto b = bases_.at(position);
        if (digit >= b) throw Error(Errc::DigitOutOfRange, "digit exceeds base");
        if (mode_ == CodecMode::CyclicCarry) return (b - digit) % b;
        return (~digit) & (b - 1);
    }

    /// Digit-wise addition that refuses to carry between positions.
    CarryFreeSum add_carry_free(const Id& a, const Id& b) const {
        const auto da = decode(a);
        const auto db = decode(b);
        std::vector<std::uint64_t> out(da.size());
        const std::size_t top = da.empty() ? 0 : da.size() - 1;
        for (std::size_t i = 0; i < da.size(); ++i) {
            const auto base = bases_[i];
            if (mode_ == CodecMode::CyclicCarry) {
                const auto s = da[i] + db[i];
                if (i == top) {
                    out[i] = s % base;
                } else if (s >= base) {
                    return CarryDetected{i};
                } else {
                    out[i] = s;
                }
            } else {
                if (i != top && da[i] != 0 && db[i] != 0) return CarryDetected{i};
                out[i] = da[i] ^ db[i];
            }
        }
        return encode(out);
    }

private:
    std::vector<std::uint64_t> bases_;
    std::vector<Id> weights_;
    Id order_ = 1;
    CodecMode mode_;
};

inline Id codec_encode(const MixedRadixCodec& c, std::span<const std::uint64_t> digits) { return c.encode(digits); }
inline std::vector<std::uint64_t> codec_decode(const MixedRadixCodec& c, const Id& e) { return c.decode(e); }
inline CarryFreeSum digitwise_add_carry_free(const MixedRadixCodec& c, const Id& a, const Id& b) {
    return c.add_carry_free(a, b);
}

}  // namespace tsumlab
