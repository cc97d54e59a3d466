// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "numgrid/natural.hpp"

namespace numgrid {

class DigitSystemError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DigitRangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Parameters (base, exponent) of the map n -> sum of the exponent-th powers
/// of the base-`base` digits of n. Invariants: base >= 2, exponent >= 1.
class DigitSystem {
public:
    DigitSystem(std::uint32_t base, std::uint32_t exponent);

    [[nodiscard]] std::uint32_t base() const noexcept { return base_; }
    [[nodiscard]] std::uint32_t exponent() const noexcept { return exponent_; }

    /// (base - 1)^exponent, the largest contribution a single digit can make.
    [[nodiscard]] const Natural& max_digit_power() const noexcept { return max_digit_power_; }

    /// d^exponent for a digit d in [0, base - 1].
    [[nodiscard]] Natural digit_power(std::uint32_t digit) const;

    /// Per-digit powers as machine words. Present when any 64-digit number's
    /// image fits in 64 bits, which enables the word-sized fast paths.
    [[nodiscard]] std::optional<std::span<const std::uint64_t>> word_powers() const noexcept;

    friend bool operator==(const DigitSystem& a, const DigitSystem& b) noexcept {
        return a.base_ == b.base_ && a.exponent_ == b.exponent_;
    }

private:
    std::uint32_t base_;
    std::uint32_t exponent_;
    Natural max_digit_power_;
    std::vector<std::uint64_t> word_powers_;
    bool has_word_powers_ = false;
};

/// Base-b digits, least significant first. The canonical form has no
/// most-significant zero, so zero is the empty vector.
struct DigitVector {
    std::vector<std::uint32_t> digits;

    [[nodiscard]] std::size_t size() const noexcept { return digits.size(); }
    [[nodiscard]] bool empty() const noexcept { return digits.empty(); }
    std::uint32_t operator[](std::size_t i) const { return digits[i]; }
    [[nodiscard]] bool is_canonical() const noexcept { return digits.empty() || digits.back() != 0; }

    friend bool operator==(const DigitVector&, const DigitVector&) = default;
};

[[nodiscard]] DigitVector to_digits(const Natural& n, const DigitSystem& sys);

/// Throws DigitRangeError if any digit is outside [0, base - 1]. Accepts
/// non-canonical input with most-significant zeros.
[[nodiscard]] Natural from_digits(const DigitVector& d, const DigitSystem& sys);

/// Number of base-b digits of n (0 for n = 0).
[[nodiscard]] std::size_t digit_count(const Natural& n, const DigitSystem& sys);

/// The map f: sum of d^exponent over the base-b digits d of n.
[[nodiscard]] Natural digit_power_sum(const Natural& n, const DigitSystem& sys);

/// f restricted to machine words. Empty when the system has no word powers.
[[nodiscard]] std::optional<std::uint64_t> digit_power_sum_u64(std::uint64_t n,
                                                               const DigitSystem& sys);

/// The number written with `ones` digits equal to 1 in base b. f maps it to `ones`.
[[nodiscard]] Natural repunit(std::uint64_t ones, const DigitSystem& sys);

}  // namespace numgrid
