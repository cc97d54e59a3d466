// SPDX-License-Identifier: Apache-2.0
#include "numgrid/digitmap.hpp"

#include <limits>
#include <string>

namespace numgrid {

namespace {

constexpr std::uint32_t kMaxTabulatedBase = 1u << 16;

// Largest k with base^k <= 2^64 - 1, and base^k itself.
struct Chunk {
    unsigned digits;
    std::uint64_t divisor;
};

Chunk chunk_for(std::uint32_t base) {
    Chunk c{1, base};
    while (c.divisor <= std::numeric_limits<std::uint64_t>::max() / base) {
        c.divisor *= base;
        ++c.digits;
    }
    return c;
}

}  // namespace

DigitSystem::DigitSystem(std::uint32_t base, std::uint32_t exponent)
    : base_(base), exponent_(exponent) {
    if (base < 2) {
        throw DigitSystemError("base must be >= 2, got " + std::to_string(base));
    }
    if (exponent < 1) {
        throw DigitSystemError("exponent must be >= 1, got " + std::to_string(exponent));
    }
    max_digit_power_ = Natural::pow(Natural(base - 1), exponent);

    // 64 digits is the most any u64 can have (base 2).
    const Natural word_limit = Natural(std::numeric_limits<std::uint64_t>::max());
    if (base <= kMaxTabulatedBase && max_digit_power_ * Natural(64) <= word_limit) {
        word_powers_.resize(base);
        for (std::uint32_t d = 0; d < base; ++d) {
            word_powers_[d] = *Natural::pow(Natural(d), exponent).to_u64();
        }
        has_word_powers_ = true;
    }
}

Natural DigitSystem::digit_power(std::uint32_t digit) const {
    if (digit >= base_) {
        throw DigitRangeError("digit " + std::to_string(digit) + " out of range for base " +
                              std::to_string(base_));
    }
    if (has_word_powers_) {
        return Natural(word_powers_[digit]);
    }
    return Natural::pow(Natural(digit), exponent_);
}

std::optional<std::span<const std::uint64_t>> DigitSystem::word_powers() const noexcept {
    if (!has_word_powers_) {
        return std::nullopt;
    }
    return std::span<const std::uint64_t>(word_powers_);
}

DigitVector to_digits(const Natural& n, const DigitSystem& sys) {
    DigitVector out;
    const std::uint32_t base = sys.base();
    const Chunk chunk = chunk_for(base);
    Natural rest = n;
    while (!rest.is_zero()) {
        std::uint64_t low = rest.divmod_small(chunk.divisor);
        if (rest.is_zero()) {
            while (low != 0) {
                out.digits.push_back(static_cast<std::uint32_t>(low % base));
                low /= base;
            }
        } else {
            for (unsigned i = 0; i < chunk.digits; ++i) {
                out.digits.push_back(static_cast<std::uint32_t>(low % base));
                low /= base;
            }
        }
    }
    return out;
}

Natural from_digits(const DigitVector& d, const DigitSystem& sys) {
    Natural value;
    const Natural base(sys.base());
    for (auto it = d.digits.rbegin(); it != d.digits.rend(); ++it) {
        if (*it >= sys.base()) {
            throw DigitRangeError("digit " + std::to_string(*it) + " out of range for base " +
                                  std::to_string(sys.base()));
        }
        value *= base;
        value += Natural(*it);
    }
    return value;
}

std::size_t digit_count(const Natural& n, const DigitSystem& sys) {
    if (auto w = n.to_u64()) {
        std::size_t count = 0;
        for (std::uint64_t v = *w; v != 0; v /= sys.base()) {
            ++count;
        }
        return count;
    }
    return to_digits(n, sys).size();
}

std::optional<std::uint64_t> digit_power_sum_u64(std::uint64_t n, const DigitSystem& sys) {
    const auto powers = sys.word_powers();
    if (!powers) {
        return std::nullopt;
    }
    const std::uint64_t base = sys.base();
    std::uint64_t sum = 0;
    while (n != 0) {
        sum += (*powers)[n % base];
        n /= base;
    }
    return sum;
}

Natural digit_power_sum(const Natural& n, const DigitSystem& sys) {
    if (auto w = n.to_u64()) {
        if (auto s = digit_power_sum_u64(*w, sys)) {
            return Natural(*s);
        }
    }
    const DigitVector digits = to_digits(n, sys);
    if (const auto powers = sys.word_powers()) {
        // Each term is below 2^58, so 2^6 terms can share one word before flushing.
        Natural total;
        std::uint64_t partial = 0;
        unsigned pending = 0;
        for (std::uint32_t d : digits.digits) {
            partial += (*powers)[d];
            if (++pending == 64) {
                total += Natural(partial);
                partial = 0;
                pending = 0;
            }
        }
        total += Natural(partial);
        return total;
    }
    Natural total;
    for (std::uint32_t d : digits.digits) {
        total += sys.digit_power(d);
    }
    return total;
}

Natural repunit(std::uint64_t ones, const DigitSystem& sys) {
    DigitVector d;
    d.digits.assign(ones, 1);
    return from_digits(d, sys);
}

}  // namespace numgrid
