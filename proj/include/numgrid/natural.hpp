// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace numgrid {

/// Thrown when a textual or signed input does not denote a nonnegative integer.
class NaturalError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Arbitrary-precision nonnegative integer.
///
/// The only way to obtain a Natural is from an unsigned machine integer or a
/// canonical decimal string, so the value is never negative. Subtraction is
/// checked and throws on underflow.
class Natural {
public:
    using Rep = boost::multiprecision::cpp_int;

    Natural() = default;
    Natural(std::uint64_t value) : value_(value) {}  // NOLINT(google-explicit-constructor)

    /// Parses a decimal string of ASCII digits. Leading zeros are accepted,
    /// signs, whitespace and an empty string are not.
    static Natural parse(std::string_view text);

    /// Rejects negative representations.
    static Natural from_rep(Rep value);

    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] const Rep& rep() const noexcept { return value_; }

    [[nodiscard]] bool is_zero() const noexcept { return value_.is_zero(); }
    [[nodiscard]] bool fits_u64() const noexcept;
    [[nodiscard]] std::optional<std::uint64_t> to_u64() const noexcept;

    /// Number of significant bits; 0 for zero.
    [[nodiscard]] std::size_t bit_length() const noexcept;

    /// Divides in place by a small divisor and returns the remainder.
    std::uint64_t divmod_small(std::uint64_t divisor);

    [[nodiscard]] static Natural pow(const Natural& base, std::uint32_t exponent);

    Natural& operator+=(const Natural& rhs) {
        value_ += rhs.value_;
        return *this;
    }
    Natural& operator*=(const Natural& rhs) {
        value_ *= rhs.value_;
        return *this;
    }
    Natural& operator-=(const Natural& rhs);

    friend Natural operator+(Natural lhs, const Natural& rhs) { return lhs += rhs; }
    friend Natural operator*(Natural lhs, const Natural& rhs) { return lhs *= rhs; }
    friend Natural operator-(Natural lhs, const Natural& rhs) { return lhs -= rhs; }

    friend bool operator==(const Natural& a, const Natural& b) noexcept {
        return a.value_ == b.value_;
    }
    friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) noexcept {
        const int c = a.value_.compare(b.value_);
        if (c < 0) {
            return std::strong_ordering::less;
        }
        if (c > 0) {
            return std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Natural& n);

private:
    explicit Natural(Rep value, int /*tag*/) : value_(std::move(value)) {}

    Rep value_;
};

}  // namespace numgrid

template <>
struct std::hash<numgrid::Natural> {
    std::size_t operator()(const numgrid::Natural& n) const noexcept;
};
