// SPDX-License-Identifier: Apache-2.0
#include "numgrid/natural.hpp"

#include <limits>
#include <ostream>

#include <boost/container_hash/hash.hpp>

namespace numgrid {

Natural Natural::parse(std::string_view text) {
    if (text.empty()) {
        throw NaturalError("empty string is not a natural number");
    }
    for (char ch : text) {
        if (ch < '0' || ch > '9') {
            throw NaturalError("not a natural number: '" + std::string(text) + "'");
        }
    }
    // Feed chunks of 18 digits so that each multiply-add stays in one limb.
    Rep value = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t len = std::min<std::size_t>(18, text.size() - pos);
        std::uint64_t chunk = 0;
        std::uint64_t scale = 1;
        for (std::size_t i = 0; i < len; ++i) {
            chunk = chunk * 10 + static_cast<std::uint64_t>(text[pos + i] - '0');
            scale *= 10;
        }
        value *= scale;
        value += chunk;
        pos += len;
    }
    return Natural(std::move(value), 0);
}

Natural Natural::from_rep(Rep value) {
    if (value.sign() < 0) {
        throw NaturalError("negative value is not a natural number");
    }
    return Natural(std::move(value), 0);
}

std::string Natural::to_string() const { return value_.str(); }

bool Natural::fits_u64() const noexcept {
    return value_ <= std::numeric_limits<std::uint64_t>::max();
}

std::optional<std::uint64_t> Natural::to_u64() const noexcept {
    if (!fits_u64()) {
        return std::nullopt;
    }
    return value_.convert_to<std::uint64_t>();
}

std::size_t Natural::bit_length() const noexcept {
    if (value_.is_zero()) {
        return 0;
    }
    return boost::multiprecision::msb(value_) + 1;
}

std::uint64_t Natural::divmod_small(std::uint64_t divisor) {
    if (divisor == 0) {
        throw std::domain_error("division by zero");
    }
    Rep quotient;
    Rep remainder;
    boost::multiprecision::divide_qr(value_, Rep(divisor), quotient, remainder);
    value_ = std::move(quotient);
    return remainder.convert_to<std::uint64_t>();
}

Natural Natural::pow(const Natural& base, std::uint32_t exponent) {
    return Natural(boost::multiprecision::pow(base.value_, exponent), 0);
}

Natural& Natural::operator-=(const Natural& rhs) {
    if (value_ < rhs.value_) {
        throw NaturalError("natural subtraction underflow");
    }
    value_ -= rhs.value_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Natural& n) { return os << n.to_string(); }

}  // namespace numgrid

std::size_t std::hash<numgrid::Natural>::operator()(const numgrid::Natural& n) const noexcept {
    return boost::hash<numgrid::Natural::Rep>{}(n.rep());
}
