// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "numgrid/digitmap.hpp"
#include "numgrid/dynamics.hpp"
#include "numgrid/natural.hpp"

namespace numgrid {

/// Raised when the machine-checked argument breaks, or when the certified
/// range is too large to enumerate.
class CertificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Largest brute bound enumerate_attractors will tabulate.
inline constexpr std::uint64_t kMaxTabulatedBound = std::uint64_t{1} << 26;

/// Least p0 >= 2 with (b-1)^e * p < b^(p-1) for every p >= p0.
///
/// The scan stops at the first p satisfying the inequality and then checks
/// the inductive step (b-1)^e <= (b-1) * b^(p-1), which carries the
/// inequality from p to p + 1:
///   (b-1)^e (p+1) < b^(p-1) + (b-1)^e <= b^(p-1) + (b-1) b^(p-1) = b^p.
[[nodiscard]] std::uint32_t digit_reduction_threshold(const DigitSystem& sys);

/// max(b^(p0-1) - 1, (b-1)^e * (p0-1)). Every n <= B satisfies f(n) <= B:
/// numbers below b^(p0-1) have at most p0-1 digits, and numbers with p >= p0
/// digits land strictly below b^(p-1) <= n.
[[nodiscard]] Natural brute_bound(const DigitSystem& sys, std::uint32_t p0);

struct EnumerateOptions {
    unsigned workers = 1;
};

/// Exhaustive memoized iteration of f over [0, B]. Throws CertificationError
/// if B exceeds kMaxTabulatedBound or an orbit leaves [0, B]. The result does
/// not depend on the worker count.
[[nodiscard]] AttractorAtlas enumerate_attractors(const DigitSystem& sys,
                                                  const EnumerateOptions& options = {});

struct VerificationReport {
    bool ok = true;
    std::string stage;
    std::uint64_t checked = 0;
    std::uint64_t max_transient = 0;
    std::optional<Natural> counterexample;
    std::string message;

    /// verify_range: f(n) < n held for every checked n.
    bool all_descend = true;
    /// three_digit_identity_check: least n - f(n) over [100, 999].
    std::optional<std::uint64_t> min_gap;
};

struct VerifyOptions {
    unsigned workers = 1;
    /// Per-value step budget; default_max_steps when unset.
    std::optional<std::uint64_t> max_steps;
};

/// Iterates f from every n in [lo, hi] until an atlas member is hit.
[[nodiscard]] VerificationReport verify_range(const DigitSystem& sys, const AttractorAtlas& atlas,
                                              const Natural& lo, const Natural& hi,
                                              const VerifyOptions& options = {});

/// Checks f(n) <= B for all n in [0, B].
[[nodiscard]] VerificationReport forward_invariance_check(const DigitSystem& sys, const Natural& bound);

/// Base 10, exponent 2: for n = 100a + 10b + c in [100, 999], checks
/// n - f(n) = a(100-a) + b(10-b) + c - c^2, a(100-a) >= 99, b(10-b) >= 0 and
/// n - f(n) >= 18.
[[nodiscard]] VerificationReport three_digit_identity_check();

/// (b-1)^e * p < b^(p-1) for every p in [p0, p_max], in exact arithmetic.
/// Also records whether p0 - 1 fails (minimality) in the message.
[[nodiscard]] VerificationReport threshold_inequality_check(const DigitSystem& sys, std::uint32_t p_max);

}  // namespace numgrid
