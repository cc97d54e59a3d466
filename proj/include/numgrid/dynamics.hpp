// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "numgrid/digitmap.hpp"
#include "numgrid/natural.hpp"

namespace numgrid {

class CycleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The atlas was built for a different (base, exponent).
class ConfigurationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A periodic orbit of f in f-order, rotated so that it starts at its minimum.
/// A fixed point is a cycle of length 1.
class Cycle {
public:
    [[nodiscard]] const std::vector<Natural>& members() const noexcept { return members_; }
    [[nodiscard]] std::size_t length() const noexcept { return members_.size(); }
    [[nodiscard]] const Natural& minimum() const noexcept { return members_.front(); }
    [[nodiscard]] bool is_fixed_point() const noexcept { return members_.size() == 1; }
    [[nodiscard]] bool contains(const Natural& n) const;

    friend bool operator==(const Cycle&, const Cycle&) = default;
    /// Orders by minimum member, which is how atlases list their attractors.
    friend bool operator<(const Cycle& a, const Cycle& b) { return a.members_ < b.members_; }

private:
    friend Cycle canonicalize_cycle(const std::vector<Natural>& raw, const DigitSystem& sys);
    explicit Cycle(std::vector<Natural> members) : members_(std::move(members)) {}

    std::vector<Natural> members_;
};

/// Rotates a cycle to start at its minimum. Throws CycleError unless raw is
/// nonempty with distinct members, raw[i+1] = f(raw[i]) and f(raw.back()) = raw.front().
[[nodiscard]] Cycle canonicalize_cycle(const std::vector<Natural>& raw, const DigitSystem& sys);

/// Orbit of `start` up to (excluding) its first repeated value; f(steps.back())
/// is steps[entry_index].
struct Trajectory {
    Natural start;
    std::vector<Natural> steps;
    std::size_t entry_index = 0;
    Cycle terminal;

    [[nodiscard]] std::size_t transient_length() const noexcept { return entry_index; }
    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// The step budget ran out before the orbit repeated or reached an attractor.
class StepBudgetExceeded : public std::runtime_error {
public:
    StepBudgetExceeded(const std::string& what, std::vector<Natural> partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}

    [[nodiscard]] const std::vector<Natural>& partial_orbit() const noexcept { return partial_; }

private:
    std::vector<Natural> partial_;
};

/// Iterates f from n with at most max_steps applications of f.
[[nodiscard]] Trajectory step_until_repeat(const Natural& n, const DigitSystem& sys,
                                           std::uint64_t max_steps);

/// max(1000, 10 * digit_count(n) + brute_bound), saturating at 2^64 - 1.
[[nodiscard]] std::uint64_t default_max_steps(const Natural& n, const DigitSystem& sys,
                                              const Natural& brute_bound);

struct AttractorId {
    std::uint32_t index = 0;
    friend bool operator==(AttractorId, AttractorId) = default;
};

struct DescentCertificate {
    DigitSystem system;
    std::uint32_t p0 = 2;
    Natural brute_bound;
    std::uint64_t max_transient = 0;

    friend bool operator==(const DescentCertificate&, const DescentCertificate&) = default;
};

/// Complete set of attractors of f for one system, with the constants that
/// make the set provably complete. Attractors are ordered by minimum member;
/// AttractorId indexes that order.
class AttractorAtlas {
public:
    /// Throws CycleError if the attractors overlap. The classification table,
    /// when given, must cover [0, brute_bound].
    AttractorAtlas(DescentCertificate certificate, std::vector<Cycle> attractors,
                   std::optional<std::vector<std::uint32_t>> classification_table = std::nullopt);

    [[nodiscard]] const DigitSystem& system() const noexcept { return certificate_.system; }
    [[nodiscard]] const DescentCertificate& certificate() const noexcept { return certificate_; }
    [[nodiscard]] const std::vector<Cycle>& attractors() const noexcept { return attractors_; }
    [[nodiscard]] const Cycle& attractor(AttractorId id) const { return attractors_.at(id.index); }

    [[nodiscard]] std::vector<Natural> fixed_points() const;
    [[nodiscard]] std::vector<Cycle> cycles() const;

    /// Attractor containing n, if n is a member of one.
    [[nodiscard]] std::optional<AttractorId> find_member(const Natural& n) const;
    [[nodiscard]] std::optional<AttractorId> find_member(std::uint64_t n) const;

    [[nodiscard]] const std::optional<std::vector<std::uint32_t>>& classification_table() const noexcept {
        return table_;
    }

    /// Copy with one attractor removed and no classification table. Only
    /// meaningful for negative tests: the result is no longer complete.
    [[nodiscard]] AttractorAtlas without(AttractorId id) const;

    friend bool operator==(const AttractorAtlas& a, const AttractorAtlas& b) {
        return a.certificate_ == b.certificate_ && a.attractors_ == b.attractors_;
    }

private:
    DescentCertificate certificate_;
    std::vector<Cycle> attractors_;
    std::unordered_map<Natural, std::uint32_t> members_;
    std::unordered_map<std::uint64_t, std::uint32_t> word_members_;
    std::optional<std::vector<std::uint32_t>> table_;
};

struct Classification {
    AttractorId id;
    /// Applications of f before the orbit hit an attractor member.
    std::uint64_t steps = 0;
};

/// Iterates f from n until the value is a member of an atlas attractor.
/// With use_table, values inside the certified range are looked up directly.
/// Throws ConfigurationError on a system mismatch and StepBudgetExceeded when
/// max_steps runs out, which only happens for an incomplete atlas.
[[nodiscard]] Classification classify_detailed(const Natural& n, const DigitSystem& sys,
                                               const AttractorAtlas& atlas,
                                               std::optional<std::uint64_t> max_steps = std::nullopt,
                                               bool use_table = true);

[[nodiscard]] AttractorId classify(const Natural& n, const DigitSystem& sys,
                                   const AttractorAtlas& atlas);

/// True iff n is attracted to the fixed point 1.
[[nodiscard]] bool is_happy(const Natural& n, const DigitSystem& sys, const AttractorAtlas& atlas);

}  // namespace numgrid
