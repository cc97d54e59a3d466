// SPDX-License-Identifier: Apache-2.0
#include "numgrid/dynamics.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_set>

namespace numgrid {

bool Cycle::contains(const Natural& n) const {
    return std::find(members_.begin(), members_.end(), n) != members_.end();
}

Cycle canonicalize_cycle(const std::vector<Natural>& raw, const DigitSystem& sys) {
    if (raw.empty()) {
        throw CycleError("cycle must be nonempty");
    }
    std::unordered_set<Natural> seen;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!seen.insert(raw[i]).second) {
            throw CycleError("cycle member " + raw[i].to_string() + " repeats");
        }
        const Natural& expected = raw[(i + 1) % raw.size()];
        if (digit_power_sum(raw[i], sys) != expected) {
            throw CycleError("f(" + raw[i].to_string() + ") != " + expected.to_string());
        }
    }
    const auto min_it = std::min_element(raw.begin(), raw.end());
    std::vector<Natural> rotated;
    rotated.reserve(raw.size());
    rotated.insert(rotated.end(), min_it, raw.end());
    rotated.insert(rotated.end(), raw.begin(), min_it);
    return Cycle(std::move(rotated));
}

Trajectory step_until_repeat(const Natural& n, const DigitSystem& sys, std::uint64_t max_steps) {
    if (max_steps < 1) {
        throw std::invalid_argument("max_steps must be >= 1");
    }
    std::vector<Natural> steps{n};
    std::unordered_map<Natural, std::size_t> position{{n, 0}};
    for (std::uint64_t applied = 0; applied < max_steps; ++applied) {
        Natural next = digit_power_sum(steps.back(), sys);
        if (auto it = position.find(next); it != position.end()) {
            const std::size_t entry = it->second;
            std::vector<Natural> loop(steps.begin() + static_cast<std::ptrdiff_t>(entry), steps.end());
            Cycle terminal = canonicalize_cycle(loop, sys);
            return Trajectory{n, std::move(steps), entry, std::move(terminal)};
        }
        position.emplace(next, steps.size());
        steps.push_back(std::move(next));
    }
    throw StepBudgetExceeded("no repeat within " + std::to_string(max_steps) + " steps from " +
                                 n.to_string(),
                             std::move(steps));
}

std::uint64_t default_max_steps(const Natural& n, const DigitSystem& sys, const Natural& brute_bound) {
    const Natural candidate = Natural(10) * Natural(digit_count(n, sys)) + brute_bound;
    const std::uint64_t steps = candidate.to_u64().value_or(std::numeric_limits<std::uint64_t>::max());
    return std::max<std::uint64_t>(steps, 1000);
}

AttractorAtlas::AttractorAtlas(DescentCertificate certificate, std::vector<Cycle> attractors,
                               std::optional<std::vector<std::uint32_t>> classification_table)
    : certificate_(std::move(certificate)),
      attractors_(std::move(attractors)),
      table_(std::move(classification_table)) {
    std::sort(attractors_.begin(), attractors_.end());
    for (std::uint32_t id = 0; id < attractors_.size(); ++id) {
        for (const Natural& m : attractors_[id].members()) {
            if (!members_.emplace(m, id).second) {
                throw CycleError("attractors share member " + m.to_string());
            }
            if (auto w = m.to_u64()) {
                word_members_.emplace(*w, id);
            }
        }
    }
    if (table_) {
        const auto bound = certificate_.brute_bound.to_u64();
        if (!bound || table_->size() != *bound + 1) {
            throw std::invalid_argument("classification table does not cover [0, brute_bound]");
        }
    }
}

std::vector<Natural> AttractorAtlas::fixed_points() const {
    std::vector<Natural> out;
    for (const Cycle& c : attractors_) {
        if (c.is_fixed_point()) {
            out.push_back(c.minimum());
        }
    }
    return out;
}

std::vector<Cycle> AttractorAtlas::cycles() const {
    std::vector<Cycle> out;
    for (const Cycle& c : attractors_) {
        if (!c.is_fixed_point()) {
            out.push_back(c);
        }
    }
    return out;
}

std::optional<AttractorId> AttractorAtlas::find_member(const Natural& n) const {
    if (auto it = members_.find(n); it != members_.end()) {
        return AttractorId{it->second};
    }
    return std::nullopt;
}

std::optional<AttractorId> AttractorAtlas::find_member(std::uint64_t n) const {
    if (auto it = word_members_.find(n); it != word_members_.end()) {
        return AttractorId{it->second};
    }
    return std::nullopt;
}

AttractorAtlas AttractorAtlas::without(AttractorId id) const {
    std::vector<Cycle> kept;
    for (std::uint32_t i = 0; i < attractors_.size(); ++i) {
        if (i != id.index) {
            kept.push_back(attractors_[i]);
        }
    }
    return AttractorAtlas(certificate_, std::move(kept));
}

Classification classify_detailed(const Natural& n, const DigitSystem& sys, const AttractorAtlas& atlas,
                                 std::optional<std::uint64_t> max_steps, bool use_table) {
    if (!(atlas.system() == sys)) {
        throw ConfigurationError("atlas is for base " + std::to_string(atlas.system().base()) +
                                 ", exponent " + std::to_string(atlas.system().exponent()));
    }
    const std::uint64_t budget =
        max_steps.value_or(default_max_steps(n, sys, atlas.certificate().brute_bound));
    const auto& table = atlas.classification_table();
    const bool word_path = sys.word_powers().has_value();

    Natural current = n;
    std::uint64_t steps = 0;

    // Wide values shrink to machine words after a few steps.
    while (!(word_path && current.fits_u64())) {
        if (auto id = atlas.find_member(current)) {
            return {*id, steps};
        }
        if (steps == budget) {
            throw StepBudgetExceeded("no attractor reached from " + n.to_string(), {current});
        }
        current = digit_power_sum(current, sys);
        ++steps;
    }

    std::uint64_t value = *current.to_u64();
    for (;;) {
        if (use_table && table && value < table->size()) {
            return {AttractorId{(*table)[value]}, steps};
        }
        if (auto id = atlas.find_member(value)) {
            return {*id, steps};
        }
        if (steps == budget) {
            throw StepBudgetExceeded("no attractor reached from " + n.to_string(), {Natural(value)});
        }
        value = *digit_power_sum_u64(value, sys);
        ++steps;
    }
}

AttractorId classify(const Natural& n, const DigitSystem& sys, const AttractorAtlas& atlas) {
    return classify_detailed(n, sys, atlas).id;
}

bool is_happy(const Natural& n, const DigitSystem& sys, const AttractorAtlas& atlas) {
    const auto one = atlas.find_member(Natural(1));
    if (!one || !atlas.attractor(*one).is_fixed_point()) {
        throw ConfigurationError("atlas does not contain the fixed point 1");
    }
    return classify(n, sys, atlas) == *one;
}

}  // namespace numgrid
