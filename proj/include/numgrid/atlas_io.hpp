// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "numgrid/digitmap.hpp"
#include "numgrid/dynamics.hpp"

namespace numgrid {

inline constexpr std::string_view kToolVersion = "numgrid 1.0.0";

class AtlasCacheError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Canonical JSON record of an atlas: keys in alphabetical order, Naturals as
/// decimal strings, fixed points ascending, cycles ordered by minimum member.
/// The classification table is not stored.
[[nodiscard]] std::string serialize_atlas(const AttractorAtlas& atlas);

/// Parses and re-validates a record for `sys`: p0 and the brute bound must
/// match their recomputed values, every fixed point and cycle must be a
/// genuine orbit of f, and attractors must be disjoint. Throws AtlasCacheError.
[[nodiscard]] AttractorAtlas deserialize_atlas(std::string_view text, const DigitSystem& sys);

/// "atlas-b<base>-e<exponent>.json"
[[nodiscard]] std::string atlas_cache_file_name(const DigitSystem& sys);

}  // namespace numgrid
