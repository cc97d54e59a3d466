// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>

// Data-parallel inner loops, with a portable scalar reference and optional
// AVX2 variants. Callers go through active(); tests compare every available
// variant against scalar().

namespace numgrid::kernels {

struct KernelSet {
    const char* name;

    /// Column-wise compare-exchange of two equal-length rows, in place:
    /// top[i] <- min(top[i], bottom[i]), bottom[i] <- max(top[i], bottom[i]).
    void (*minmax_rows)(std::span<std::int64_t> top, std::span<std::int64_t> bottom);

    /// out[i] <- sum of powers[d] over the base-`base` digits d of (first + i).
    /// powers must hold `base` entries with powers[0] == 0.
    void (*digit_power_sums)(std::uint64_t first, std::span<std::uint64_t> out,
                             std::uint32_t base, const std::uint64_t* powers);
};

const KernelSet& scalar();

/// nullptr when the build or the host lacks AVX2.
const KernelSet* avx2();

/// AVX2 when available, unless NUMGRID_KERNELS=scalar is set in the environment.
const KernelSet& active();

}  // namespace numgrid::kernels
