// SPDX-License-Identifier: Apache-2.0
#include "kernels_impl.hpp"

#include <algorithm>

namespace numgrid::kernels::detail {

void minmax_rows_scalar(std::span<std::int64_t> top, std::span<std::int64_t> bottom) {
    const std::size_t n = top.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t a = top[i];
        const std::int64_t b = bottom[i];
        top[i] = std::min(a, b);
        bottom[i] = std::max(a, b);
    }
}

void digit_power_sums_scalar(std::uint64_t first, std::span<std::uint64_t> out,
                             std::uint32_t base, const std::uint64_t* powers) {
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint64_t v = first + i;
        std::uint64_t sum = 0;
        while (v != 0) {
            sum += powers[v % base];
            v /= base;
        }
        out[i] = sum;
    }
}

}  // namespace numgrid::kernels::detail
