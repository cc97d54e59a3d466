// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "numgrid/kernels.hpp"

namespace numgrid::kernels::detail {

void minmax_rows_scalar(std::span<std::int64_t> top, std::span<std::int64_t> bottom);
void digit_power_sums_scalar(std::uint64_t first, std::span<std::uint64_t> out,
                             std::uint32_t base, const std::uint64_t* powers);

#if defined(NUMGRID_HAVE_AVX2)
void minmax_rows_avx2(std::span<std::int64_t> top, std::span<std::int64_t> bottom);
void digit_power_sums_avx2(std::uint64_t first, std::span<std::uint64_t> out,
                           std::uint32_t base, const std::uint64_t* powers);
#endif

}  // namespace numgrid::kernels::detail
