// SPDX-License-Identifier: Apache-2.0
#include "kernels_impl.hpp"

#include <cstdlib>
#include <string_view>

namespace numgrid::kernels {

namespace {

const KernelSet kScalar{"scalar", &detail::minmax_rows_scalar, &detail::digit_power_sums_scalar};

#if defined(NUMGRID_HAVE_AVX2)
const KernelSet kAvx2{"avx2", &detail::minmax_rows_avx2, &detail::digit_power_sums_avx2};
#endif

const KernelSet& select() {
    if (const char* forced = std::getenv("NUMGRID_KERNELS")) {
        if (std::string_view(forced) == "scalar") {
            return kScalar;
        }
    }
    if (const KernelSet* k = avx2()) {
        return *k;
    }
    return kScalar;
}

}  // namespace

const KernelSet& scalar() { return kScalar; }

const KernelSet* avx2() {
#if defined(NUMGRID_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const KernelSet& active() {
    static const KernelSet& chosen = select();
    return chosen;
}

}  // namespace numgrid::kernels
