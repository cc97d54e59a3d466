// SPDX-License-Identifier: Apache-2.0
// Compiled with -mavx2; only reached after a runtime CPU check.

#include "kernels_impl.hpp"

#include <immintrin.h>

namespace numgrid::kernels::detail {

void minmax_rows_avx2(std::span<std::int64_t> top, std::span<std::int64_t> bottom) {
    std::int64_t* a = top.data();
    std::int64_t* b = bottom.data();
    std::size_t n = top.size();

    while (n >= 8) {
        const __m256i a0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a));
        const __m256i a1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + 4));
        const __m256i b0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b));
        const __m256i b1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + 4));

        // No 64-bit min/max below AVX-512: compare then blend.
        const __m256i gt0 = _mm256_cmpgt_epi64(a0, b0);
        const __m256i gt1 = _mm256_cmpgt_epi64(a1, b1);

        _mm256_storeu_si256(reinterpret_cast<__m256i*>(a), _mm256_blendv_epi8(a0, b0, gt0));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(a + 4), _mm256_blendv_epi8(a1, b1, gt1));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(b), _mm256_blendv_epi8(b0, a0, gt0));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(b + 4), _mm256_blendv_epi8(b1, a1, gt1));

        a += 8;
        b += 8;
        n -= 8;
    }

    if (n >= 4) {
        const __m256i a0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a));
        const __m256i b0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b));
        const __m256i gt0 = _mm256_cmpgt_epi64(a0, b0);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(a), _mm256_blendv_epi8(a0, b0, gt0));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(b), _mm256_blendv_epi8(b0, a0, gt0));
        a += 4;
        b += 4;
        n -= 4;
    }

    minmax_rows_scalar({a, n}, {b, n});
}

// Four values per vector, held as doubles: for values below 2^32 and bases up
// to 2^16, floor(x / base) in double precision is the exact integer quotient.
void digit_power_sums_avx2(std::uint64_t first, std::span<std::uint64_t> out,
                           std::uint32_t base, const std::uint64_t* powers) {
    constexpr std::uint64_t kExactLimit = std::uint64_t{1} << 32;
    if (base > (1u << 16) || first >= kExactLimit || out.size() > kExactLimit - first) {
        digit_power_sums_scalar(first, out, base, powers);
        return;
    }

    const __m256d vbase = _mm256_set1_pd(static_cast<double>(base));
    const __m256d zero = _mm256_setzero_pd();
    const __m256d lane_offsets = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    const auto* table = reinterpret_cast<const long long*>(powers);

    std::size_t i = 0;
    for (; i + 4 <= out.size(); i += 4) {
        __m256d x = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(first + i)), lane_offsets);
        __m256i acc = _mm256_setzero_si256();
        while (_mm256_movemask_pd(_mm256_cmp_pd(x, zero, _CMP_NEQ_OQ)) != 0) {
            const __m256d q = _mm256_floor_pd(_mm256_div_pd(x, vbase));
            const __m256d digit = _mm256_sub_pd(x, _mm256_mul_pd(q, vbase));
            const __m128i idx = _mm256_cvttpd_epi32(digit);
            acc = _mm256_add_epi64(acc, _mm256_i32gather_epi64(table, idx, 8));
            x = q;
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), acc);
    }
    digit_power_sums_scalar(first + i, out.subspan(i), base, powers);
}

}  // namespace numgrid::kernels::detail
