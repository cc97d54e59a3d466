// SPDX-License-Identifier: Apache-2.0
#include "numgrid/certify.hpp"

#include <algorithm>
#include <limits>
#include <thread>
#include <vector>

#include "numgrid/kernels.hpp"

namespace numgrid {

namespace {

constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint32_t kInProgress = kUnvisited - 1;

bool reduces_digits(const Natural& max_power, const Natural& base, std::uint32_t p) {
    return max_power * Natural(p) < Natural::pow(base, p - 1);
}

// Splits [0, count) into at most `workers` contiguous pieces and runs fn on each.
template <typename Fn>
void parallel_chunks(std::uint64_t count, unsigned workers, Fn&& fn) {
    workers = std::max(1u, workers);
    const std::uint64_t pieces = std::min<std::uint64_t>(workers, std::max<std::uint64_t>(count, 1));
    if (pieces <= 1) {
        fn(std::uint64_t{0}, count, std::size_t{0});
        return;
    }
    const std::uint64_t step = (count + pieces - 1) / pieces;
    std::vector<std::jthread> threads;
    for (std::uint64_t k = 0; k < pieces; ++k) {
        const std::uint64_t begin = k * step;
        const std::uint64_t end = std::min(count, begin + step);
        if (begin >= end) {
            break;
        }
        threads.emplace_back([&fn, begin, end, k] { fn(begin, end, static_cast<std::size_t>(k)); });
    }
}

}  // namespace

std::uint32_t digit_reduction_threshold(const DigitSystem& sys) {
    const Natural& max_power = sys.max_digit_power();
    const Natural base(sys.base());
    std::uint32_t p = 2;
    while (!reduces_digits(max_power, base, p)) {
        ++p;
    }
    // Inductive step at p; it then holds for every larger p as well.
    if (max_power > Natural(sys.base() - 1) * Natural::pow(base, p - 1) ||
        !reduces_digits(max_power, base, p + 1)) {
        throw CertificationError("digit reduction threshold is not self-sustaining at p = " +
                                 std::to_string(p));
    }
    return p;
}

Natural brute_bound(const DigitSystem& sys, std::uint32_t p0) {
    const Natural low_range = Natural::pow(Natural(sys.base()), p0 - 1) - Natural(1);
    const Natural image_cap = sys.max_digit_power() * Natural(p0 - 1);
    return std::max(low_range, image_cap);
}

AttractorAtlas enumerate_attractors(const DigitSystem& sys, const EnumerateOptions& options) {
    const std::uint32_t p0 = digit_reduction_threshold(sys);
    const Natural bound = brute_bound(sys, p0);
    const auto bound_word = bound.to_u64();
    if (!bound_word || *bound_word > kMaxTabulatedBound) {
        throw CertificationError("brute bound " + bound.to_string() + " exceeds the tabulation limit " +
                                 std::to_string(kMaxTabulatedBound));
    }
    const auto powers = sys.word_powers();
    if (!powers) {
        throw CertificationError("digit powers do not fit in machine words");
    }
    const std::uint64_t count = *bound_word + 1;

    std::vector<std::uint64_t> image(count);
    const auto& kernel = kernels::active();
    parallel_chunks(count, options.workers, [&](std::uint64_t begin, std::uint64_t end, std::size_t) {
        kernel.digit_power_sums(begin, std::span(image).subspan(begin, end - begin), sys.base(),
                                powers->data());
    });
    for (std::uint64_t n = 0; n < count; ++n) {
        if (image[n] > *bound_word) {
            throw CertificationError("f(" + std::to_string(n) + ") = " + std::to_string(image[n]) +
                                     " escapes [0, " + bound.to_string() + "]");
        }
    }

    // state[n]: kUnvisited, kInProgress, or the discovery index of n's attractor.
    // depth[n]: transient length once classified, path position while in progress.
    std::vector<std::uint32_t> state(count, kUnvisited);
    std::vector<std::uint32_t> depth(count, 0);
    std::vector<std::vector<std::uint64_t>> found;
    std::vector<std::uint64_t> path;

    for (std::uint64_t start = 0; start < count; ++start) {
        if (state[start] != kUnvisited) {
            continue;
        }
        path.clear();
        std::uint64_t cur = start;
        while (state[cur] == kUnvisited) {
            state[cur] = kInProgress;
            depth[cur] = static_cast<std::uint32_t>(path.size());
            path.push_back(cur);
            cur = image[cur];
        }

        std::size_t tail_end = path.size();
        std::uint32_t id = 0;
        std::uint32_t base_depth = 0;
        if (state[cur] == kInProgress) {
            const std::size_t entry = depth[cur];
            id = static_cast<std::uint32_t>(found.size());
            found.emplace_back(path.begin() + static_cast<std::ptrdiff_t>(entry), path.end());
            for (std::size_t i = entry; i < path.size(); ++i) {
                state[path[i]] = id;
                depth[path[i]] = 0;
            }
            tail_end = entry;
        } else {
            id = state[cur];
            base_depth = depth[cur];
        }
        for (std::size_t i = 0; i < tail_end; ++i) {
            state[path[i]] = id;
            depth[path[i]] = base_depth + static_cast<std::uint32_t>(tail_end - i);
        }
    }

    std::vector<Cycle> cycles;
    cycles.reserve(found.size());
    for (const auto& loop : found) {
        std::vector<Natural> members(loop.begin(), loop.end());
        cycles.push_back(canonicalize_cycle(members, sys));
    }

    // Renumber from discovery order to the atlas order (by minimum member).
    std::vector<std::uint32_t> order(cycles.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return cycles[a] < cycles[b]; });
    std::vector<std::uint32_t> rank(cycles.size());
    for (std::uint32_t r = 0; r < order.size(); ++r) {
        rank[order[r]] = r;
    }
    for (auto& s : state) {
        s = rank[s];
    }

    const std::uint64_t max_transient = *std::max_element(depth.begin(), depth.end());
    DescentCertificate cert{sys, p0, bound, max_transient};
    return AttractorAtlas(std::move(cert), std::move(cycles), std::move(state));
}

VerificationReport verify_range(const DigitSystem& sys, const AttractorAtlas& atlas, const Natural& lo,
                                const Natural& hi, const VerifyOptions& options) {
    VerificationReport report;
    report.stage = "verify_range";
    if (lo > hi) {
        throw std::invalid_argument("verify_range: lo > hi");
    }

    auto check_one = [&](const Natural& n, VerificationReport& out) {
        try {
            const Classification c = classify_detailed(n, sys, atlas, options.max_steps, false);
            out.max_transient = std::max(out.max_transient, c.steps);
            if (!(digit_power_sum(n, sys) < n)) {
                out.all_descend = false;
            }
            ++out.checked;
            return true;
        } catch (const StepBudgetExceeded& e) {
            out.ok = false;
            out.counterexample = n;
            out.message = e.what();
            return false;
        }
    };

    const auto lo_word = lo.to_u64();
    const auto hi_word = hi.to_u64();
    if (lo_word && hi_word && *hi_word < std::numeric_limits<std::uint64_t>::max()) {
        const std::uint64_t count = *hi_word - *lo_word + 1;
        const unsigned workers = std::max(1u, options.workers);
        std::vector<VerificationReport> partial(workers);
        parallel_chunks(count, workers, [&](std::uint64_t begin, std::uint64_t end, std::size_t k) {
            for (std::uint64_t i = begin; i < end; ++i) {
                if (!check_one(Natural(*lo_word + i), partial[k])) {
                    break;
                }
            }
        });
        // Chunks are in range order; stop at the first failing one so the
        // report only covers the prefix before the first counterexample.
        for (const VerificationReport& p : partial) {
            report.checked += p.checked;
            report.max_transient = std::max(report.max_transient, p.max_transient);
            report.all_descend = report.all_descend && p.all_descend;
            if (!p.ok) {
                report.ok = false;
                report.counterexample = p.counterexample;
                report.message = p.message;
                break;
            }
        }
    } else {
        for (Natural n = lo; n <= hi; n += Natural(1)) {
            if (!check_one(n, report)) {
                break;
            }
        }
    }

    if (report.ok) {
        report.message = std::to_string(report.checked) + " values in [" + lo.to_string() + ", " +
                         hi.to_string() + "] reach the atlas";
    } else {
        report.message = "n = " + report.counterexample->to_string() + " never reaches the atlas (" +
                         report.message + ")";
    }
    return report;
}

VerificationReport forward_invariance_check(const DigitSystem& sys, const Natural& bound) {
    VerificationReport report;
    report.stage = "forward_invariance";
    const auto bound_word = bound.to_u64();
    const auto powers = sys.word_powers();
    if (bound_word && powers && *bound_word < std::numeric_limits<std::uint64_t>::max()) {
        const std::uint64_t count = *bound_word + 1;
        // Sweep in blocks to keep the buffer small for large bounds.
        constexpr std::uint64_t kBlock = 1 << 16;
        std::vector<std::uint64_t> image(kBlock);
        const auto& kernel = kernels::active();
        for (std::uint64_t first = 0; first < count; first += kBlock) {
            const std::uint64_t len = std::min(kBlock, count - first);
            kernel.digit_power_sums(first, std::span(image).first(len), sys.base(), powers->data());
            for (std::uint64_t i = 0; i < len; ++i) {
                if (image[i] > *bound_word) {
                    report.ok = false;
                    report.counterexample = Natural(first + i);
                    report.message = "f(" + std::to_string(first + i) + ") = " + std::to_string(image[i]) +
                                     " exceeds " + bound.to_string();
                    return report;
                }
                ++report.checked;
            }
        }
    } else {
        for (Natural n; n <= bound; n += Natural(1)) {
            const Natural image = digit_power_sum(n, sys);
            if (image > bound) {
                report.ok = false;
                report.counterexample = n;
                report.message = "f(" + n.to_string() + ") = " + image.to_string() + " exceeds " +
                                 bound.to_string();
                return report;
            }
            ++report.checked;
        }
    }
    report.message = "f maps [0, " + bound.to_string() + "] into itself (" +
                     std::to_string(report.checked) + " values)";
    return report;
}

VerificationReport three_digit_identity_check() {
    const DigitSystem sys(10, 2);
    VerificationReport report;
    report.stage = "three_digit_identity";
    std::int64_t min_gap = std::numeric_limits<std::int64_t>::max();

    auto fail = [&](std::int64_t n, const std::string& what) {
        report.ok = false;
        report.counterexample = Natural(static_cast<std::uint64_t>(n));
        report.message = what + " fails at n = " + std::to_string(n);
        return report;
    };

    for (std::int64_t a = 1; a <= 9; ++a) {
        for (std::int64_t b = 0; b <= 9; ++b) {
            for (std::int64_t c = 0; c <= 9; ++c) {
                const std::int64_t n = 100 * a + 10 * b + c;
                const auto image =
                    static_cast<std::int64_t>(*digit_power_sum_u64(static_cast<std::uint64_t>(n), sys));
                const std::int64_t gap = n - image;
                const std::int64_t lead = a * (100 - a);
                const std::int64_t middle = b * (10 - b);
                if (gap != lead + middle + c - c * c) {
                    return fail(n, "identity n - f(n) = a(100-a) + b(10-b) + c - c^2");
                }
                if (lead < 99) {
                    return fail(n, "a(100-a) >= 99");
                }
                if (middle < 0) {
                    return fail(n, "b(10-b) >= 0");
                }
                if (gap < 18) {
                    return fail(n, "n - f(n) >= 18");
                }
                min_gap = std::min(min_gap, gap);
                ++report.checked;
            }
        }
    }
    report.min_gap = static_cast<std::uint64_t>(min_gap);
    report.message = std::to_string(report.checked) + " three-digit values satisfy the identity; min n - f(n) = " +
                     std::to_string(min_gap) + ", so f(n) <= n - 1";
    return report;
}

VerificationReport threshold_inequality_check(const DigitSystem& sys, std::uint32_t p_max) {
    VerificationReport report;
    report.stage = "threshold_inequality";
    const std::uint32_t p0 = digit_reduction_threshold(sys);
    if (p_max < p0) {
        throw std::invalid_argument("p_max must be >= p0 = " + std::to_string(p0));
    }
    const Natural base(sys.base());
    for (std::uint32_t p = p0; p <= p_max; ++p) {
        if (!reduces_digits(sys.max_digit_power(), base, p)) {
            report.ok = false;
            report.counterexample = Natural(p);
            report.message = "(b-1)^e * p < b^(p-1) fails at p = " + std::to_string(p);
            return report;
        }
        ++report.checked;
    }
    const bool minimal = p0 == 2 || !reduces_digits(sys.max_digit_power(), base, p0 - 1);
    if (!minimal) {
        report.ok = false;
        report.counterexample = Natural(p0 - 1);
        report.message = "threshold is not minimal: inequality already holds at p = " + std::to_string(p0 - 1);
        return report;
    }
    report.message = "(b-1)^e * p < b^(p-1) for p in [" + std::to_string(p0) + ", " + std::to_string(p_max) +
                     "]" + (p0 > 2 ? "; fails at p = " + std::to_string(p0 - 1) : std::string());
    return report;
}

}  // namespace numgrid
