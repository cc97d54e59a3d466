// SPDX-License-Identifier: Apache-2.0
// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "numgrid/certify.hpp"
#include "numgrid/cli.hpp"
#include "numgrid/digitmap.hpp"
#include "numgrid/dynamics.hpp"
#include "numgrid/grid_io.hpp"
#include "numgrid/gridsort.hpp"

using namespace numgrid;

namespace {

using Clock = std::chrono::steady_clock;
using Rows = std::vector<std::vector<std::int64_t>>;

struct Outcome {
    bool ok = true;
    std::string detail;
};

void require(Outcome& o, bool cond, const std::string& what) {
    if (!cond && o.ok) {
        o.ok = false;
        o.detail = what;
    }
}

// Median wall time of `runs` executions, in milliseconds.
double median_ms(const std::function<void()>& fn, int runs = 5) {
    std::vector<double> times;
    for (int i = 0; i < runs; ++i) {
        const auto t0 = Clock::now();
        fn();
        times.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

std::string fmt_ms(double ms) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f ms", ms);
    return buf;
}

std::uint64_t naive_f(std::uint64_t n, std::uint64_t base, unsigned exponent) {
    std::uint64_t sum = 0;
    for (; n != 0; n /= base) {
        std::uint64_t term = 1;
        for (unsigned i = 0; i < exponent; ++i) {
            term *= n % base;
        }
        sum += term;
    }
    return sum;
}

// ---- criteria -------------------------------------------------------------

Outcome paper_grid() {
    Outcome o;
    const Grid t = Grid::from_rows({{1, 8, 3, 4, 8}, {0, 9, 2, 7, 14}, {20, 3, 6, 7, 7}});
    const Grid t1_expected = Grid::from_rows({{1, 3, 4, 8, 8}, {0, 2, 7, 9, 14}, {3, 6, 7, 7, 20}});
    const Grid t2_expected = Grid::from_rows({{0, 2, 4, 7, 8}, {1, 3, 7, 8, 14}, {3, 6, 7, 9, 20}});
    std::optional<Grid> t1;
    std::optional<Grid> t2;
    const double ms = median_ms([&] {
        t1 = sort_rows(t);
        t2 = sort_cols(*t1);
    });
    require(o, *t1 == t1_expected, "sort_rows(T) != T'");
    require(o, *t2 == t2_expected, "sort_cols(T') != T''");
    require(o, is_rows_sorted(*t2), "T'' rows not sorted");
    require(o, ms < 1.0, "took " + fmt_ms(ms));
    if (o.ok) {
        o.detail = "T -> T' -> T'' exact, " + fmt_ms(ms);
    }
    return o;
}

Outcome paper_map() {
    Outcome o;
    const DigitSystem sys(10, 2);
    const std::vector<Natural> cycle{4, 16, 37, 58, 89, 145, 42, 20};
    std::optional<Trajectory> orbit;
    Natural f0, f12, f308;
    const double ms = median_ms([&] {
        f0 = digit_power_sum(Natural(0), sys);
        f12 = digit_power_sum(Natural(12), sys);
        f308 = digit_power_sum(Natural(308), sys);
        orbit = step_until_repeat(Natural(4), sys, 100);
    });
    require(o, f0 == Natural(0), "f(0) != 0");
    require(o, f12 == Natural(5), "f(12) != 5");
    require(o, f308 == Natural(73), "f(308) != 73");
    require(o, orbit->steps == cycle, "orbit of 4 differs");
    require(o, orbit->terminal.members() == cycle && orbit->transient_length() == 0, "cycle of 4 differs");
    require(o, digit_power_sum(Natural(20), sys) == Natural(4), "f(20) != 4");
    require(o, ms < 1.0, "took " + fmt_ms(ms));
    if (o.ok) {
        o.detail = "f(0)=0 f(12)=5 f(308)=73, 4 -> ... -> 20 -> 4, " + fmt_ms(ms);
    }
    return o;
}

Outcome brute_force_low() {
    Outcome o;
    const DigitSystem sys(10, 2);
    const std::set<Natural> attractors{0, 1, 4, 16, 37, 58, 89, 145, 42, 20};
    std::uint64_t reached = 0;
    const double ms = median_ms([&] {
        reached = 0;
        for (std::uint64_t n = 0; n <= 99; ++n) {
            Natural m(n);
            for (int guard = 0; guard < 1000 && attractors.count(m) == 0; ++guard) {
                m = digit_power_sum(m, sys);
            }
            reached += attractors.count(m);
        }
    });
    require(o, reached == 100, std::to_string(100 - reached) + " values missed the attractor set");
    require(o, ms < 10.0, "took " + fmt_ms(ms));
    if (o.ok) {
        o.detail = "100/100 values in [0, 99] reach the attractor set, " + fmt_ms(ms);
    }
    return o;
}

Outcome three_digit_descent() {
    Outcome o;
    const DigitSystem sys(10, 2);
    std::uint64_t checked = 0;
    for (std::int64_t n = 100; n <= 999; ++n) {
        const std::int64_t a = n / 100;
        const std::int64_t b = (n / 10) % 10;
        const std::int64_t c = n % 10;
        const auto image = static_cast<std::int64_t>(*digit_power_sum(Natural(static_cast<std::uint64_t>(n)), sys).to_u64());
        require(o, image <= n - 1, "f(n) > n - 1 at n = " + std::to_string(n));
        require(o, n - image == a * (100 - a) + b * (10 - b) + c - c * c, "identity fails at " + std::to_string(n));
        ++checked;
    }
    const VerificationReport r = three_digit_identity_check();
    require(o, r.ok && r.checked == 900, "three_digit_identity_check: " + r.message);
    require(o, checked == 900, "wrong count");
    if (o.ok) {
        o.detail = "900/900 values, min n - f(n) = " + std::to_string(*r.min_gap);
    }
    return o;
}

Outcome threshold_inequality() {
    Outcome o;
    for (std::uint32_t p = 4; p <= 100; ++p) {
        require(o, Natural(81) * Natural(p) < Natural::pow(Natural(10), p - 1),
                "81p >= 10^(p-1) at p = " + std::to_string(p));
    }
    require(o, !(Natural(81 * 3) < Natural(100)), "inequality unexpectedly holds at p = 3");
    const DigitSystem sys(10, 2);
    require(o, digit_reduction_threshold(sys) == 4, "p0 != 4");
    const VerificationReport r = threshold_inequality_check(sys, 100);
    require(o, r.ok && r.checked == 97, "threshold_inequality_check: " + r.message);
    if (o.ok) {
        o.detail = "81p < 10^(p-1) for p in [4, 100]; 243 >= 100 at p = 3";
    }
    return o;
}

Outcome certified_atlas() {
    Outcome o;
    const DigitSystem sys(10, 2);
    std::optional<AttractorAtlas> atlas;
    const double ms = median_ms([&] { atlas = enumerate_attractors(sys); });
    require(o, atlas->fixed_points() == std::vector<Natural>{0, 1}, "fixed points != {0, 1}");
    const auto cycles = atlas->cycles();
    require(o, cycles.size() == 1, "expected exactly one cycle");
    if (cycles.size() == 1) {
        require(o, cycles[0].length() == 8 && cycles[0].minimum() == Natural(4), "cycle is not length 8 from 4");
    }
    const auto& table = atlas->classification_table();
    require(o, table && table->size() == 1000, "classification table does not cover [0, 999]");
    if (table) {
        for (std::uint32_t id : *table) {
            require(o, id < atlas->attractors().size(), "table holds an invalid attractor id");
        }
    }
    require(o, ms < 50.0, "took " + fmt_ms(ms));
    if (o.ok) {
        o.detail = "{0, 1} + one 8-cycle from 4, table covers [0, 999], " + fmt_ms(ms);
    }
    return o;
}

// The corpora for criteria 7 and 8: exhaustive 3x3 over {0,1,2}, 2x3 over
// {0..3}, and 10 000 seeded random grids up to 20x20 with entries in [-1000, 1000].
void for_each_corpus_grid(const std::function<void(const Grid&)>& fn) {
    for_each_grid(3, 3, 3, [&](const Grid& g) {
        fn(g);
        return true;
    });
    for_each_grid(2, 3, 4, [&](const Grid& g) {
        fn(g);
        return true;
    });
    GridGenerator gen(20240601);
    for (int i = 0; i < 10000; ++i) {
        const auto rows = static_cast<std::size_t>(gen.uniform(1, 20));
        const auto cols = static_cast<std::size_t>(gen.uniform(1, 20));
        fn(gen.next(rows, cols, -1000, 1000));
    }
}

Outcome grid_theorem() {
    Outcome o;
    std::uint64_t grids = 0;
    std::uint64_t counterexamples = 0;
    const auto t0 = Clock::now();
    for_each_corpus_grid([&](const Grid& g) {
        ++grids;
        if (!is_rows_sorted(sort_cols(sort_rows(g)))) {
            ++counterexamples;
        }
    });
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    require(o, grids == 19683 + 4096 + 10000, "corpus size " + std::to_string(grids));
    require(o, counterexamples == 0, std::to_string(counterexamples) + " counterexamples");
    require(o, ms < 5000.0, "took " + fmt_ms(ms));
    if (o.ok) {
        o.detail = std::to_string(grids) + " grids, 0 counterexamples, " + fmt_ms(ms);
    }
    return o;
}

Outcome bubble_equivalence() {
    Outcome o;
    std::uint64_t grids = 0;
    for_each_corpus_grid([&](const Grid& g) {
        ++grids;
        const BubbleResult b = bubble_column_sort(g);
        require(o, b.grid == sort_cols(g), "bubble != sort_cols");
        require(o, b.passes == g.rows() - 1, "pass count != n - 1");
        if (g.rows() > 1) {
            Grid after = g;
            bubble_pass(after, 1);
            const auto last = after.row(g.rows() - 1);
            for (std::size_t c = 0; c < g.cols(); ++c) {
                const auto col = g.column(c);
                require(o, last[c] == *std::max_element(col.begin(), col.end()),
                        "bottom row after pass 1 is not the column maxima");
            }
        }
    });
    if (o.ok) {
        o.detail = std::to_string(grids) + " grids: bubble == sort_cols, n - 1 passes, maxima fixed after pass 1";
    }
    return o;
}

Outcome digit_count_reduction() {
    Outcome o;
    const DigitSystem sys(10, 2);
    const AttractorAtlas atlas = enumerate_attractors(sys);
    std::mt19937_64 rng(9);
    const auto t0 = Clock::now();
    for (int i = 0; i < 1000; ++i) {
        const std::size_t len = 50 + rng() % 451;
        std::string s(1, static_cast<char>('1' + rng() % 9));
        for (std::size_t k = 1; k < len; ++k) {
            s.push_back(static_cast<char>('0' + rng() % 10));
        }
        const Natural n = Natural::parse(s);
        require(o, to_digits(digit_power_sum(n, sys), sys).size() < to_digits(n, sys).size(),
                "digit count did not shrink for a " + std::to_string(len) + "-digit value");
        const Trajectory t = step_until_repeat(n, sys, default_max_steps(n, sys, atlas.certificate().brute_bound));
        require(o, atlas.find_member(t.terminal.minimum()).has_value() &&
                       atlas.attractor(*atlas.find_member(t.terminal.minimum())) == t.terminal,
                "trajectory ended outside the atlas");
        require(o, atlas.attractor(classify(n, sys, atlas)) == t.terminal, "classify disagrees with the trajectory");
    }
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    require(o, ms < 2000.0, "took " + fmt_ms(ms));
    if (o.ok) {
        o.detail = "1000 values of 50-500 digits, " + fmt_ms(ms);
    }
    return o;
}

Outcome cube_oracle() {
    Outcome o;
    const DigitSystem sys(10, 3);
    const AttractorAtlas atlas = enumerate_attractors(sys);
    std::set<std::vector<std::uint64_t>> from_atlas;
    for (const Cycle& c : atlas.attractors()) {
        std::vector<std::uint64_t> m;
        for (const Natural& x : c.members()) {
            m.push_back(*x.to_u64());
        }
        from_atlas.insert(m);
    }
    auto oracle = [](std::uint64_t limit) {
        std::set<std::vector<std::uint64_t>> found;
        for (std::uint64_t n = 0; n <= limit; ++n) {
            std::set<std::uint64_t> visited;
            std::vector<std::uint64_t> order;
            std::uint64_t x = n;
            while (visited.insert(x).second) {
                order.push_back(x);
                x = naive_f(x, 10, 3);
            }
            std::vector<std::uint64_t> cycle(std::find(order.begin(), order.end(), x), order.end());
            std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
            found.insert(cycle);
        }
        return found;
    };
    require(o, oracle(2187) == from_atlas, "oracle over [0, 2187] differs from the atlas");
    require(o, oracle(*atlas.certificate().brute_bound.to_u64()) == from_atlas,
            "oracle over [0, B] differs from the atlas");
    if (o.ok) {
        o.detail = std::to_string(atlas.fixed_points().size()) + " fixed points, " +
                   std::to_string(atlas.cycles().size()) + " cycles; B = " +
                   atlas.certificate().brute_bound.to_string() + "; oracle agrees on [0, 2187] and [0, B]";
    }
    return o;
}

struct CliRun {
    int code;
    std::string out;
};

CliRun run_cli(const std::vector<std::string>& args, const std::string& in_text = "") {
    std::vector<std::string> full{"numgrid"};
    full.insert(full.end(), args.begin(), args.end());
    std::istringstream in(in_text);
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(full, in, out, err);
    return {code, out.str()};
}

Outcome determinism() {
    Outcome o;
    const CliRun a = run_cli({"attractors", "--base", "10", "--exp", "2", "--json"});
    const CliRun b = run_cli({"attractors", "--base", "10", "--exp", "2", "--json"});
    const CliRun c = run_cli({"attractors", "--base", "10", "--exp", "2", "--json", "--workers", "4"});
    require(o, a.code == 0 && b.code == 0 && c.code == 0, "non-zero exit");
    require(o, a.out == b.out, "repeated runs differ");
    require(o, a.out == c.out, "worker count changes the output");
    require(o, !a.out.empty(), "empty output");
    if (o.ok) {
        o.detail = "3 runs (1, 1, 4 workers) byte-identical, " + std::to_string(a.out.size()) + " bytes";
    }
    return o;
}

Outcome exit_codes() {
    Outcome o;
    const int ok = run_cli({"traj", "4"}).code;
    const int failed = run_cli({"certify", "--test-drop-attractor", "4"}).code;
    const int malformed = run_cli({"grid", "sort"}, "1 8 3\n0 9\n").code;
    require(o, ok == 0, "success exited " + std::to_string(ok));
    require(o, failed == 1, "verification failure exited " + std::to_string(failed));
    require(o, malformed == 2, "malformed grid exited " + std::to_string(malformed));
    if (o.ok) {
        o.detail = "success 0, injected verification failure 1, malformed grid 2";
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1  grid example T -> T' -> T''", paper_grid},
        {"AC2  digit-square map examples and 8-cycle", paper_map},
        {"AC3  brute force over [0, 99]", brute_force_low},
        {"AC4  three-digit descent and identity", three_digit_descent},
        {"AC5  threshold inequality 81p < 10^(p-1)", threshold_inequality},
        {"AC6  certified atlas (10, 2)", certified_atlas},
        {"AC7  grid theorem property suite", grid_theorem},
        {"AC8  bubble equivalence", bubble_equivalence},
        {"AC9  digit-count reduction on large values", digit_count_reduction},
        {"AC10 cube atlas vs naive oracle", cube_oracle},
        {"AC11 attractors --json determinism", determinism},
        {"AC12 CLI exit codes", exit_codes},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s  %-46s %s\n", o.ok ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        failures += o.ok ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
