// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <limits>
#include <random>

#include "numgrid/gridsort.hpp"

using namespace numgrid;

namespace {

using Rows = std::vector<std::vector<std::int64_t>>;

const Rows kT{{1, 8, 3, 4, 8}, {0, 9, 2, 7, 14}, {20, 3, 6, 7, 7}};
const Rows kTPrime{{1, 3, 4, 8, 8}, {0, 2, 7, 9, 14}, {3, 6, 7, 7, 20}};
const Rows kTSecond{{0, 2, 4, 7, 8}, {1, 3, 7, 8, 14}, {3, 6, 7, 9, 20}};

// Column sort oracle: copy each column out, std::sort it, copy it back.
Grid oracle_sort_cols(const Grid& g) {
    Rows rows = g.to_rows();
    for (std::size_t c = 0; c < g.cols(); ++c) {
        std::vector<std::int64_t> col;
        for (const auto& r : rows) {
            col.push_back(r[c]);
        }
        std::sort(col.begin(), col.end());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            rows[r][c] = col[r];
        }
    }
    return Grid::from_rows(rows);
}

Grid random_grid(std::mt19937_64& rng, std::size_t max_dim, std::int64_t lo, std::int64_t hi) {
    const std::size_t rows = 1 + rng() % max_dim;
    const std::size_t cols = 1 + rng() % max_dim;
    std::vector<std::int64_t> e(rows * cols);
    for (auto& x : e) {
        x = lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    return Grid(rows, cols, e);
}

template <typename V>
std::vector<std::int64_t> sorted_copy(const V& v) {
    std::vector<std::int64_t> out(v.begin(), v.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("gridsort.shape validation") {
    CHECK_THROWS_AS(Grid(0, 3, {}), GridShapeError);
    CHECK_THROWS_AS(Grid(2, 2, {1, 2, 3}), GridShapeError);
    CHECK_THROWS_AS((void)Grid::from_rows({{1, 2}, {3}}), GridShapeError);
    CHECK_THROWS_AS((void)Grid::from_rows({}), GridShapeError);
    const Grid g = Grid::from_rows(kT);
    CHECK(g.rows() == 3);
    CHECK(g.cols() == 5);
    CHECK(g.at(2, 0) == 20);
    CHECK(g.column(4) == std::vector<std::int64_t>{8, 14, 7});
}

TEST_CASE("gridsort.paper matrices") {
    const Grid t = Grid::from_rows(kT);
    const Grid t1 = sort_rows(t);
    CHECK(t1 == Grid::from_rows(kTPrime));
    const Grid t2 = sort_cols(t1);
    CHECK(t2 == Grid::from_rows(kTSecond));
    CHECK(is_rows_sorted(t2));
    CHECK(is_cols_sorted(t2));
    CHECK_FALSE(is_rows_sorted(t));
    CHECK_FALSE(is_cols_sorted(t));

    const BubbleResult b = bubble_column_sort(t1);
    CHECK(b.grid == t2);
    CHECK(b.passes == 2);
}

TEST_CASE("gridsort.trivial shapes") {
    const Grid one = Grid::from_rows({{5}});
    CHECK(sort_rows(one) == one);
    CHECK(sort_cols(one) == one);
    CHECK(is_rows_sorted(one));
    CHECK(is_cols_sorted(one));
    const BubbleResult b = bubble_column_sort(one);
    CHECK(b.grid == one);
    CHECK(b.passes == 0);
    CHECK(trace_bubble(one).empty());

    const Grid single_row = Grid::from_rows({{3, -1, 2}});
    CHECK(sort_cols(single_row) == single_row);
    CHECK(bubble_column_sort(single_row).passes == 0);

    const Grid sorted = Grid::from_rows(kTSecond);
    CHECK(sort_rows(sorted) == sorted);
    CHECK(sort_cols(sorted) == sorted);
}

TEST_CASE("gridsort.two_row_minmax") {
    const auto [low, high] = two_row_minmax(std::vector<std::int64_t>{1, 3, 4, 8, 8},
                                            std::vector<std::int64_t>{0, 2, 7, 9, 14});
    CHECK(low == std::vector<std::int64_t>{0, 2, 4, 8, 8});
    CHECK(high == std::vector<std::int64_t>{1, 3, 7, 9, 14});

    const std::vector<std::int64_t> r{4, -2, 9};
    const auto [a, b] = two_row_minmax(r, r);
    CHECK(a == r);
    CHECK(b == r);

    CHECK_THROWS_AS((void)two_row_minmax(std::vector<std::int64_t>{1, 2}, std::vector<std::int64_t>{1}), GridShapeError);
}

TEST_CASE("gridsort.two-row lemma on random sorted rows") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 2000; ++i) {
        const std::size_t n = 1 + rng() % 40;
        std::vector<std::int64_t> top(n);
        std::vector<std::int64_t> bottom(n);
        for (std::size_t j = 0; j < n; ++j) {
            top[j] = static_cast<std::int64_t>(rng() % 21) - 10;
            bottom[j] = static_cast<std::int64_t>(rng() % 21) - 10;
        }
        std::sort(top.begin(), top.end());
        std::sort(bottom.begin(), bottom.end());
        const auto [low, high] = two_row_minmax(top, bottom);
        CHECK(std::is_sorted(low.begin(), low.end()));
        CHECK(std::is_sorted(high.begin(), high.end()));
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(low[j] == std::min(top[j], bottom[j]));
            CHECK(high[j] == std::max(top[j], bottom[j]));
        }
    }
}

TEST_CASE("gridsort.trace_bubble structure") {
    const Grid t1 = Grid::from_rows(kTPrime);
    const auto trace = trace_bubble(t1);
    REQUIRE(trace.size() == 3);  // pass 1: (1,2), (2,3); pass 2: (1,2)
    CHECK(trace[0].pass == 1);
    CHECK(trace[0].upper == 0);
    CHECK(trace[1].upper == 1);
    CHECK(trace[2].pass == 2);
    CHECK(trace.back().grid == Grid::from_rows(kTSecond));
    const auto maxima = column_maxima(t1);
    const auto bottom = trace[1].grid.row(2);
    CHECK(std::vector<std::int64_t>(bottom.begin(), bottom.end()) == maxima);

    const Grid two = Grid::from_rows({{5, 1, 7}, {2, 3, 7}});
    const auto two_trace = trace_bubble(two);
    REQUIRE(two_trace.size() == 1);
    const auto [low, high] = two_row_minmax(two.row(0), two.row(1));
    CHECK(two_trace[0].grid == Grid::from_rows({low, high}));
}

TEST_CASE("gridsort.main theorem, exhaustive small grids") {
    std::uint64_t count = for_each_grid(3, 3, 3, [](const Grid& g) {
        REQUIRE(is_rows_sorted(sort_cols(sort_rows(g))));
        return true;
    });
    CHECK(count == 19683);
    count = for_each_grid(2, 3, 4, [](const Grid& g) {
        REQUIRE(is_rows_sorted(sort_cols(sort_rows(g))));
        return true;
    });
    CHECK(count == 4096);
}

TEST_CASE("gridsort.for_each_grid visits distinct grids and can stop early") {
    std::vector<std::vector<std::int64_t>> seen;
    for_each_grid(1, 2, 3, [&](const Grid& g) {
        seen.emplace_back(g.entries().begin(), g.entries().end());
        return true;
    });
    CHECK(seen.size() == 9);
    std::sort(seen.begin(), seen.end());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
    CHECK(for_each_grid(2, 2, 2, [](const Grid&) { return false; }) == 1);
}

TEST_CASE("gridsort.random properties") {
    std::mt19937_64 rng(31337);
    for (int i = 0; i < 2000; ++i) {
        const Grid g = random_grid(rng, 20, -1000, 1000);
        const Grid rows = sort_rows(g);
        const Grid both = sort_cols(rows);
        REQUIRE(is_rows_sorted(both));
        REQUIRE(is_cols_sorted(both));

        // Multisets: rows under sort_rows, columns under sort_cols and bubble.
        for (std::size_t r = 0; r < g.rows(); ++r) {
            REQUIRE(sorted_copy(rows.row(r)) == sorted_copy(g.row(r)));
        }
        const BubbleResult b = bubble_column_sort(g);
        REQUIRE(b.grid == oracle_sort_cols(g));
        REQUIRE(b.grid == sort_cols(g));
        REQUIRE(b.passes == g.rows() - 1);
        for (std::size_t c = 0; c < g.cols(); ++c) {
            REQUIRE(sorted_copy(b.grid.column(c)) == sorted_copy(g.column(c)));
        }
        REQUIRE_FALSE(check_grid_properties(g).has_value());
    }
}

TEST_CASE("gridsort.row-sortedness survives every merge; bottom row fixed after pass 1") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 500; ++i) {
        const Grid g = sort_rows(random_grid(rng, 12, -50, 50));
        const auto trace = trace_bubble(g);
        const auto maxima = column_maxima(g);
        for (const MergeSnapshot& s : trace) {
            REQUIRE(is_rows_sorted(s.grid));
            if (s.pass > 1 || s.upper + 2 == g.rows()) {
                const auto last = s.grid.row(g.rows() - 1);
                REQUIRE(std::equal(last.begin(), last.end(), maxima.begin()));
            }
        }
    }
}

TEST_CASE("gridsort.idempotence") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 200; ++i) {
        const Grid g = random_grid(rng, 10, -5, 5);
        CHECK(sort_cols(sort_cols(g)) == sort_cols(g));
        CHECK(sort_rows(sort_rows(g)) == sort_rows(g));
    }
}

TEST_CASE("gridsort.generator is pinned") {
    GridGenerator a(42);
    GridGenerator b(42);
    for (int i = 0; i < 100; ++i) {
        const std::int64_t x = a.uniform(-1000, 1000);
        CHECK(x == b.uniform(-1000, 1000));
        CHECK(x >= -1000);
        CHECK(x <= 1000);
    }
    // The full-width range passes engine output through unchanged, so the
    // standard's pinned 10000th value of mt19937_64 (default seed 5489) must appear.
    GridGenerator d(5489);
    std::int64_t last = 0;
    for (int i = 0; i < 10000; ++i) {
        last = d.uniform(std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max());
    }
    CHECK(static_cast<std::uint64_t>(last) == 9981545732273789042ull);
    CHECK(GridGenerator(1).uniform(7, 7) == 7);
}
