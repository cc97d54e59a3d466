// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace numgrid {

class GridShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// n x p matrix of signed integers, row-major. Row 0 is the top row.
class Grid {
public:
    using value_type = std::int64_t;

    Grid(std::size_t rows, std::size_t cols, std::vector<value_type> entries);
    static Grid from_rows(const std::vector<std::vector<value_type>>& rows);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    value_type& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    [[nodiscard]] value_type at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<value_type> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
    [[nodiscard]] std::span<const value_type> row(std::size_t r) const {
        return {entries_.data() + r * cols_, cols_};
    }
    [[nodiscard]] std::vector<value_type> column(std::size_t c) const;
    [[nodiscard]] std::vector<std::vector<value_type>> to_rows() const;

    [[nodiscard]] std::span<const value_type> entries() const noexcept { return entries_; }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<value_type> entries_;
};

[[nodiscard]] Grid sort_rows(Grid g);
[[nodiscard]] Grid sort_cols(Grid g);

[[nodiscard]] bool is_rows_sorted(const Grid& g);
[[nodiscard]] bool is_cols_sorted(const Grid& g);

/// Elementwise (min, max) of two rows. Throws GridShapeError on a length mismatch.
[[nodiscard]] std::pair<std::vector<Grid::value_type>, std::vector<Grid::value_type>>
two_row_minmax(std::span<const Grid::value_type> top, std::span<const Grid::value_type> bottom);

/// In-place compare-exchange of rows `upper` and `upper + 1`.
void merge_adjacent_rows(Grid& g, std::size_t upper);

/// Pass k (1-based) merges the pairs (0,1), (1,2), ..., (n-1-k, n-k).
/// After pass k the bottom k rows hold their final values.
void bubble_pass(Grid& g, std::size_t pass);

struct BubbleResult {
    Grid grid;
    std::size_t passes;
};

/// Runs exactly n - 1 bubble passes; the result equals sort_cols(g).
[[nodiscard]] BubbleResult bubble_column_sort(Grid g);

struct MergeSnapshot {
    std::size_t pass;   // 1-based
    std::size_t upper;  // 0-based index of the upper row of the merged pair
    Grid grid;          // state after the merge
};

[[nodiscard]] std::vector<MergeSnapshot> trace_bubble(Grid g);

/// Columnwise maxima, i.e. the bottom row after one bubble pass.
[[nodiscard]] std::vector<Grid::value_type> column_maxima(const Grid& g);

/// Checks, for one grid: rows of sort_cols(sort_rows(g)) are sorted, bubble
/// sort agrees with sort_cols on g and on sort_rows(g), the pass count is
/// n - 1, and pass 1 leaves the column maxima in the bottom row. Returns a
/// description of the first violated property.
[[nodiscard]] std::optional<std::string> check_grid_properties(const Grid& g);

/// Pinned pseudo-random grid source: std::mt19937_64 seeded with `seed`,
/// integers drawn by rejection sampling so the sequence is the same on every
/// standard library.
class GridGenerator {
public:
    explicit GridGenerator(std::uint64_t seed);

    /// Uniform in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);

    Grid next(std::size_t rows, std::size_t cols, std::int64_t lo, std::int64_t hi);

private:
    std::mt19937_64 engine_;
};

/// Calls fn on every rows x cols grid with entries in [0, alphabet).
/// Returns the number of grids visited. fn returning false stops early.
std::uint64_t for_each_grid(std::size_t rows, std::size_t cols, std::int64_t alphabet,
                            const std::function<bool(const Grid&)>& fn);

}  // namespace numgrid
