// SPDX-License-Identifier: Apache-2.0
#include "numgrid/gridsort.hpp"

#include <algorithm>
#include <limits>

#include "numgrid/kernels.hpp"

namespace numgrid {

Grid::Grid(std::size_t rows, std::size_t cols, std::vector<value_type> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
        throw GridShapeError("grid must have at least one row and one column");
    }
    if (entries_.size() != rows * cols) {
        throw GridShapeError("grid has " + std::to_string(entries_.size()) + " entries, expected " +
                             std::to_string(rows * cols));
    }
}

Grid Grid::from_rows(const std::vector<std::vector<value_type>>& rows) {
    if (rows.empty()) {
        throw GridShapeError("grid must have at least one row");
    }
    const std::size_t cols = rows.front().size();
    std::vector<value_type> entries;
    entries.reserve(rows.size() * cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw GridShapeError("row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                                 " entries, expected " + std::to_string(cols));
        }
        entries.insert(entries.end(), rows[r].begin(), rows[r].end());
    }
    return Grid(rows.size(), cols, std::move(entries));
}

std::vector<Grid::value_type> Grid::column(std::size_t c) const {
    std::vector<value_type> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        out[r] = at(r, c);
    }
    return out;
}

std::vector<std::vector<Grid::value_type>> Grid::to_rows() const {
    std::vector<std::vector<value_type>> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const auto span = row(r);
        out.emplace_back(span.begin(), span.end());
    }
    return out;
}

Grid sort_rows(Grid g) {
    for (std::size_t r = 0; r < g.rows(); ++r) {
        auto span = g.row(r);
        std::sort(span.begin(), span.end());
    }
    return g;
}

Grid sort_cols(Grid g) {
    for (std::size_t c = 0; c < g.cols(); ++c) {
        auto col = g.column(c);
        std::sort(col.begin(), col.end());
        for (std::size_t r = 0; r < g.rows(); ++r) {
            g.at(r, c) = col[r];
        }
    }
    return g;
}

bool is_rows_sorted(const Grid& g) {
    for (std::size_t r = 0; r < g.rows(); ++r) {
        const auto span = g.row(r);
        if (!std::is_sorted(span.begin(), span.end())) {
            return false;
        }
    }
    return true;
}

bool is_cols_sorted(const Grid& g) {
    for (std::size_t r = 1; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.cols(); ++c) {
            if (g.at(r - 1, c) > g.at(r, c)) {
                return false;
            }
        }
    }
    return true;
}

std::pair<std::vector<Grid::value_type>, std::vector<Grid::value_type>>
two_row_minmax(std::span<const Grid::value_type> top, std::span<const Grid::value_type> bottom) {
    if (top.size() != bottom.size()) {
        throw GridShapeError("rows differ in length: " + std::to_string(top.size()) + " vs " +
                             std::to_string(bottom.size()));
    }
    std::vector<Grid::value_type> low(top.begin(), top.end());
    std::vector<Grid::value_type> high(bottom.begin(), bottom.end());
    kernels::active().minmax_rows(low, high);
    return {std::move(low), std::move(high)};
}

void merge_adjacent_rows(Grid& g, std::size_t upper) {
    if (upper + 1 >= g.rows()) {
        throw GridShapeError("no row below row " + std::to_string(upper));
    }
    kernels::active().minmax_rows(g.row(upper), g.row(upper + 1));
}

void bubble_pass(Grid& g, std::size_t pass) {
    if (pass == 0 || pass >= g.rows()) {
        throw GridShapeError("pass " + std::to_string(pass) + " out of range for " +
                             std::to_string(g.rows()) + " rows");
    }
    for (std::size_t upper = 0; upper + pass < g.rows(); ++upper) {
        merge_adjacent_rows(g, upper);
    }
}

BubbleResult bubble_column_sort(Grid g) {
    const std::size_t passes = g.rows() - 1;
    for (std::size_t pass = 1; pass <= passes; ++pass) {
        bubble_pass(g, pass);
    }
    return {std::move(g), passes};
}

std::vector<MergeSnapshot> trace_bubble(Grid g) {
    std::vector<MergeSnapshot> out;
    for (std::size_t pass = 1; pass < g.rows(); ++pass) {
        for (std::size_t upper = 0; upper + pass < g.rows(); ++upper) {
            merge_adjacent_rows(g, upper);
            out.push_back({pass, upper, g});
        }
    }
    return out;
}

std::vector<Grid::value_type> column_maxima(const Grid& g) {
    std::vector<Grid::value_type> out(g.row(0).begin(), g.row(0).end());
    for (std::size_t r = 1; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.cols(); ++c) {
            out[c] = std::max(out[c], g.at(r, c));
        }
    }
    return out;
}

std::optional<std::string> check_grid_properties(const Grid& g) {
    const Grid row_sorted = sort_rows(g);
    const Grid both = sort_cols(row_sorted);
    if (!is_rows_sorted(both)) {
        return "rows of sort_cols(sort_rows(g)) are not sorted";
    }
    if (!is_cols_sorted(both)) {
        return "columns of sort_cols(sort_rows(g)) are not sorted";
    }
    const BubbleResult on_input = bubble_column_sort(g);
    if (!(on_input.grid == sort_cols(g))) {
        return "bubble_column_sort(g) differs from sort_cols(g)";
    }
    if (on_input.passes != g.rows() - 1) {
        return "bubble_column_sort used " + std::to_string(on_input.passes) + " passes";
    }
    if (!(bubble_column_sort(row_sorted).grid == both)) {
        return "bubble_column_sort(sort_rows(g)) differs from sort_cols(sort_rows(g))";
    }
    if (g.rows() > 1) {
        Grid after_first = g;
        bubble_pass(after_first, 1);
        const auto last = after_first.row(g.rows() - 1);
        const auto maxima = column_maxima(g);
        if (!std::equal(last.begin(), last.end(), maxima.begin())) {
            return "bottom row after pass 1 is not the columnwise maxima";
        }
    }
    return std::nullopt;
}

GridGenerator::GridGenerator(std::uint64_t seed) : engine_(seed) {}

std::int64_t GridGenerator::uniform(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) {
        throw std::invalid_argument("uniform: lo > hi");
    }
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == std::numeric_limits<std::uint64_t>::max()) {
        return static_cast<std::int64_t>(engine_());
    }
    const std::uint64_t range = span + 1;
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x = engine_();
    while (x >= limit) {
        x = engine_();
    }
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % range);
}

Grid GridGenerator::next(std::size_t rows, std::size_t cols, std::int64_t lo, std::int64_t hi) {
    std::vector<Grid::value_type> entries(rows * cols);
    for (auto& e : entries) {
        e = uniform(lo, hi);
    }
    return Grid(rows, cols, std::move(entries));
}

std::uint64_t for_each_grid(std::size_t rows, std::size_t cols, std::int64_t alphabet,
                            const std::function<bool(const Grid&)>& fn) {
    if (alphabet < 1) {
        throw std::invalid_argument("alphabet must be >= 1");
    }
    Grid g(rows, cols, std::vector<Grid::value_type>(rows * cols, 0));
    std::vector<Grid::value_type> digits(rows * cols, 0);
    std::uint64_t visited = 0;
    for (;;) {
        ++visited;
        if (!fn(g)) {
            return visited;
        }
        // Odometer increment over the entries.
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == alphabet) {
            digits[i] = 0;
            g.at(i / cols, i % cols) = 0;
            ++i;
        }
        if (i == digits.size()) {
            return visited;
        }
        g.at(i / cols, i % cols) = digits[i];
    }
}

}  // namespace numgrid
