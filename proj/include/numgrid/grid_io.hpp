// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "numgrid/gridsort.hpp"

namespace numgrid {

/// Malformed grid text. line and column are 1-based.
class GridParseError : public std::runtime_error {
public:
    GridParseError(std::size_t line, std::size_t column, const std::string& what);

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// One row per line, entries separated by runs of spaces or tabs, decimal
// signed integers. Blank lines are skipped; every row must have the same
// number of entries.
[[nodiscard]] Grid parse_grid(std::string_view text);
[[nodiscard]] Grid read_grid(std::istream& in);

/// Entries separated by single spaces, one row per line, trailing newline.
[[nodiscard]] std::string format_grid(const Grid& g);

}  // namespace numgrid
