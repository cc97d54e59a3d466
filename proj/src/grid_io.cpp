// SPDX-License-Identifier: Apache-2.0
#include "numgrid/grid_io.hpp"

#include <charconv>
#include <istream>
#include <iterator>
#include <sstream>
#include <vector>

namespace numgrid {

GridParseError::GridParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

bool is_blank(char ch) { return ch == ' ' || ch == '\t' || ch == '\r'; }

}  // namespace

Grid parse_grid(std::string_view text) {
    std::vector<std::vector<Grid::value_type>> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        const std::string_view line = text.substr(pos, eol - pos);
        ++line_no;

        std::vector<Grid::value_type> row;
        std::size_t i = 0;
        while (i < line.size()) {
            if (is_blank(line[i])) {
                ++i;
                continue;
            }
            std::size_t end = i;
            while (end < line.size() && !is_blank(line[end])) {
                ++end;
            }
            const std::string_view token = line.substr(i, end - i);
            // from_chars rejects a leading '+', which we allow.
            const std::size_t skip = token.front() == '+' ? 1 : 0;
            Grid::value_type value = 0;
            const auto [ptr, ec] = std::from_chars(token.data() + skip, token.data() + token.size(), value);
            if (ec == std::errc::result_out_of_range) {
                throw GridParseError(line_no, i + 1, "integer out of range: '" + std::string(token) + "'");
            }
            if (ec != std::errc() || ptr != token.data() + token.size() ||
                (skip == 1 && token.size() > 1 && token[1] == '-')) {
                throw GridParseError(line_no, i + 1, "not an integer: '" + std::string(token) + "'");
            }
            if (!rows.empty() && row.size() == rows.front().size()) {
                throw GridParseError(line_no, i + 1,
                                     "row has more than " + std::to_string(rows.front().size()) + " entries");
            }
            row.push_back(value);
            i = end;
        }

        if (!row.empty()) {
            if (!rows.empty() && row.size() != rows.front().size()) {
                throw GridParseError(line_no, line.size() + 1,
                                     "row has " + std::to_string(row.size()) + " entries, expected " +
                                         std::to_string(rows.front().size()));
            }
            rows.push_back(std::move(row));
        }
        if (eol == text.size()) {
            break;
        }
        pos = eol + 1;
    }
    if (rows.empty()) {
        throw GridParseError(1, 1, "empty grid");
    }
    return Grid::from_rows(rows);
}

Grid read_grid(std::istream& in) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_grid(text);
}

std::string format_grid(const Grid& g) {
    std::ostringstream os;
    for (std::size_t r = 0; r < g.rows(); ++r) {
        const auto row = g.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c != 0) {
                os << ' ';
            }
            os << row[c];
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace numgrid
