#pragma once

// Tabular reports rendered as delimited text, JSON or Markdown.

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace jsa {

enum class Format { csv, json, markdown };

std::optional<Format> parse_format(std::string_view s) noexcept;

/// Display text plus, for numeric cells, the unrounded value. JSON output
/// carries the value at full precision; the other formats print the text.
struct Cell {
    std::string text;
    std::optional<double> value;
};

Cell text_cell(std::string s);
Cell int_cell(long long v);
/// Fixed-point text with `decimals` places.
Cell num_cell(double v, int decimals);
/// Fixed three-place p-value, "0.000" below 5e-4.
Cell p_cell(double p);

std::string fixed(double v, int decimals);

struct Report {
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> footnotes;

    /// Throws std::logic_error if the row arity differs from the columns.
    void add_row(std::vector<Cell> row);
};

void render(const Report& report, Format format, std::ostream& out);

}  // namespace jsa
