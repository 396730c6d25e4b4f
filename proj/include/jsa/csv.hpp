#pragma once

// Minimal comma-separated reader/writer with standard double-quote escaping
// (embedded commas, doubled quotes, quoted line breaks, CRLF tolerated).

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace jsa::csv {

using Row = std::vector<std::string>;

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    /// Next record, or nullopt at end of input. Throws DataError on an
    /// unterminated quoted field.
    std::optional<Row> next();

    /// Physical line on which the last returned record started (1-based).
    std::size_t line() const noexcept { return record_line_; }

private:
    std::istream& in_;
    std::size_t line_ = 1;
    std::size_t record_line_ = 0;
};

std::string escape(std::string_view field);
void write_row(std::ostream& out, const Row& row);

std::string trim(std::string_view s);

}  // namespace jsa::csv
