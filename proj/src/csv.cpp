#include "jsa/csv.hpp"

#include "jsa/errors.hpp"

namespace jsa::csv {

std::optional<Row> Reader::next() {
    int c = in_.get();
    if (c == std::char_traits<char>::eof()) return std::nullopt;

    record_line_ = line_;
    Row row;
    std::string field;
    bool quoted = false;
    bool field_was_quoted = false;
    for (;; c = in_.get()) {
        if (c == std::char_traits<char>::eof()) {
            if (quoted) {
                throw DataError("unterminated quoted field starting on line " +
                                std::to_string(record_line_));
            }
            break;
        }
        const char ch = static_cast<char>(c);
        if (quoted) {
            if (ch == '"') {
                if (in_.peek() == '"') {
                    in_.get();
                    field.push_back('"');
                } else {
                    quoted = false;
                }
            } else {
                if (ch == '\n') ++line_;
                field.push_back(ch);
            }
            continue;
        }
        if (ch == '"' && field.empty() && !field_was_quoted) {
            quoted = true;
            field_was_quoted = true;
        } else if (ch == ',') {
            row.push_back(std::move(field));
            field.clear();
            field_was_quoted = false;
        } else if (ch == '\n') {
            ++line_;
            break;
        } else if (ch == '\r') {
            if (in_.peek() == '\n') continue;
            ++line_;
            break;
        } else {
            field.push_back(ch);
        }
    }
    row.push_back(std::move(field));
    return row;
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out.push_back('"');
        out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const Row& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        out << escape(row[i]);
    }
    out << '\n';
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return std::string(s.substr(first, last - first + 1));
}

}  // namespace jsa::csv
