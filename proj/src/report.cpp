#include "jsa/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"
#include "jsa/csv.hpp"

namespace jsa {

std::optional<Format> parse_format(std::string_view s) noexcept {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    if (s == "markdown" || s == "md") return Format::markdown;
    return std::nullopt;
}

std::string fixed(double v, int decimals) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s(buf);
    if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

Cell text_cell(std::string s) { return {std::move(s), std::nullopt}; }

Cell int_cell(long long v) { return {std::to_string(v), static_cast<double>(v)}; }

Cell num_cell(double v, int decimals) { return {fixed(v, decimals), v}; }

Cell p_cell(double p) { return {p < 5e-4 ? std::string("0.000") : fixed(p, 3), p}; }

void Report::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("report '" + title + "': row has " + std::to_string(row.size()) + " cells for " +
                               std::to_string(columns.size()) + " columns");
    }
    rows.push_back(std::move(row));
}

namespace {

void render_csv(const Report& r, std::ostream& out) {
    if (!r.title.empty()) out << "# " << r.title << '\n';
    csv::write_row(out, r.columns);
    for (const auto& row : r.rows) {
        csv::Row texts;
        for (const auto& c : row) texts.push_back(c.text);
        csv::write_row(out, texts);
    }
    for (const auto& f : r.footnotes) out << "# " << f << '\n';
}

std::string md_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '|') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

void render_markdown(const Report& r, std::ostream& out) {
    if (!r.title.empty()) out << "### " << r.title << "\n\n";
    out << '|';
    for (const auto& c : r.columns) out << ' ' << md_escape(c) << " |";
    out << "\n|";
    for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i == 0 ? " --- |" : " ---: |");
    out << '\n';
    for (const auto& row : r.rows) {
        out << '|';
        for (const auto& c : row) out << ' ' << md_escape(c.text) << " |";
        out << '\n';
    }
    if (!r.footnotes.empty()) {
        out << '\n';
        for (const auto& f : r.footnotes) out << f << "  \n";
    }
}

void render_json(const Report& r, std::ostream& out) {
    nlohmann::ordered_json j;
    j["title"] = r.title;
    j["columns"] = r.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json o;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& c = row[i];
            if (c.value && std::isfinite(*c.value)) {
                o[r.columns[i]] = *c.value;
            } else {
                o[r.columns[i]] = c.text;
            }
        }
        rows.push_back(std::move(o));
    }
    j["rows"] = std::move(rows);
    j["footnotes"] = r.footnotes;
    out << j.dump(2) << '\n';
}

}  // namespace

void render(const Report& report, Format format, std::ostream& out) {
    switch (format) {
        case Format::csv: render_csv(report, out); break;
        case Format::json: render_json(report, out); break;
        case Format::markdown: render_markdown(report, out); break;
    }
}

}  // namespace jsa
