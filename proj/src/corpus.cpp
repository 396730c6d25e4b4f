#include "jsa/corpus.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "jsa/csv.hpp"
#include "jsa/errors.hpp"

namespace jsa {
namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

template <class Int>
std::optional<Int> parse_int(std::string_view s) {
    Int v{};
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
    return v;
}

std::optional<double> parse_real(std::string_view s) {
    double v{};
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<bool> parse_bool(std::string_view s) {
    const std::string v = lower(s);
    if (v == "1" || v == "true") return true;
    if (v == "0" || v == "false") return false;
    return std::nullopt;
}

std::string format_real(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

bool is_blank_row(const csv::Row& row) { return row.size() == 1 && csv::trim(row[0]).empty(); }

void strip_bom(csv::Row& header) {
    if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0) header[0].erase(0, 3);
}

std::unordered_map<std::string, std::size_t> header_positions(const csv::Row& header) {
    std::unordered_map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < header.size(); ++i) pos.emplace(csv::trim(header[i]), i);
    return pos;
}

// Collects per-row field errors; a row is rejected if any were recorded.
struct RowCheck {
    std::size_t line;
    std::vector<Issue>& errors;
    bool bad = false;

    void fail(const std::string& field, std::string message) {
        errors.push_back({line, field, std::move(message)});
        bad = true;
    }
};

}  // namespace

const char* quartile_label(Quartile q) noexcept {
    switch (q) {
        case Quartile::Q1: return "Q1";
        case Quartile::Q2: return "Q2";
        case Quartile::Q3: return "Q3";
        case Quartile::Q4: return "Q4";
    }
    return "Q4";
}

std::optional<Quartile> parse_quartile(std::string_view s) noexcept {
    if (s.size() != 2 || (s[0] != 'Q' && s[0] != 'q')) return std::nullopt;
    switch (s[1]) {
        case '1': return Quartile::Q1;
        case '2': return Quartile::Q2;
        case '3': return Quartile::Q3;
        case '4': return Quartile::Q4;
        default: return std::nullopt;
    }
}

Quartile nominal_quartile(double percentile) noexcept {
    if (percentile >= 75.0) return Quartile::Q1;
    if (percentile >= 50.0) return Quartile::Q2;
    if (percentile >= 25.0) return Quartile::Q3;
    return Quartile::Q4;
}

const std::vector<std::string>& article_columns() {
    static const std::vector<std::string> cols = {"article_id", "journal_id", "pub_year",
                                                  "n_authors",  "open_access", "funded",
                                                  "citations",  "attention"};
    return cols;
}

const std::vector<std::string>& journal_columns() {
    static const std::vector<std::string> cols = {
        "journal_id", "name",           "n_articles_2020", "jif",
        "jif_5yr",    "jif_percentile", "jif_quartile",    "journal_social_attention"};
    return cols;
}

ColumnMapping ColumnMapping::parse(std::istream& in) {
    ColumnMapping m;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = csv::trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw SchemaError("mapping line " + std::to_string(lineno) + ": expected canonical=source");
        }
        m.set(csv::trim(std::string_view(t).substr(0, eq)), csv::trim(std::string_view(t).substr(eq + 1)));
    }
    return m;
}

void ColumnMapping::set(const std::string& canonical, const std::string& source) {
    const auto& cols = article_columns();
    if (std::find(cols.begin(), cols.end(), canonical) == cols.end()) {
        throw SchemaError("mapping names unknown column '" + canonical + "'");
    }
    if (source.empty()) throw SchemaError("mapping for '" + canonical + "' has an empty source header");
    map_[canonical] = source;
}

const std::string& ColumnMapping::source_for(const std::string& canonical) const {
    auto it = map_.find(canonical);
    return it == map_.end() ? canonical : it->second;
}

Parsed<ArticleRecord> parse_articles(std::istream& in, const ArticleParseOptions& options) {
    csv::Reader reader(in);
    auto header = reader.next();
    if (!header || is_blank_row(*header)) throw SchemaError("article input is empty");
    strip_bom(*header);
    const auto pos = header_positions(*header);

    std::array<std::size_t, 8> col{};
    const auto& canon = article_columns();
    for (std::size_t k = 0; k < canon.size(); ++k) {
        const std::string& src = options.mapping.source_for(canon[k]);
        auto it = pos.find(src);
        if (it == pos.end()) {
            throw SchemaError("article input lacks column '" + src + "' (for " + canon[k] + ")");
        }
        col[k] = it->second;
    }
    const std::size_t need = *std::max_element(col.begin(), col.end()) + 1;

    Parsed<ArticleRecord> out;
    auto& rep = out.report;
    while (auto row = reader.next()) {
        if (is_blank_row(*row)) continue;
        ++rep.read;
        RowCheck check{reader.line(), rep.errors};
        if (row->size() < need) {
            check.fail("", "expected at least " + std::to_string(need) + " fields, found " +
                               std::to_string(row->size()));
            ++rep.rejected;
            continue;
        }
        auto cell = [&](std::size_t k) { return csv::trim((*row)[col[k]]); };

        ArticleRecord a;
        a.article_id = cell(0);
        if (a.article_id.empty()) check.fail("article_id", "article_id is blank");
        a.journal_id = cell(1);
        if (a.journal_id.empty()) check.fail("journal_id", "journal_id is blank");

        if (auto y = parse_int<int>(cell(2))) {
            a.pub_year = *y;
            if (!options.years.contains(a.pub_year)) {
                check.fail("pub_year", "pub_year " + std::to_string(a.pub_year) + " outside " +
                                           std::to_string(options.years.first) + "-" +
                                           std::to_string(options.years.last));
            }
        } else {
            check.fail("pub_year", "pub_year is not an integer: '" + cell(2) + "'");
        }

        if (auto n = parse_int<int>(cell(3))) {
            a.n_authors = *n;
            if (a.n_authors < 1) check.fail("n_authors", "n_authors must be ≥ 1");
        } else {
            check.fail("n_authors", "n_authors is not an integer: '" + cell(3) + "'");
        }

        if (auto b = parse_bool(cell(4))) {
            a.open_access = *b;
        } else {
            check.fail("open_access", "open_access is not a boolean: '" + cell(4) + "'");
        }
        if (auto b = parse_bool(cell(5))) {
            a.funded = *b;
        } else {
            check.fail("funded", "funded is not a boolean: '" + cell(5) + "'");
        }

        if (auto c = parse_int<std::int64_t>(cell(6))) {
            a.citations = *c;
            if (a.citations < 0) check.fail("citations", "citations must be ≥ 0");
        } else {
            check.fail("citations", "citations is not an integer: '" + cell(6) + "'");
        }

        const std::string att = cell(7);
        if (att.empty()) {
            a.attention = 0;
            rep.warnings.push_back({reader.line(), "attention", "blank attention treated as 0"});
        } else if (auto s = parse_int<std::int64_t>(att)) {
            a.attention = *s;
            if (a.attention < 0) check.fail("attention", "attention must be ≥ 0");
        } else {
            check.fail("attention", "attention is not an integer: '" + att + "'");
        }

        if (check.bad) {
            ++rep.rejected;
        } else {
            ++rep.accepted;
            out.records.push_back(std::move(a));
        }
    }
    return out;
}

Parsed<JournalRecord> parse_journals(std::istream& in) {
    csv::Reader reader(in);
    auto header = reader.next();
    if (!header || is_blank_row(*header)) throw SchemaError("journal input is empty");
    strip_bom(*header);
    const auto pos = header_positions(*header);

    const auto& canon = journal_columns();
    std::array<std::size_t, 8> col{};
    bool has_attention = false;
    for (std::size_t k = 0; k < canon.size(); ++k) {
        auto it = pos.find(canon[k]);
        if (it == pos.end()) {
            if (k + 1 == canon.size()) break;
            throw SchemaError("journal input lacks column '" + canon[k] + "'");
        }
        col[k] = it->second;
        if (k + 1 == canon.size()) has_attention = true;
    }
    const std::size_t need =
        *std::max_element(col.begin(), col.begin() + (has_attention ? 8 : 7)) + 1;

    Parsed<JournalRecord> out;
    auto& rep = out.report;
    std::unordered_set<std::string> seen;
    while (auto row = reader.next()) {
        if (is_blank_row(*row)) continue;
        ++rep.read;
        const std::size_t line = reader.line();
        RowCheck check{line, rep.errors};
        if (row->size() < need) {
            check.fail("", "expected at least " + std::to_string(need) + " fields, found " +
                               std::to_string(row->size()));
            ++rep.rejected;
            continue;
        }
        auto cell = [&](std::size_t k) { return csv::trim((*row)[col[k]]); };

        JournalRecord j;
        j.journal_id = cell(0);
        if (j.journal_id.empty()) check.fail("journal_id", "journal_id is blank");
        if (!j.journal_id.empty() && !seen.insert(j.journal_id).second) {
            throw SchemaError("duplicate journal_id '" + j.journal_id + "' on line " + std::to_string(line));
        }
        j.name = cell(1);

        if (auto n = parse_int<std::int64_t>(cell(2)); n && *n >= 0) {
            j.n_articles_2020 = *n;
        } else {
            check.fail("n_articles_2020", "n_articles_2020 must be a non-negative integer");
        }

        auto nonneg = [&](std::size_t k, const char* field, double& dst) {
            if (auto v = parse_real(cell(k)); v && *v >= 0.0) {
                dst = *v;
            } else {
                check.fail(field, std::string(field) + " must be a non-negative number: '" + cell(k) + "'");
            }
        };
        nonneg(3, "jif", j.jif);
        nonneg(4, "jif_5yr", j.jif_5yr);

        bool percentile_ok = false;
        if (auto p = parse_real(cell(5))) {
            j.jif_percentile = *p;
            percentile_ok = *p >= 0.0 && *p <= 100.0;
            if (!percentile_ok) check.fail("jif_percentile", "jif_percentile outside [0,100]");
        } else {
            check.fail("jif_percentile", "jif_percentile is not a number: '" + cell(5) + "'");
        }

        bool quartile_ok = false;
        if (auto q = parse_quartile(cell(6))) {
            j.jif_quartile = *q;
            quartile_ok = true;
        } else {
            check.fail("jif_quartile", "jif_quartile must be one of Q1..Q4: '" + cell(6) + "'");
        }

        if (has_attention) {
            const std::string v = cell(7);
            if (!v.empty()) {
                if (auto a = parse_real(v); a && *a >= 0.0) {
                    j.reported_attention = *a;
                } else {
                    check.fail("journal_social_attention", "journal_social_attention must be a non-negative number");
                }
            }
        }

        if (percentile_ok && quartile_ok) {
            // JCR ranks journals, so the printed percentile and the quartile
            // label can disagree near a boundary. Never an error.
            const double p = j.jif_percentile;
            const bool near = std::fabs(p - 25.0) <= 1.5 || std::fabs(p - 50.0) <= 1.5 ||
                              std::fabs(p - 75.0) <= 1.5;
            const Quartile nominal = nominal_quartile(p);
            const int bands = std::abs(static_cast<int>(j.jif_quartile) - static_cast<int>(nominal));
            std::string msg = "percentile " + format_real(p) + " labelled " + quartile_label(j.jif_quartile) +
                              " (nominal " + quartile_label(nominal) + ")";
            if (bands > 1) {
                rep.warnings.push_back({line, "jif_quartile", msg + ": disagrees by more than one band"});
            } else if (near) {
                rep.warnings.push_back({line, "jif_quartile", msg + ": within 1.5 of a quartile boundary"});
            } else if (bands == 1) {
                rep.warnings.push_back({line, "jif_quartile", msg + ": disagrees with percentile"});
            }
        }

        if (check.bad) {
            ++rep.rejected;
        } else {
            ++rep.accepted;
            out.records.push_back(std::move(j));
        }
    }
    return out;
}

void write_articles(std::ostream& out, std::span<const ArticleRecord> articles) {
    csv::write_row(out, article_columns());
    for (const auto& a : articles) {
        csv::write_row(out, {a.article_id, a.journal_id, std::to_string(a.pub_year),
                             std::to_string(a.n_authors), a.open_access ? "1" : "0", a.funded ? "1" : "0",
                             std::to_string(a.citations), std::to_string(a.attention)});
    }
}

void write_journals(std::ostream& out, std::span<const JournalRecord> journals) {
    csv::write_row(out, journal_columns());
    for (const auto& j : journals) {
        csv::write_row(out, {j.journal_id, j.name, std::to_string(j.n_articles_2020), format_real(j.jif),
                             format_real(j.jif_5yr), format_real(j.jif_percentile),
                             quartile_label(j.jif_quartile),
                             j.reported_attention ? format_real(*j.reported_attention) : std::string()});
    }
}

Corpus::Corpus(std::vector<ArticleRecord> articles, std::vector<JournalRecord> journals)
    : articles_(std::move(articles)), journals_(std::move(journals)) {
    for (std::size_t i = 0; i < journals_.size(); ++i) {
        if (!journal_pos_.emplace(journals_[i].journal_id, i).second) {
            throw DataError("duplicate journal_id '" + journals_[i].journal_id + "' in corpus");
        }
    }
    for (std::size_t i = 0; i < articles_.size(); ++i) {
        index_[{articles_[i].journal_id, articles_[i].pub_year}].push_back(i);
    }
}

std::span<const std::size_t> Corpus::articles_in(const std::string& journal_id, int year) const {
    auto it = index_.find({journal_id, year});
    if (it == index_.end()) return {};
    return it->second;
}

const JournalRecord* Corpus::find_journal(const std::string& journal_id) const {
    auto it = journal_pos_.find(journal_id);
    return it == journal_pos_.end() ? nullptr : &journals_[it->second];
}

std::vector<std::string> Corpus::article_journal_ids() const {
    std::vector<std::string> ids;
    for (const auto& [key, _] : index_) {
        if (ids.empty() || ids.back() != key.first) ids.push_back(key.first);
    }
    return ids;
}

std::vector<int> Corpus::years() const {
    std::set<int> ys;
    for (const auto& [key, _] : index_) ys.insert(key.second);
    return {ys.begin(), ys.end()};
}

ValidationReport validate_corpus(const Corpus& corpus, const YearRange& years) {
    ValidationReport rep;
    std::unordered_set<std::string> ids;
    const auto& arts = corpus.articles();
    rep.read = arts.size();
    for (std::size_t i = 0; i < arts.size(); ++i) {
        const auto& a = arts[i];
        const std::size_t row = i + 1;
        bool bad = false;
        if (!ids.insert(a.article_id).second) {
            rep.errors.push_back({row, "article_id", "duplicate id '" + a.article_id + "'"});
            bad = true;
        }
        if (!years.contains(a.pub_year)) {
            rep.errors.push_back({row, "pub_year", "pub_year " + std::to_string(a.pub_year) + " out of range"});
            bad = true;
        }
        if (!corpus.find_journal(a.journal_id)) {
            rep.warnings.push_back({row, "journal_id", "unresolved journal '" + a.journal_id + "'"});
        }
        bad ? ++rep.rejected : ++rep.accepted;
    }
    return rep;
}

Corpus filter_corpus(const Corpus& corpus, const YearRange& years,
                     const std::optional<std::set<std::string>>& journals) {
    if (years.first > years.last) {
        throw UsageError("inverted year range " + std::to_string(years.first) + "-" + std::to_string(years.last));
    }
    std::vector<ArticleRecord> kept;
    std::unordered_set<std::string> used;
    for (const auto& a : corpus.articles()) {
        if (!years.contains(a.pub_year)) continue;
        if (journals && !journals->contains(a.journal_id)) continue;
        kept.push_back(a);
        used.insert(a.journal_id);
    }
    std::vector<JournalRecord> js;
    for (const auto& j : corpus.journals()) {
        if (used.contains(j.journal_id) || (journals && journals->contains(j.journal_id))) js.push_back(j);
    }
    return Corpus(std::move(kept), std::move(js));
}

Corpus merge_corpora(const Corpus& a, const Corpus& b) {
    std::vector<ArticleRecord> arts = a.articles();
    arts.insert(arts.end(), b.articles().begin(), b.articles().end());
    std::vector<JournalRecord> js = a.journals();
    for (const auto& j : b.journals()) {
        if (!a.find_journal(j.journal_id)) js.push_back(j);
    }
    return Corpus(std::move(arts), std::move(js));
}

}  // namespace jsa
