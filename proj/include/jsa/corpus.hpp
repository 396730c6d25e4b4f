#pragma once

// Article- and journal-level records, their delimited-text ingestion, and the
// immutable Corpus that indexes articles by (journal, publication year).

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace jsa {

struct ArticleRecord {
    std::string article_id;
    std::string journal_id;
    int pub_year = 0;
    int n_authors = 1;
    bool open_access = false;
    bool funded = false;
    std::int64_t citations = 0;
    std::int64_t attention = 0;

    friend bool operator==(const ArticleRecord&, const ArticleRecord&) = default;
};

enum class Quartile { Q1 = 1, Q2 = 2, Q3 = 3, Q4 = 4 };

const char* quartile_label(Quartile q) noexcept;
std::optional<Quartile> parse_quartile(std::string_view s) noexcept;

/// Quartile implied by thresholding a JIF percentile at 25/50/75.
Quartile nominal_quartile(double percentile) noexcept;

struct JournalRecord {
    std::string journal_id;
    std::string name;
    std::int64_t n_articles_2020 = 0;
    double jif = 0.0;
    double jif_5yr = 0.0;
    double jif_percentile = 0.0;
    Quartile jif_quartile = Quartile::Q4;
    /// Journal social attention as published alongside the JIF data, when the
    /// input carries that column.
    std::optional<double> reported_attention;

    friend bool operator==(const JournalRecord&, const JournalRecord&) = default;
};

struct Issue {
    /// Physical line number for parse issues, 1-based record position for
    /// corpus checks.
    std::size_t row = 0;
    std::string field;
    std::string message;

    friend bool operator==(const Issue&, const Issue&) = default;
};

struct ValidationReport {
    std::vector<Issue> errors;
    std::vector<Issue> warnings;
    std::size_t read = 0;
    std::size_t accepted = 0;
    std::size_t rejected = 0;

    bool ok() const noexcept { return errors.empty(); }
};

struct YearRange {
    int first = 2012;
    int last = 2021;

    bool contains(int y) const noexcept { return y >= first && y <= last; }
    friend bool operator==(const YearRange&, const YearRange&) = default;
};

/// Canonical article column names, in canonical order.
const std::vector<std::string>& article_columns();

/// Canonical journal columns; the trailing `journal_social_attention` is optional.
const std::vector<std::string>& journal_columns();

/// Maps canonical column names to the headers used by a third-party export.
/// Unmapped names resolve to themselves.
class ColumnMapping {
public:
    ColumnMapping() = default;

    /// Parse `canonical_name=source_header` lines; blank lines and lines
    /// starting with '#' are ignored. Throws SchemaError on malformed lines
    /// or unknown canonical names.
    static ColumnMapping parse(std::istream& in);

    void set(const std::string& canonical, const std::string& source);
    const std::string& source_for(const std::string& canonical) const;

private:
    std::map<std::string, std::string> map_;
};

struct ArticleParseOptions {
    ColumnMapping mapping;
    YearRange years;
};

template <class Record>
struct Parsed {
    std::vector<Record> records;
    ValidationReport report;
};

/// Throws SchemaError for an empty stream or an unresolvable column.
Parsed<ArticleRecord> parse_articles(std::istream& in, const ArticleParseOptions& options = {});

/// Throws SchemaError for a missing column or a duplicate journal_id.
Parsed<JournalRecord> parse_journals(std::istream& in);

void write_articles(std::ostream& out, std::span<const ArticleRecord> articles);
void write_journals(std::ostream& out, std::span<const JournalRecord> journals);

/// Articles and journals with an index from (journal_id, pub_year) to article
/// positions. Immutable once built; concurrent reads are safe.
class Corpus {
public:
    using Key = std::pair<std::string, int>;

    Corpus() = default;
    Corpus(std::vector<ArticleRecord> articles, std::vector<JournalRecord> journals);

    const std::vector<ArticleRecord>& articles() const noexcept { return articles_; }
    const std::vector<JournalRecord>& journals() const noexcept { return journals_; }

    /// Positions into articles() for one journal-year, in input order.
    std::span<const std::size_t> articles_in(const std::string& journal_id, int year) const;

    const JournalRecord* find_journal(const std::string& journal_id) const;

    /// Journal ids that have at least one article, sorted.
    std::vector<std::string> article_journal_ids() const;

    /// Publication years present, ascending.
    std::vector<int> years() const;

    bool empty() const noexcept { return articles_.empty(); }

    friend bool operator==(const Corpus& a, const Corpus& b) {
        return a.articles_ == b.articles_ && a.journals_ == b.journals_;
    }

private:
    std::vector<ArticleRecord> articles_;
    std::vector<JournalRecord> journals_;
    std::map<Key, std::vector<std::size_t>> index_;
    std::map<std::string, std::size_t> journal_pos_;
};

/// Report unresolved journals (warning), duplicate article ids (error) and
/// publication years outside `years` (error). Never mutates the corpus.
ValidationReport validate_corpus(const Corpus& corpus, const YearRange& years = {});

/// Articles in `years` (and in `journals` when given). The journal list keeps
/// journals with at least one remaining article plus any explicitly
/// requested. Throws UsageError on an inverted range.
Corpus filter_corpus(const Corpus& corpus, const YearRange& years,
                     const std::optional<std::set<std::string>>& journals = std::nullopt);

/// Concatenate two corpora (a's records first). Journals present in both are
/// kept once, from `a`.
Corpus merge_corpora(const Corpus& a, const Corpus& b);

}  // namespace jsa
