#pragma once

// Journal social attention (mean attention per article over a trailing
// publication window), per-year descriptive tables and quartile groupings.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jsa/corpus.hpp"
#include "jsa/stats.hpp"

namespace jsa {

struct JournalAttention {
    std::string journal_id;
    int edition_year = 0;
    int window = 3;
    std::int64_t n_articles = 0;
    /// Integer sum of member attention scores.
    std::int64_t attention_total = 0;
    /// attention_total / n_articles.
    double value = 0.0;

    friend bool operator==(const JournalAttention&, const JournalAttention&) = default;
};

/// Mean attention of the journal's articles published in
/// [edition_year - window + 1, edition_year], from snapshot totals.
/// Throws NoArticlesInWindow if the window is empty, UsageError if window < 1.
JournalAttention journal_social_attention(const Corpus& corpus, const std::string& journal_id,
                                          int edition_year, int window = 3);

struct AttentionTable {
    std::vector<JournalAttention> rows;  // in the order of the requested ids
    std::vector<std::string> excluded;   // no articles in the window
};

/// Indicator for every id in `journal_ids`. Journals with an empty window are
/// listed in `excluded`, never reported as 0. Work is split over `threads`
/// workers; the output does not depend on the thread count.
AttentionTable journal_attention_table(const Corpus& corpus, std::span<const std::string> journal_ids,
                                       int edition_year, int window = 3, unsigned threads = 1);

struct YearDescriptives {
    int pub_year = 0;  // 0 for the aggregate row
    int years_since_pub = 0;
    std::int64_t n_articles = 0;
    double mean_authors = 0.0;
    double pct_oa = 0.0;
    double pct_funded = 0.0;
    double mean_citations = 0.0;
    double mean_attention = 0.0;
    /// Change in mean attention relative to the row one year younger.
    std::optional<double> marginal_variation;
};

struct DescriptiveTable {
    std::vector<YearDescriptives> years;  // newest publication year first
    YearDescriptives all;
};

/// One row per publication year, newest first, plus an aggregate computed
/// from the raw articles. years_since_pub = collection_year - pub_year. The
/// marginal variation of a row is its mean attention minus that of the next
/// younger cohort (the row above); the newest row has none.
/// Throws UsageError on an empty corpus or a collection year not after every
/// publication year.
DescriptiveTable describe_by_year(const Corpus& corpus, int collection_year);

/// Consecutive differences out[i] = means[i + 1] - means[i], in the order
/// given. Throws UsageError for fewer than two values.
std::vector<double> marginal_variation(std::span<const double> means);

struct QuartileGroup {
    Quartile quartile = Quartile::Q1;
    std::vector<std::string> journal_ids;
    std::vector<double> values;
    stats::BoxSummary summary;
    double mean = 0.0;
};

struct QuartileGrouping {
    std::vector<QuartileGroup> groups;  // Q1..Q4, empty groups omitted
    std::vector<std::string> warnings;
};

/// Group per-journal values by JIF quartile. Journals without a value are
/// skipped with a warning.
QuartileGrouping quartile_groups(std::span<const JournalRecord> journals,
                                 const std::map<std::string, double>& values);

}  // namespace jsa
