#pragma once

// Article-level analysis slices used by the command-line tool: the
// attention-vs-5-year-JIF scatter and the six-predictor regression design.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jsa/corpus.hpp"
#include "jsa/regress.hpp"

namespace jsa::pipeline {

struct ScatterRow {
    std::string article_id;
    std::string journal_id;
    double jif_5yr = 0.0;
    std::int64_t attention = 0;
};

struct ScatterTable {
    std::vector<ScatterRow> rows;
    std::size_t zero_attention = 0;
    /// Articles of the year whose journal is not in the journal list.
    std::size_t unresolved = 0;
};

/// One row per article of `year` with its journal's 5-year JIF. Throws
/// DataError when the corpus has no article in that year.
ScatterTable emit_scatter(const Corpus& corpus, std::span<const JournalRecord> journals, int year);

enum class InterceptMode { include, none };

inline constexpr const char* kResponse = "Article Social Attention";
inline constexpr const char* kJournalAttention = "Journal Social Attention";
inline constexpr const char* kAuthors = "Num. Authors";
inline constexpr const char* kOpenAccess = "OA Article";
inline constexpr const char* kFunded = "Funded Article";
inline constexpr const char* kCitations = "Article Citations";
inline constexpr const char* kImpactFactor = "Journal Impact Factor";

/// Predictor names in design order.
const std::vector<std::string>& predictor_names();

struct Design {
    regress::DesignSpec spec;
    std::vector<std::vector<double>> columns;  // predictor_names() order
    std::vector<double> response;
    std::vector<std::string> article_ids;
    int edition_year = 0;
    std::size_t candidates = 0;
    std::size_t dropped_unresolved = 0;
    std::size_t dropped_no_indicator = 0;
};

/// Articles of `year` against their journal's indicator at edition
/// year + window - 1, authors, OA, funding, citations and 5-year JIF.
/// Articles whose journal is unknown or has no indicator are dropped and
/// counted. Throws DataError if nothing remains.
Design assemble_design(const Corpus& corpus, std::span<const JournalRecord> journals, int year, int window,
                       InterceptMode mode);

struct RegressionRun {
    Design design;
    regress::RegressionFit fit;
    regress::Diagnostics diagnostics;
};

RegressionRun run_regression_pipeline(const Corpus& corpus, std::span<const JournalRecord> journals, int year,
                                      int window, InterceptMode mode, std::size_t bins = 30);

}  // namespace jsa::pipeline
