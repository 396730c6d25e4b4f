#include "jsa/pipeline.hpp"

#include <map>
#include <optional>

#include "jsa/errors.hpp"
#include "jsa/indicators.hpp"

namespace jsa::pipeline {
namespace {

std::map<std::string, const JournalRecord*> by_id(std::span<const JournalRecord> journals) {
    std::map<std::string, const JournalRecord*> m;
    for (const auto& j : journals) m.emplace(j.journal_id, &j);
    return m;
}

}  // namespace

ScatterTable emit_scatter(const Corpus& corpus, std::span<const JournalRecord> journals, int year) {
    const auto lookup = by_id(journals);
    ScatterTable t;
    bool any = false;
    for (const auto& a : corpus.articles()) {
        if (a.pub_year != year) continue;
        any = true;
        auto it = lookup.find(a.journal_id);
        if (it == lookup.end()) {
            ++t.unresolved;
            continue;
        }
        t.rows.push_back({a.article_id, a.journal_id, it->second->jif_5yr, a.attention});
        if (a.attention == 0) ++t.zero_attention;
    }
    if (!any) throw DataError("no articles published in " + std::to_string(year));
    return t;
}

const std::vector<std::string>& predictor_names() {
    static const std::vector<std::string> names = {kJournalAttention, kAuthors,   kOpenAccess,
                                                   kFunded,           kCitations, kImpactFactor};
    return names;
}

Design assemble_design(const Corpus& corpus, std::span<const JournalRecord> journals, int year, int window,
                       InterceptMode mode) {
    if (window < 1) throw UsageError("window must be at least 1 year");
    Design d;
    d.spec.response = kResponse;
    d.spec.predictors = predictor_names();
    d.spec.include_intercept = mode == InterceptMode::include;
    d.edition_year = year + window - 1;
    d.columns.assign(d.spec.predictors.size(), {});

    const auto lookup = by_id(journals);
    std::map<std::string, std::optional<double>> indicator;
    for (const auto& a : corpus.articles()) {
        if (a.pub_year != year) continue;
        ++d.candidates;
        auto jit = lookup.find(a.journal_id);
        if (jit == lookup.end()) {
            ++d.dropped_unresolved;
            continue;
        }
        auto [ind, fresh] = indicator.try_emplace(a.journal_id);
        if (fresh) {
            try {
                ind->second = journal_social_attention(corpus, a.journal_id, d.edition_year, window).value;
            } catch (const NoArticlesInWindow&) {
            }
        }
        if (!ind->second) {
            ++d.dropped_no_indicator;
            continue;
        }
        d.columns[0].push_back(*ind->second);
        d.columns[1].push_back(static_cast<double>(a.n_authors));
        d.columns[2].push_back(a.open_access ? 1.0 : 0.0);
        d.columns[3].push_back(a.funded ? 1.0 : 0.0);
        d.columns[4].push_back(static_cast<double>(a.citations));
        d.columns[5].push_back(jit->second->jif_5yr);
        d.response.push_back(static_cast<double>(a.attention));
        d.article_ids.push_back(a.article_id);
    }
    if (d.response.empty()) {
        throw DataError("regression design for " + std::to_string(year) + " is empty after dropping " +
                        std::to_string(d.dropped_unresolved + d.dropped_no_indicator) + " of " +
                        std::to_string(d.candidates) + " articles");
    }
    return d;
}

RegressionRun run_regression_pipeline(const Corpus& corpus, std::span<const JournalRecord> journals, int year,
                                      int window, InterceptMode mode, std::size_t bins) {
    RegressionRun run;
    run.design = assemble_design(corpus, journals, year, window, mode);
    run.fit = regress::fit_ols(run.design.spec, run.design.columns, run.design.response);
    run.diagnostics = regress::diagnostics(run.fit, run.design.columns, bins);
    return run;
}

}  // namespace jsa::pipeline
