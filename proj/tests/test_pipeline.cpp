#include <cmath>

#include "doctest.h"
#include "jsa/errors.hpp"
#include "jsa/pipeline.hpp"
#include "support.hpp"

using namespace jsa;
using namespace jsa::pipeline;

TEST_CASE("planted coefficients are recovered without an intercept") {
    const auto pc = testing::planted_corpus(1);
    const Corpus corpus(pc.articles, pc.journals);
    const auto run = run_regression_pipeline(corpus, pc.journals, 2019, 3, InterceptMode::none);
    REQUIRE(run.fit.coefficients.size() == 6);
    CHECK(run.fit.coefficients[0].name == kJournalAttention);
    for (const auto& c : run.fit.coefficients) CHECK(c.name != regress::kInterceptName);
    const auto& want = testing::planted_coefficients();
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::fabs(run.fit.coefficients[i].b / pc.scale - want[i]) <= 1e-8);
    CHECK(run.design.edition_year == 2021);
    CHECK(run.fit.n == 12 * 25);
}

TEST_CASE("design drops and counts articles without journal covariates") {
    auto pc = testing::planted_corpus(2, 6, 10);
    ArticleRecord orphan = pc.articles.front();
    orphan.article_id = "orphan";
    orphan.journal_id = "UNKNOWN";
    pc.articles.push_back(orphan);
    const Corpus corpus(pc.articles, pc.journals);
    const auto d = assemble_design(corpus, pc.journals, 2019, 3, InterceptMode::include);
    CHECK(d.dropped_unresolved == 1);
    CHECK(d.response.size() == 60);
    CHECK(d.candidates == 61);
    CHECK(d.spec.predictors == predictor_names());
    CHECK(d.spec.include_intercept);
    CHECK_THROWS_AS(assemble_design(corpus, pc.journals, 2010, 3, InterceptMode::include), DataError);
}

TEST_CASE("scatter rows share the journal's 5-year JIF") {
    const auto pc = testing::planted_corpus(4, 1, 15);
    const Corpus corpus(pc.articles, pc.journals);
    const auto t = emit_scatter(corpus, pc.journals, 2019);
    CHECK(t.rows.size() == 15);
    for (const auto& r : t.rows) CHECK(r.jif_5yr == pc.journals[0].jif_5yr);
    CHECK_THROWS_AS(emit_scatter(corpus, pc.journals, 2015), DataError);
}
