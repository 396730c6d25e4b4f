#include "jsa/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "jsa/corpus.hpp"
#include "jsa/errors.hpp"
#include "jsa/indicators.hpp"
#include "jsa/pipeline.hpp"
#include "jsa/regress.hpp"
#include "jsa/report.hpp"
#include "jsa/stats.hpp"
#include "jsa/synth.hpp"

namespace jsa::cli {
namespace {

struct Options {
    std::string out = "-";
    std::string format = "csv";
    std::string articles;
    std::string journals;
    std::string mapping;
    std::string years = "2012-2021";
    int year = 2019;
    int edition = 2021;
    int window = 3;
    int collected = 2022;
    std::string intercept = "include";
    std::size_t bins = 30;
    std::string emit = "coefficients";
    std::string metric = "attention";
    unsigned threads = 1;
    // synth-windows
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n_journals;
    std::string windows = "1,2,3";
    std::size_t runs = 1;
    bool real_scores = false;
    bool dump_corpus = false;
};

YearRange parse_years(const std::string& s) {
    auto to_int = [&](std::string_view v) {
        int out = 0;
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc() || p != v.data() + v.size() || v.empty()) {
            throw UsageError("bad year range '" + s + "' (expected YYYY or YYYY-YYYY)");
        }
        return out;
    };
    const auto dash = s.find('-');
    YearRange r;
    if (dash == std::string::npos) {
        r.first = r.last = to_int(s);
    } else {
        r.first = to_int(std::string_view(s).substr(0, dash));
        r.last = to_int(std::string_view(s).substr(dash + 1));
    }
    if (r.first > r.last) throw UsageError("inverted year range '" + s + "'");
    return r;
}

std::vector<int> parse_windows(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int w = 0;
        auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), w);
        if (ec != std::errc() || p != item.data() + item.size() || w < 1) {
            throw UsageError("bad window list '" + s + "'");
        }
        out.push_back(w);
    }
    if (out.empty()) throw UsageError("empty window list");
    return out;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    return in;
}

struct Loaded {
    Parsed<ArticleRecord> articles;
    Parsed<JournalRecord> journals;
    bool have_articles = false;
    bool have_journals = false;

    std::vector<std::string> footnotes() const {
        std::vector<std::string> f;
        if (have_articles && articles.report.rejected) {
            f.push_back(std::to_string(articles.report.rejected) + " of " + std::to_string(articles.report.read) +
                        " article rows rejected");
        }
        if (have_journals && journals.report.rejected) {
            f.push_back(std::to_string(journals.report.rejected) + " of " + std::to_string(journals.report.read) +
                        " journal rows rejected");
        }
        return f;
    }

    Corpus corpus() const {
        return Corpus(articles.records, have_journals ? journals.records : std::vector<JournalRecord>{});
    }
};

Loaded load(const Options& o, bool need_articles, bool need_journals) {
    Loaded l;
    if (need_articles && o.articles.empty()) throw UsageError("--articles is required");
    if (need_journals && o.journals.empty()) throw UsageError("--journals is required");
    if (!o.articles.empty()) {
        ArticleParseOptions po;
        po.years = parse_years(o.years);
        if (!o.mapping.empty()) {
            auto m = open_input(o.mapping);
            po.mapping = ColumnMapping::parse(m);
        }
        auto in = open_input(o.articles);
        l.articles = parse_articles(in, po);
        l.have_articles = true;
    }
    if (!o.journals.empty()) {
        auto in = open_input(o.journals);
        l.journals = parse_journals(in);
        l.have_journals = true;
    }
    return l;
}

std::string corr_text(double r) {
    std::string s = fixed(r, 2);
    if (s.rfind("0.", 0) == 0) s.erase(0, 1);
    if (s.rfind("-0.", 0) == 0) s.erase(1, 1);
    return s;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const Options& o, Report& rep) {
    if (o.articles.empty() && o.journals.empty()) throw UsageError("validate needs --articles and/or --journals");
    const Loaded l = load(o, false, false);
    rep.title = "Validation report";
    rep.columns = {"Source", "Severity", "Row", "Field", "Message"};
    auto add = [&](const char* src, const char* sev, const std::vector<Issue>& issues) {
        for (const auto& i : issues) {
            rep.add_row({text_cell(src), text_cell(sev), int_cell(static_cast<long long>(i.row)), text_cell(i.field),
                         text_cell(i.message)});
        }
    };
    std::size_t errors = 0;
    if (l.have_articles) {
        add("articles", "error", l.articles.report.errors);
        add("articles", "warning", l.articles.report.warnings);
        errors += l.articles.report.errors.size();
        const auto& r = l.articles.report;
        rep.footnotes.push_back("articles: " + std::to_string(r.read) + " read, " + std::to_string(r.accepted) +
                                " accepted, " + std::to_string(r.rejected) + " rejected");
    }
    if (l.have_journals) {
        add("journals", "error", l.journals.report.errors);
        add("journals", "warning", l.journals.report.warnings);
        errors += l.journals.report.errors.size();
        const auto& r = l.journals.report;
        rep.footnotes.push_back("journals: " + std::to_string(r.read) + " read, " + std::to_string(r.accepted) +
                                " accepted, " + std::to_string(r.rejected) + " rejected");
    }
    if (l.have_articles) {
        ValidationReport cr = validate_corpus(l.corpus(), parse_years(o.years));
        if (!l.have_journals) {
            std::erase_if(cr.warnings, [](const Issue& i) { return i.field == "journal_id"; });
        }
        add("corpus", "error", cr.errors);
        add("corpus", "warning", cr.warnings);
        errors += cr.errors.size();
    }
    rep.footnotes.push_back(std::to_string(errors) + " error(s)");
    return errors ? kExitData : kExitOk;
}

// ---------------------------------------------------------------- describe

void cmd_describe(const Options& o, Report& rep) {
    const Loaded l = load(o, true, false);
    const auto t = describe_by_year(l.corpus(), o.collected);
    rep.title = "Descriptive statistics at the article level";
    rep.columns = {"Years since Pub.",   "Year of Pub.",     "Num. Art.",
                   "Num. Authors (Mean)", "OA Art. (%)",     "Funded Art. (%)",
                   "Citations (Mean)",    "Art. Social Attention Mean Score", "Marg. Var."};
    auto pct = [](double v) { return Cell{fixed(v, 2) + "%", v}; };
    auto row = [&](const YearDescriptives& d, bool all) {
        rep.add_row({all ? text_cell("All") : int_cell(d.years_since_pub), all ? text_cell("") : int_cell(d.pub_year),
                     int_cell(d.n_articles), num_cell(d.mean_authors, 2), pct(d.pct_oa), pct(d.pct_funded),
                     num_cell(d.mean_citations, 2), num_cell(d.mean_attention, 2),
                     d.marginal_variation ? num_cell(*d.marginal_variation, 2) : text_cell("")});
    };
    for (const auto& d : t.years) row(d, false);
    row(t.all, true);
    rep.footnotes.push_back("Years since publication counted to data collection in " + std::to_string(o.collected));
    for (auto& f : l.footnotes()) rep.footnotes.push_back(std::move(f));
}

// ------------------------------------------------------- journal-attention

void cmd_journal_attention(const Options& o, Report& rep) {
    const Loaded l = load(o, true, false);
    const Corpus corpus = l.corpus();
    std::vector<std::string> ids;
    if (l.have_journals) {
        for (const auto& j : l.journals.records) ids.push_back(j.journal_id);
    } else {
        ids = corpus.article_journal_ids();
    }
    const auto table = journal_attention_table(corpus, ids, o.edition, o.window, o.threads);
    rep.title = "Journal social attention " + std::to_string(o.edition) + " (window " +
                std::to_string(o.edition - o.window + 1) + "-" + std::to_string(o.edition) + ")";
    rep.columns = {"Journal", "Name", "Num. Art. in Window", "Total Attention", "Journal Social Attention"};
    for (const auto& r : table.rows) {
        const JournalRecord* j = corpus.find_journal(r.journal_id);
        rep.add_row({text_cell(r.journal_id), text_cell(j ? j->name : ""), int_cell(r.n_articles),
                     int_cell(r.attention_total), num_cell(r.value, 2)});
    }
    if (!table.excluded.empty()) {
        std::string ex = std::to_string(table.excluded.size()) + " journal(s) without articles in the window excluded:";
        for (const auto& id : table.excluded) ex += " " + id;
        rep.footnotes.push_back(ex);
    }
    for (auto& f : l.footnotes()) rep.footnotes.push_back(std::move(f));
}

// ---------------------------------------------------------------- correlate

void cmd_correlate(const Options& o, Report& rep) {
    const Loaded l = load(o, true, true);
    const auto d = pipeline::assemble_design(l.corpus(), l.journals.records, o.year, o.window,
                                             pipeline::InterceptMode::include);
    std::vector<std::vector<double>> cols;
    cols.push_back(d.response);
    cols.insert(cols.end(), d.columns.begin(), d.columns.end());
    std::vector<std::string> names = {pipeline::kResponse};
    names.insert(names.end(), d.spec.predictors.begin(), d.spec.predictors.end());
    const auto m = stats::correlation_matrix(cols);

    rep.title = "Means, SDs and Pearson correlations (articles of " + std::to_string(o.year) + ")";
    rep.columns = {"Variable", "Mean", "SD"};
    for (std::size_t i = 0; i < names.size(); ++i) rep.columns.push_back(std::to_string(i + 1));
    for (std::size_t i = 0; i < names.size(); ++i) {
        std::vector<Cell> row = {text_cell(std::to_string(i + 1) + ". " + names[i]),
                                 num_cell(m.summaries[i].mean, 2), num_cell(m.summaries[i].sd, 2)};
        for (std::size_t j = 0; j < names.size(); ++j) {
            if (j == i) {
                row.push_back(text_cell("-"));
            } else if (j < i) {
                row.push_back(text_cell(""));
            } else if (const auto& c = m.results[i][j]) {
                row.push_back(Cell{corr_text(c->r) + stats::stars_label(c->stars), c->r});
            } else {
                row.push_back(text_cell("n/a"));
            }
        }
        rep.add_row(std::move(row));
    }
    rep.footnotes.push_back("*p < 0.05. **p < 0.01.");
    rep.footnotes.push_back("N = " + std::to_string(d.response.size()) + "; journal attention edition " +
                            std::to_string(d.edition_year));
    if (d.dropped_unresolved + d.dropped_no_indicator) {
        rep.footnotes.push_back("dropped " + std::to_string(d.dropped_unresolved) + " article(s) with unknown journal, " +
                                std::to_string(d.dropped_no_indicator) + " without journal attention");
    }
    for (auto& f : l.footnotes()) rep.footnotes.push_back(std::move(f));
}

// ---------------------------------------------------------------- regress

void cmd_regress(const Options& o, Report& rep) {
    pipeline::InterceptMode mode;
    if (o.intercept == "include") {
        mode = pipeline::InterceptMode::include;
    } else if (o.intercept == "none") {
        mode = pipeline::InterceptMode::none;
    } else {
        throw UsageError("--intercept must be 'include' or 'none'");
    }
    const Loaded l = load(o, true, true);
    const auto run = pipeline::run_regression_pipeline(l.corpus(), l.journals.records, o.year, o.window, mode, o.bins);
    const auto& fit = run.fit;
    const auto& dg = run.diagnostics;

    if (o.emit == "coefficients") {
        rep.title = "Regression coefficients for the prediction of Article Social Attention";
        rep.columns = {"Variable", "B (Coeff.)", "95% CI", "β (Standardized Coeff.)", "t", "p (Sig.)"};
        for (const auto& c : fit.coefficients) {
            rep.add_row({text_cell(c.name), num_cell(c.b, 3),
                         text_cell("[" + fixed(c.ci_low, 3) + ", " + fixed(c.ci_high, 3) + "]"),
                         num_cell(c.beta, 3), num_cell(c.t_stat, 3), p_cell(c.p_two_tailed)});
        }
        const std::string n = std::to_string(fit.n);
        if (fit.spec.include_intercept) {
            rep.footnotes.push_back("Adjusted R-square = " + fixed(fit.adj_r2, 3) + " (N=" + n + "); R-square = " +
                                    fixed(fit.r2, 3));
        } else {
            rep.footnotes.push_back("No intercept. Uncentered R-square = " + fixed(fit.r2_uncentered, 3) +
                                    " (adjusted " + fixed(fit.adj_r2, 3) + "); centered R-square = " +
                                    fixed(fit.r2_centered, 3) + " (N=" + n + ")");
        }
        rep.footnotes.push_back("ANOVA F(" + std::to_string(fit.df_model) + ", " + std::to_string(fit.df_resid) +
                                ") = " + fixed(fit.f_stat, 3) + ", p = " + p_cell(fit.p_f).text);
        rep.footnotes.push_back("CI = confidence interval for B. Journal attention edition " +
                                std::to_string(run.design.edition_year) + " (window " + std::to_string(o.window) + ")");
        std::string vif = "VIF:";
        for (const auto& name : fit.spec.predictors) vif += " " + name + " " + fixed(dg.vif.at(name), 3) + ";";
        vif.pop_back();
        rep.footnotes.push_back(vif);
        rep.footnotes.push_back("Condition estimate " + fixed(fit.condition_estimate, 3));
    } else if (o.emit == "histogram") {
        rep.title = "Residual histogram";
        rep.columns = {"Bin Low", "Bin High", "Count"};
        for (const auto& b : dg.residual_histogram) {
            rep.add_row({num_cell(b.low, 6), num_cell(b.high, 6), int_cell(static_cast<long long>(b.count))});
        }
        rep.footnotes.push_back("Skewness " + fixed(dg.skewness, 6) + "; excess kurtosis " +
                                (dg.excess_kurtosis ? fixed(*dg.excess_kurtosis, 6) : std::string("undefined")));
    } else if (o.emit == "residuals") {
        rep.title = "Residuals against predicted values";
        rep.columns = {"article_id", "predicted", "residual"};
        for (std::size_t i = 0; i < dg.resid_vs_fitted.size(); ++i) {
            rep.add_row({text_cell(run.design.article_ids[i]), num_cell(dg.resid_vs_fitted[i].first, 6),
                         num_cell(dg.resid_vs_fitted[i].second, 6)});
        }
    } else {
        throw UsageError("--emit must be coefficients, histogram or residuals");
    }
    if (run.design.dropped_unresolved + run.design.dropped_no_indicator) {
        rep.footnotes.push_back("dropped " + std::to_string(run.design.dropped_unresolved) +
                                " article(s) with unknown journal, " +
                                std::to_string(run.design.dropped_no_indicator) + " without journal attention");
    }
    for (auto& f : l.footnotes()) rep.footnotes.push_back(std::move(f));
}

// ---------------------------------------------------------------- quartiles

void cmd_quartiles(const Options& o, Report& rep) {
    const Loaded l = load(o, false, true);
    std::map<std::string, double> values;
    std::string what;
    if (o.metric == "jif5") {
        for (const auto& j : l.journals.records) values[j.journal_id] = j.jif_5yr;
        what = "5-year JIF";
    } else if (o.metric == "attention") {
        if (!o.articles.empty()) {
            const Loaded la = load(o, true, false);
            const Corpus corpus(la.articles.records, l.journals.records);
            std::vector<std::string> ids;
            for (const auto& j : l.journals.records) ids.push_back(j.journal_id);
            for (const auto& r : journal_attention_table(corpus, ids, o.edition, o.window, o.threads).rows) {
                values[r.journal_id] = r.value;
            }
            what = "journal social attention " + std::to_string(o.edition) + " (computed)";
        } else {
            for (const auto& j : l.journals.records) {
                if (j.reported_attention) values[j.journal_id] = *j.reported_attention;
            }
            what = "journal social attention (reported)";
        }
    } else {
        throw UsageError("--metric must be 'attention' or 'jif5'");
    }
    const auto g = quartile_groups(l.journals.records, values);
    rep.title = "Box summary of " + what + " by JIF quartile";
    rep.columns = {"Quartile", "Journals", "Mean",   "Min",          "Whisker Low", "Q1",
                   "Median",   "Q3",       "Whisker High", "Max", "Outliers"};
    for (const auto& grp : g.groups) {
        const auto& s = grp.summary;
        rep.add_row({text_cell(quartile_label(grp.quartile)), int_cell(static_cast<long long>(grp.values.size())),
                     num_cell(grp.mean, 3), num_cell(s.min, 3), num_cell(s.whisker_low, 3), num_cell(s.q1, 3),
                     num_cell(s.median, 3), num_cell(s.q3, 3), num_cell(s.whisker_high, 3), num_cell(s.max, 3),
                     int_cell(static_cast<long long>(s.outliers.size()))});
    }
    for (std::size_t a = 0; a < g.groups.size(); ++a) {
        for (std::size_t b = a + 1; b < g.groups.size(); ++b) {
            const auto& x = g.groups[a];
            const auto& y = g.groups[b];
            std::string label = std::string(quartile_label(x.quartile)) + " vs " + quartile_label(y.quartile);
            if (x.values.size() < 2 || y.values.size() < 2) {
                rep.footnotes.push_back("Welch " + label + ": too few journals");
                continue;
            }
            const auto t = stats::welch_test(x.values, y.values);
            rep.footnotes.push_back("Welch " + label + ": t = " + fixed(t.statistic, 3) + ", df = " + fixed(t.df, 2) +
                                    ", p = " + p_cell(t.p_two_tailed).text +
                                    stats::stars_label(stats::stars_for(t.p_two_tailed)));
        }
    }
    for (const auto& w : g.warnings) rep.footnotes.push_back(w);
    for (auto& f : l.footnotes()) rep.footnotes.push_back(std::move(f));
}

// ---------------------------------------------------------------- scatter

void cmd_scatter(const Options& o, Report& rep) {
    const Loaded l = load(o, true, true);
    const auto t = pipeline::emit_scatter(l.corpus(), l.journals.records, o.year);
    rep.title = "Article attention against the journal's 5-year JIF, articles of " + std::to_string(o.year);
    rep.columns = {"article_id", "journal_id", "jif_5yr", "attention"};
    for (const auto& r : t.rows) {
        rep.add_row({text_cell(r.article_id), text_cell(r.journal_id), Cell{fixed(r.jif_5yr, 3), r.jif_5yr},
                     int_cell(r.attention)});
    }
    rep.footnotes.push_back(std::to_string(t.zero_attention) + " article(s) with zero attention (undefined on a log scale)");
    if (t.unresolved) rep.footnotes.push_back(std::to_string(t.unresolved) + " article(s) with unknown journal omitted");
    for (auto& f : l.footnotes()) rep.footnotes.push_back(std::move(f));
}

// ---------------------------------------------------------------- synth-windows

synth::SynthConfig synth_config(const Options& o) {
    synth::SynthConfig c;
    if (!o.config.empty()) {
        auto in = open_input(o.config);
        c = synth::read_config(in);
    }
    if (o.seed) c.seed = *o.seed;
    if (o.n_journals) c.n_journals = *o.n_journals;
    synth::validate(c);
    return c;
}

void cmd_synth_windows(const Options& o, Report& rep) {
    const auto windows = parse_windows(o.windows);
    auto add_reports = [&](const std::vector<synth::VariabilityReport>& reports) {
        rep.columns = {"Window", "Journals Evaluated", "Journals Excluded", "Mean CV"};
        for (const auto& r : reports) {
            rep.add_row({int_cell(r.window), int_cell(static_cast<long long>(r.n_journals_evaluated)),
                         int_cell(static_cast<long long>(r.excluded.size())), num_cell(r.mean_cv, 4)});
        }
    };
    if (!o.articles.empty()) {
        const Loaded l = load(o, true, false);
        rep.title = "Inter-annual variability of journal social attention by window";
        add_reports(synth::compare_windows(l.corpus(), windows));
        for (auto& f : l.footnotes()) rep.footnotes.push_back(std::move(f));
        return;
    }
    const auto config = synth_config(o);
    if (o.runs == 0) throw UsageError("--runs must be at least 1");
    if (o.runs == 1) {
        const auto panel = synth::generate_panel(config);
        rep.title = "Inter-annual variability of journal social attention by window (synthetic, seed " +
                    std::to_string(config.seed) + ")";
        add_reports(synth::compare_windows(synth::ScoreGrid::from_panel(panel, !o.real_scores), windows));
        return;
    }
    const auto study = synth::window_stability_study(config, windows, o.runs, o.threads, !o.real_scores);
    rep.title = "Window stability study (" + std::to_string(o.runs) + " synthetic corpora, base seed " +
                std::to_string(config.seed) + ")";
    rep.columns = {"Window", "Mean of Mean CV", "SD of Mean CV"};
    for (std::size_t w = 0; w < windows.size(); ++w) {
        std::vector<double> col;
        for (const auto& run : study.mean_cv) col.push_back(run[w]);
        const auto s = stats::summary(col);
        rep.add_row({int_cell(windows[w]), num_cell(s.mean, 4), num_cell(s.sd, 4)});
    }
    rep.footnotes.push_back("runs with mean CV strictly decreasing across windows: " +
                            std::to_string(study.strictly_decreasing));
    rep.footnotes.push_back("runs with mean CV non-increasing across windows: " + std::to_string(study.non_increasing));
    rep.footnotes.push_back("runs with last window below first: " + std::to_string(study.last_below_first));
}

// ---------------------------------------------------------------- driver

void write_output(const Options& o, const std::function<void(std::ostream&)>& body, std::ostream& out) {
    if (o.out == "-") {
        body(out);
        return;
    }
    std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
    if (!f) throw DataError("cannot write '" + o.out + "'");
    body(f);
    if (!f) throw DataError("error writing '" + o.out + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Journal social attention toolkit", "jsa"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* s) {
        s->add_option("--out,-o", o.out, "Output file ('-' for stdout)");
        s->add_option("--format,-f", o.format, "csv, json or markdown")
            ->check(CLI::IsMember({"csv", "json", "markdown", "md"}));
    };
    auto article_opts = [&](CLI::App* s, bool required) {
        auto* a = s->add_option("--articles", o.articles, "Article CSV export");
        if (required) a->required();
        s->add_option("--mapping", o.mapping, "Column mapping file (canonical=source)");
        s->add_option("--years", o.years, "Accepted publication years, YYYY-YYYY");
    };

    auto* validate = app.add_subcommand("validate", "Check article and journal files");
    common(validate);
    article_opts(validate, false);
    validate->add_option("--journals", o.journals, "Journal CSV");

    auto* describe = app.add_subcommand("describe", "Per-year descriptive statistics");
    common(describe);
    article_opts(describe, true);
    describe->add_option("--collected", o.collected, "Year of data collection")->required();

    auto* attention = app.add_subcommand("journal-attention", "Journal social attention for one edition");
    common(attention);
    article_opts(attention, true);
    attention->add_option("--journals", o.journals, "Journal CSV (restricts and orders the output)");
    attention->add_option("--year", o.edition, "Edition year")->required();
    attention->add_option("--window", o.window, "Window length in years")->check(CLI::PositiveNumber);
    attention->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);

    auto* correlate = app.add_subcommand("correlate", "Means, SDs and correlations of the regression variables");
    common(correlate);
    article_opts(correlate, true);
    correlate->add_option("--journals", o.journals, "Journal CSV")->required();
    correlate->add_option("--year", o.year, "Publication year of the articles")->required();
    correlate->add_option("--window", o.window, "Journal attention window")->check(CLI::PositiveNumber);

    auto* regress_cmd = app.add_subcommand("regress", "Multiple linear regression of article attention");
    common(regress_cmd);
    article_opts(regress_cmd, true);
    regress_cmd->add_option("--journals", o.journals, "Journal CSV")->required();
    regress_cmd->add_option("--year", o.year, "Publication year of the articles")->required();
    regress_cmd->add_option("--window", o.window, "Journal attention window")->check(CLI::PositiveNumber);
    regress_cmd->add_option("--intercept", o.intercept, "include or none")
        ->check(CLI::IsMember({"include", "none"}));
    regress_cmd->add_option("--bins", o.bins, "Residual histogram bins")->check(CLI::PositiveNumber);
    regress_cmd->add_option("--emit", o.emit, "coefficients, histogram or residuals")
        ->check(CLI::IsMember({"coefficients", "histogram", "residuals"}));

    auto* quartiles = app.add_subcommand("quartiles", "Box summaries by JIF quartile with Welch tests");
    common(quartiles);
    article_opts(quartiles, false);
    quartiles->add_option("--journals", o.journals, "Journal CSV")->required();
    quartiles->add_option("--metric", o.metric, "attention or jif5")->check(CLI::IsMember({"attention", "jif5"}));
    quartiles->add_option("--year", o.edition, "Edition year when computing attention from --articles");
    quartiles->add_option("--window", o.window, "Window length in years")->check(CLI::PositiveNumber);
    quartiles->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);

    auto* scatter = app.add_subcommand("scatter", "Article attention vs 5-year JIF, one row per article");
    common(scatter);
    article_opts(scatter, true);
    scatter->add_option("--journals", o.journals, "Journal CSV")->required();
    scatter->add_option("--year", o.year, "Publication year")->required();

    auto* synth_cmd = app.add_subcommand("synth-windows", "Indicator variability by window length");
    common(synth_cmd);
    article_opts(synth_cmd, false);
    synth_cmd->add_option("--config", o.config, "Synthetic corpus configuration (JSON)");
    synth_cmd->add_option("--seed", o.seed, "Override the configured seed");
    synth_cmd->add_option("--n-journals", o.n_journals, "Override the configured journal count");
    synth_cmd->add_option("--windows", o.windows, "Comma-separated window lengths");
    synth_cmd->add_option("--runs", o.runs, "Number of seeded corpora");
    synth_cmd->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
    synth_cmd->add_flag("--real-scores", o.real_scores, "Use unrounded attention scores");
    synth_cmd->add_flag("--dump-corpus", o.dump_corpus, "Write the generated corpus as articles CSV instead");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return kExitUsage;
    }

    const auto format = parse_format(o.format).value_or(Format::csv);
    try {
        Report rep;
        int code = kExitOk;
        if (validate->parsed()) {
            code = cmd_validate(o, rep);
        } else if (describe->parsed()) {
            cmd_describe(o, rep);
        } else if (attention->parsed()) {
            cmd_journal_attention(o, rep);
        } else if (correlate->parsed()) {
            cmd_correlate(o, rep);
        } else if (regress_cmd->parsed()) {
            cmd_regress(o, rep);
        } else if (quartiles->parsed()) {
            cmd_quartiles(o, rep);
        } else if (scatter->parsed()) {
            cmd_scatter(o, rep);
        } else if (synth_cmd->parsed()) {
            if (o.dump_corpus) {
                const Corpus c = synth::generate_corpus(synth_config(o));
                write_output(o, [&](std::ostream& s) { write_articles(s, c.articles()); }, out);
                return kExitOk;
            }
            cmd_synth_windows(o, rep);
        }
        write_output(o, [&](std::ostream& s) { render(rep, format, s); }, out);
        return code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    }
}

}  // namespace jsa::cli
