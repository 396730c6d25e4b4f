#include "jsa/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <thread>

#include "json.hpp"
#include "jsa/errors.hpp"
#include "jsa/stats.hpp"

namespace jsa::synth {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

std::string journal_name(std::size_t j) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "J%04zu", j + 1);
    return buf;
}

std::string article_name(std::size_t j, int year, std::size_t i) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "J%04zu-%d-%04zu", j + 1, year, i + 1);
    return buf;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    std::uint64_t z = x + kGolden;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return splitmix64(seed ^ splitmix64(index + 1));
}

Rng::Rng(std::uint64_t seed) noexcept {
    for (std::size_t i = 0; i < s_.size(); ++i) s_[i] = splitmix64(seed + i * kGolden);
}

std::uint64_t Rng::next() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform_pos() noexcept { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

double Rng::normal() noexcept {
    const double u1 = uniform_pos();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::lognormal(double mu, double sigma) noexcept { return std::exp(mu + sigma * normal()); }

double Rng::gamma(double shape, double scale) noexcept {
    if (shape < 1.0) {
        const double g = gamma(shape + 1.0, scale);
        return g * std::pow(uniform_pos(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        const double u = uniform_pos();
        if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v * scale;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
}

std::int64_t Rng::poisson(double mean) noexcept {
    if (!(mean > 0.0)) return 0;
    if (mean < 10.0) {
        const double limit = std::exp(-mean);
        std::int64_t k = 0;
        double p = uniform_pos();
        while (p > limit) {
            p *= uniform_pos();
            ++k;
        }
        return k;
    }
    // Transformed rejection with squeeze (Hormann's PTRS).
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = uniform() - 0.5;
        const double v = uniform();
        const double us = 0.5 - std::fabs(u);
        const auto k = static_cast<std::int64_t>(std::floor((2.0 * a / us + b) * u + mean + 0.43));
        if (us >= 0.07 && v <= vr) return k;
        if (k < 0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            -mean + static_cast<double>(k) * loglam - stats::log_gamma(static_cast<double>(k) + 1.0)) {
            return k;
        }
    }
}

std::int64_t Rng::negative_binomial(double r, double p) noexcept {
    if (p >= 1.0) return 0;
    return poisson(gamma(r, (1.0 - p) / p));
}

bool Rng::bernoulli(double p) noexcept { return uniform() < p; }

void validate(const SynthConfig& c) {
    if (c.n_journals < 1) throw UsageError("synth: n_journals must be at least 1");
    if (c.years.first > c.years.last) throw UsageError("synth: empty year range");
    if (!(c.articles_per_journal_year > 0.0) || !std::isfinite(c.articles_per_journal_year)) {
        throw UsageError("synth: articles_per_journal_year must be positive");
    }
    if (c.attention_model == AttentionModel::lognormal) {
        if (!std::isfinite(c.lognormal_mu) || !(c.lognormal_sigma >= 0.0) || !std::isfinite(c.lognormal_sigma)) {
            throw UsageError("synth: lognormal needs finite mu and sigma >= 0");
        }
    } else {
        if (!(c.nb_r > 0.0) || !std::isfinite(c.nb_r)) throw UsageError("synth: negative binomial r must be positive");
        if (!(c.nb_p > 0.0 && c.nb_p <= 1.0)) throw UsageError("synth: negative binomial p must lie in (0, 1]");
    }
}

SynthConfig read_config(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("synth config: ") + e.what());
    }
    SynthConfig c;
    try {
        c.n_journals = j.value("n_journals", c.n_journals);
        if (j.contains("years")) {
            c.years.first = j.at("years").at(0).get<int>();
            c.years.last = j.at("years").at(1).get<int>();
        }
        c.articles_per_journal_year = j.value("articles_per_journal_year", c.articles_per_journal_year);
        const std::string counts = j.value("count_model", std::string("poisson"));
        if (counts == "poisson") {
            c.count_model = CountModel::poisson;
        } else if (counts == "fixed") {
            c.count_model = CountModel::fixed;
        } else {
            throw UsageError("synth config: unknown count_model '" + counts + "'");
        }
        if (j.contains("attention_model")) {
            const auto& m = j.at("attention_model");
            const std::string type = m.at("type").get<std::string>();
            if (type == "lognormal") {
                c.attention_model = AttentionModel::lognormal;
                c.lognormal_mu = m.value("mu", c.lognormal_mu);
                c.lognormal_sigma = m.value("sigma", c.lognormal_sigma);
            } else if (type == "negative_binomial") {
                c.attention_model = AttentionModel::negative_binomial;
                c.nb_r = m.value("r", c.nb_r);
                c.nb_p = m.value("p", c.nb_p);
            } else {
                throw UsageError("synth config: unknown attention model '" + type + "'");
            }
        }
        c.seed = j.value("seed", c.seed);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("synth config: ") + e.what());
    }
    validate(c);
    return c;
}

void write_config(std::ostream& out, const SynthConfig& c) {
    nlohmann::ordered_json j;
    j["n_journals"] = c.n_journals;
    j["years"] = {c.years.first, c.years.last};
    j["articles_per_journal_year"] = c.articles_per_journal_year;
    j["count_model"] = c.count_model == CountModel::poisson ? "poisson" : "fixed";
    if (c.attention_model == AttentionModel::lognormal) {
        j["attention_model"] = {{"type", "lognormal"}, {"mu", c.lognormal_mu}, {"sigma", c.lognormal_sigma}};
    } else {
        j["attention_model"] = {{"type", "negative_binomial"}, {"r", c.nb_r}, {"p", c.nb_p}};
    }
    j["seed"] = c.seed;
    out << j.dump(2) << '\n';
}

Panel generate_panel(const SynthConfig& config) {
    validate(config);
    Panel panel;
    panel.years = config.years;
    const auto fixed_count = static_cast<std::int64_t>(std::llround(config.articles_per_journal_year));
    for (std::size_t j = 0; j < config.n_journals; ++j) {
        panel.journal_ids.push_back(journal_name(j));
        Rng rng(derive_seed(config.seed, j));
        for (int y = config.years.first; y <= config.years.last; ++y) {
            const std::int64_t count = config.count_model == CountModel::fixed
                                           ? fixed_count
                                           : rng.poisson(config.articles_per_journal_year);
            const double age = static_cast<double>(config.years.last - y + 1);
            for (std::int64_t i = 0; i < count; ++i) {
                ArticleRecord a;
                a.article_id = article_name(j, y, static_cast<std::size_t>(i));
                a.journal_id = panel.journal_ids.back();
                a.pub_year = y;
                a.n_authors = 1 + static_cast<int>(rng.poisson(1.8));
                a.open_access = rng.bernoulli(0.4);
                a.funded = rng.bernoulli(0.2);
                a.citations = rng.poisson(2.5 * age);
                const double score = config.attention_model == AttentionModel::lognormal
                                         ? rng.lognormal(config.lognormal_mu, config.lognormal_sigma)
                                         : static_cast<double>(rng.negative_binomial(config.nb_r, config.nb_p));
                panel.articles.push_back(std::move(a));
                panel.attention.push_back(score);
            }
        }
    }
    return panel;
}

std::int64_t integerize(double score) noexcept {
    if (!(score > 0.0)) return 0;
    const double f = std::floor(score);
    const double diff = score - f;
    auto r = static_cast<std::int64_t>(f);
    if (diff > 0.5 || (diff == 0.5 && (r % 2) != 0)) ++r;
    return r;
}

Corpus to_corpus(const Panel& panel) {
    std::vector<ArticleRecord> arts = panel.articles;
    for (std::size_t i = 0; i < arts.size(); ++i) arts[i].attention = integerize(panel.attention[i]);
    std::vector<JournalRecord> js;
    for (const auto& id : panel.journal_ids) {
        JournalRecord j;
        j.journal_id = id;
        j.name = id;
        js.push_back(std::move(j));
    }
    return Corpus(std::move(arts), std::move(js));
}

Corpus generate_corpus(const SynthConfig& config) { return to_corpus(generate_panel(config)); }

ScoreGrid ScoreGrid::from_corpus(const Corpus& corpus) {
    ScoreGrid g;
    g.journal_ids = corpus.article_journal_ids();
    const auto ys = corpus.years();
    if (ys.empty()) throw UsageError("corpus has no articles");
    g.years = {ys.front(), ys.back()};
    const auto span = static_cast<std::size_t>(g.years.last - g.years.first + 1);
    g.sums.assign(g.journal_ids.size(), std::vector<double>(span, 0.0));
    g.counts.assign(g.journal_ids.size(), std::vector<std::int64_t>(span, 0));
    const auto& arts = corpus.articles();
    for (std::size_t j = 0; j < g.journal_ids.size(); ++j) {
        for (int y = g.years.first; y <= g.years.last; ++y) {
            std::int64_t total = 0;
            const auto idx = corpus.articles_in(g.journal_ids[j], y);
            for (std::size_t i : idx) total += arts[i].attention;
            g.sums[j][static_cast<std::size_t>(y - g.years.first)] = static_cast<double>(total);
            g.counts[j][static_cast<std::size_t>(y - g.years.first)] = static_cast<std::int64_t>(idx.size());
        }
    }
    return g;
}

ScoreGrid ScoreGrid::from_panel(const Panel& panel, bool integer_scores) {
    ScoreGrid g;
    g.journal_ids = panel.journal_ids;
    g.years = panel.years;
    const auto span = static_cast<std::size_t>(g.years.last - g.years.first + 1);
    g.sums.assign(g.journal_ids.size(), std::vector<double>(span, 0.0));
    g.counts.assign(g.journal_ids.size(), std::vector<std::int64_t>(span, 0));
    std::map<std::string, std::size_t> pos;
    for (std::size_t j = 0; j < g.journal_ids.size(); ++j) pos[g.journal_ids[j]] = j;
    for (std::size_t i = 0; i < panel.articles.size(); ++i) {
        const auto& a = panel.articles[i];
        const std::size_t j = pos.at(a.journal_id);
        const auto y = static_cast<std::size_t>(a.pub_year - g.years.first);
        g.sums[j][y] += integer_scores ? static_cast<double>(integerize(panel.attention[i])) : panel.attention[i];
        g.counts[j][y] += 1;
    }
    return g;
}

VariabilityReport window_variability(const ScoreGrid& grid, int window, const std::vector<std::string>* universe) {
    const int span = grid.years.last - grid.years.first + 1;
    if (window < 1) throw UsageError("window must be at least 1 year");
    if (window > span) {
        throw UsageError("window of " + std::to_string(window) + " years exceeds the " + std::to_string(span) +
                         "-year span");
    }
    std::map<std::string, std::size_t> pos;
    for (std::size_t j = 0; j < grid.journal_ids.size(); ++j) pos[grid.journal_ids[j]] = j;
    const std::vector<std::string>& ids = universe ? *universe : grid.journal_ids;

    VariabilityReport rep;
    rep.window = window;
    for (const auto& id : ids) {
        auto it = pos.find(id);
        if (it == pos.end()) {
            rep.excluded.push_back(id);
            continue;
        }
        const auto& sums = grid.sums[it->second];
        const auto& counts = grid.counts[it->second];
        std::vector<double> series;
        for (int e = window - 1; e < span; ++e) {
            double s = 0.0;
            std::int64_t n = 0;
            for (int y = e - window + 1; y <= e; ++y) {
                s += sums[static_cast<std::size_t>(y)];
                n += counts[static_cast<std::size_t>(y)];
            }
            if (n > 0) series.push_back(s / static_cast<double>(n));
        }
        if (series.size() < 2) {
            rep.excluded.push_back(id);
            continue;
        }
        const auto st = stats::summary(series);
        if (!(st.mean > 0.0)) {
            rep.excluded.push_back(id);
            continue;
        }
        rep.per_journal_cv[id] = st.sd / st.mean;
    }
    rep.n_journals_evaluated = rep.per_journal_cv.size();
    if (rep.per_journal_cv.empty()) {
        rep.mean_cv = std::numeric_limits<double>::quiet_NaN();
    } else {
        double total = 0.0;
        for (const auto& [_, cv] : rep.per_journal_cv) total += cv;
        rep.mean_cv = total / static_cast<double>(rep.per_journal_cv.size());
    }
    return rep;
}

VariabilityReport window_variability(const Corpus& corpus, int window) {
    return window_variability(ScoreGrid::from_corpus(corpus), window);
}

std::vector<VariabilityReport> compare_windows(const ScoreGrid& grid, const std::vector<int>& windows) {
    if (windows.empty()) throw UsageError("compare_windows: no windows given");
    const int largest = *std::max_element(windows.begin(), windows.end());
    const VariabilityReport base = window_variability(grid, largest);
    std::vector<std::string> universe;
    for (const auto& [id, _] : base.per_journal_cv) universe.push_back(id);

    std::vector<VariabilityReport> out;
    for (int w : windows) {
        out.push_back(window_variability(grid, w, &universe));
        // Journals outside the universe still count as excluded.
        auto& ex = out.back().excluded;
        ex.insert(ex.end(), base.excluded.begin(), base.excluded.end());
        std::sort(ex.begin(), ex.end());
        ex.erase(std::unique(ex.begin(), ex.end()), ex.end());
    }
    return out;
}

std::vector<VariabilityReport> compare_windows(const Corpus& corpus, const std::vector<int>& windows) {
    return compare_windows(ScoreGrid::from_corpus(corpus), windows);
}

StudyResult window_stability_study(const SynthConfig& config, const std::vector<int>& windows,
                                   std::size_t runs, unsigned threads, bool integer_scores) {
    validate(config);
    if (windows.empty()) throw UsageError("window_stability_study: no windows given");
    if (runs == 0) throw UsageError("window_stability_study: need at least one run");

    StudyResult result;
    result.windows = windows;
    result.mean_cv.assign(runs, {});
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            SynthConfig c = config;
            c.seed = derive_seed(config.seed, r);
            const auto grid = ScoreGrid::from_panel(generate_panel(c), integer_scores);
            for (const auto& rep : compare_windows(grid, windows)) result.mean_cv[r].push_back(rep.mean_cv);
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, runs);
    if (workers == 1) {
        work(0, runs);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (runs + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t b = w * chunk;
            const std::size_t e = std::min(runs, b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
    }

    for (const auto& cvs : result.mean_cv) {
        bool strict = true;
        bool nonincr = true;
        for (std::size_t w = 1; w < cvs.size(); ++w) {
            if (!(cvs[w] < cvs[w - 1])) strict = false;
            if (!(cvs[w] <= cvs[w - 1])) nonincr = false;
        }
        result.strictly_decreasing += strict ? 1 : 0;
        result.non_increasing += nonincr ? 1 : 0;
        result.last_below_first += cvs.back() < cvs.front() ? 1 : 0;
    }
    return result;
}

}  // namespace jsa::synth
