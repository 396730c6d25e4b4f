#include "jsa/indicators.hpp"

#include <algorithm>
#include <thread>

#include "jsa/errors.hpp"

namespace jsa {

JournalAttention journal_social_attention(const Corpus& corpus, const std::string& journal_id,
                                          int edition_year, int window) {
    if (window < 1) throw UsageError("window must be at least 1 year");
    JournalAttention out;
    out.journal_id = journal_id;
    out.edition_year = edition_year;
    out.window = window;
    const auto& arts = corpus.articles();
    for (int y = edition_year - window + 1; y <= edition_year; ++y) {
        for (std::size_t i : corpus.articles_in(journal_id, y)) {
            out.attention_total += arts[i].attention;
            ++out.n_articles;
        }
    }
    if (out.n_articles == 0) {
        throw NoArticlesInWindow("journal '" + journal_id + "' has no articles in " +
                                 std::to_string(edition_year - window + 1) + "-" + std::to_string(edition_year));
    }
    out.value = static_cast<double>(out.attention_total) / static_cast<double>(out.n_articles);
    return out;
}

AttentionTable journal_attention_table(const Corpus& corpus, std::span<const std::string> journal_ids,
                                       int edition_year, int window, unsigned threads) {
    if (window < 1) throw UsageError("window must be at least 1 year");
    std::vector<std::optional<JournalAttention>> slots(journal_ids.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                slots[i] = journal_social_attention(corpus, journal_ids[i], edition_year, window);
            } catch (const NoArticlesInWindow&) {
            }
        }
    };
    const std::size_t n = journal_ids.size();
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        work(0, n);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t b = w * chunk;
            const std::size_t e = std::min(n, b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
    }

    AttentionTable table;
    for (std::size_t i = 0; i < n; ++i) {
        if (slots[i]) {
            table.rows.push_back(std::move(*slots[i]));
        } else {
            table.excluded.push_back(journal_ids[i]);
        }
    }
    return table;
}

namespace {

struct Accum {
    std::int64_t n = 0;
    std::int64_t authors = 0;
    std::int64_t oa = 0;
    std::int64_t funded = 0;
    std::int64_t citations = 0;
    std::int64_t attention = 0;

    void add(const ArticleRecord& a) {
        ++n;
        authors += a.n_authors;
        oa += a.open_access ? 1 : 0;
        funded += a.funded ? 1 : 0;
        citations += a.citations;
        attention += a.attention;
    }

    YearDescriptives row(int year, int since) const {
        const double dn = static_cast<double>(n);
        YearDescriptives d;
        d.pub_year = year;
        d.years_since_pub = since;
        d.n_articles = n;
        d.mean_authors = static_cast<double>(authors) / dn;
        d.pct_oa = 100.0 * static_cast<double>(oa) / dn;
        d.pct_funded = 100.0 * static_cast<double>(funded) / dn;
        d.mean_citations = static_cast<double>(citations) / dn;
        d.mean_attention = static_cast<double>(attention) / dn;
        return d;
    }
};

}  // namespace

DescriptiveTable describe_by_year(const Corpus& corpus, int collection_year) {
    if (corpus.empty()) throw UsageError("describe_by_year: corpus is empty");
    std::map<int, Accum, std::greater<>> by_year;
    Accum all;
    for (const auto& a : corpus.articles()) {
        by_year[a.pub_year].add(a);
        all.add(a);
    }
    if (by_year.begin()->first >= collection_year) {
        throw UsageError("collection year " + std::to_string(collection_year) +
                         " must be after the newest publication year " + std::to_string(by_year.begin()->first));
    }

    DescriptiveTable t;
    for (const auto& [year, acc] : by_year) {
        t.years.push_back(acc.row(year, collection_year - year));
    }
    for (std::size_t i = 1; i < t.years.size(); ++i) {
        t.years[i].marginal_variation = t.years[i].mean_attention - t.years[i - 1].mean_attention;
    }
    t.all = all.row(0, 0);
    return t;
}

std::vector<double> marginal_variation(std::span<const double> means) {
    if (means.size() < 2) throw UsageError("marginal_variation needs at least two values");
    std::vector<double> out(means.size() - 1);
    for (std::size_t i = 0; i + 1 < means.size(); ++i) out[i] = means[i + 1] - means[i];
    return out;
}

QuartileGrouping quartile_groups(std::span<const JournalRecord> journals,
                                 const std::map<std::string, double>& values) {
    QuartileGrouping out;
    std::map<Quartile, QuartileGroup> groups;
    for (const auto& j : journals) {
        auto it = values.find(j.journal_id);
        if (it == values.end()) {
            out.warnings.push_back("journal '" + j.journal_id + "' has no value; excluded");
            continue;
        }
        auto& g = groups[j.jif_quartile];
        g.quartile = j.jif_quartile;
        g.journal_ids.push_back(j.journal_id);
        g.values.push_back(it->second);
    }
    for (auto& [q, g] : groups) {
        g.summary = stats::box_summary(g.values);
        g.mean = g.summary.mean;
        out.groups.push_back(std::move(g));
    }
    return out;
}

}  // namespace jsa
