#pragma once

// Independent reference implementations and fixtures shared by the unit tests
// and the acceptance driver. Nothing here calls into the library's numerics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "jsa/corpus.hpp"

#ifndef JSA_DATA_DIR
#define JSA_DATA_DIR "data"
#endif

namespace jsa::testing {

inline std::string data_path(const std::string& name) { return std::string(JSA_DATA_DIR) + "/" + name; }

// ------------------------------------------------------------ least squares

struct NormalSolution {
    std::vector<double> b;
    std::vector<double> se;
};

// Solve (X'X) b = X'y in long double by Gauss-Jordan with partial pivoting.
// X is given column-wise; a leading column of ones is prepended if asked.
inline NormalSolution normal_equations(const std::vector<std::vector<double>>& cols, const std::vector<double>& y,
                                       bool intercept) {
    std::vector<std::vector<long double>> x;
    const std::size_t n = y.size();
    if (intercept) x.emplace_back(n, 1.0L);
    for (const auto& c : cols) x.emplace_back(c.begin(), c.end());
    const std::size_t k = x.size();

    std::vector<std::vector<long double>> a(k, std::vector<long double>(2 * k + 1, 0.0L));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            long double s = 0;
            for (std::size_t r = 0; r < n; ++r) s += x[i][r] * x[j][r];
            a[i][j] = s;
        }
        a[i][k + i] = 1.0L;
        long double s = 0;
        for (std::size_t r = 0; r < n; ++r) s += x[i][r] * y[r];
        a[i][2 * k] = s;
    }
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < k; ++r) {
            if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
        }
        std::swap(a[c], a[piv]);
        const long double d = a[c][c];
        for (auto& v : a[c]) v /= d;
        for (std::size_t r = 0; r < k; ++r) {
            if (r == c) continue;
            const long double f = a[r][c];
            if (f == 0) continue;
            for (std::size_t j = 0; j <= 2 * k; ++j) a[r][j] -= f * a[c][j];
        }
    }
    NormalSolution out;
    for (std::size_t i = 0; i < k; ++i) out.b.push_back(static_cast<double>(a[i][2 * k]));
    long double sse = 0;
    for (std::size_t r = 0; r < n; ++r) {
        long double fit = 0;
        for (std::size_t i = 0; i < k; ++i) fit += x[i][r] * a[i][2 * k];
        sse += (y[r] - fit) * (y[r] - fit);
    }
    const long double s2 = sse / static_cast<long double>(n - k);
    for (std::size_t i = 0; i < k; ++i) out.se.push_back(static_cast<double>(std::sqrt(s2 * a[i][k + i])));
    return out;
}

// --------------------------------------------------------------- quadrature

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double eps) {
    struct Rec {
        const std::function<double(double)>& f;
        double go(double a, double b, double fa, double fm, double fb, double whole, double eps, int depth) const {
            const double m = 0.5 * (a + b);
            const double lm = 0.5 * (a + m);
            const double rm = 0.5 * (m + b);
            const double flm = f(lm);
            const double frm = f(rm);
            const double left = (m - a) / 6 * (fa + 4 * flm + fm);
            const double right = (b - m) / 6 * (fm + 4 * frm + fb);
            const double diff = left + right - whole;
            if (depth <= 0 || std::fabs(diff) <= 15 * eps) return left + right + diff / 15;
            return go(a, m, fa, flm, fm, left, eps / 2, depth - 1) + go(m, b, fm, frm, fb, right, eps / 2, depth - 1);
        }
    };
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    return Rec{f}.go(a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), eps, 50);
}

// F(d1, d2) cdf by integrating the density after substituting x = u^2, which
// removes the integrable singularity at 0 when d1 = 1.
inline double f_cdf_quadrature(double x, double d1, double d2) {
    const double logc = std::lgamma((d1 + d2) / 2) - std::lgamma(d1 / 2) - std::lgamma(d2 / 2) +
                        (d1 / 2) * std::log(d1 / d2);
    auto integrand = [&](double u) {
        if (u <= 0) return d1 == 1.0 ? 2.0 * std::exp(logc) : 0.0;
        const double t = u * u;
        const double logpdf = logc + (d1 / 2 - 1) * std::log(t) - ((d1 + d2) / 2) * std::log1p(d1 * t / d2);
        return 2 * u * std::exp(logpdf);
    };
    return adaptive_simpson(integrand, 0.0, std::sqrt(x), 1e-13);
}

// --------------------------------------------------------------- indicators

inline double brute_force_attention(const std::vector<ArticleRecord>& articles, const std::string& journal,
                                    int edition, int window, std::int64_t* total = nullptr,
                                    std::int64_t* count = nullptr) {
    std::int64_t s = 0;
    std::int64_t c = 0;
    for (const auto& a : articles) {
        if (a.journal_id == journal && a.pub_year <= edition && a.pub_year > edition - window) {
            s += a.attention;
            ++c;
        }
    }
    if (total) *total = s;
    if (count) *count = c;
    return c ? static_cast<double>(s) / static_cast<double>(c) : std::nan("");
}

inline std::vector<ArticleRecord> random_articles(std::uint64_t seed, std::size_t n_journals, int first, int last,
                                                  std::size_t max_per_cell) {
    std::mt19937_64 g(seed);
    std::vector<ArticleRecord> out;
    std::uniform_int_distribution<std::size_t> cell(0, max_per_cell);
    std::uniform_int_distribution<std::int64_t> att(0, 500);
    for (std::size_t j = 0; j < n_journals; ++j) {
        for (int y = first; y <= last; ++y) {
            const std::size_t k = cell(g);
            for (std::size_t i = 0; i < k; ++i) {
                ArticleRecord a;
                a.article_id = "A" + std::to_string(out.size());
                a.journal_id = "J" + std::to_string(j);
                a.pub_year = y;
                a.n_authors = 1 + static_cast<int>(g() % 6);
                a.open_access = g() % 2;
                a.funded = g() % 3 == 0;
                a.citations = static_cast<std::int64_t>(g() % 40);
                a.attention = att(g);
                out.push_back(std::move(a));
            }
        }
    }
    std::shuffle(out.begin(), out.end(), g);
    return out;
}

// ------------------------------------------------------------ planted model

// Reference b-coefficients of the no-intercept article model, in design order:
// journal attention, authors, OA, funded, citations, 5-year JIF.
inline const std::vector<double>& planted_coefficients() {
    static const std::vector<double> b = {0.74, 0.41, 1.75, 1.55, 0.09, -0.78};
    return b;
}

struct PlantedCorpus {
    std::vector<ArticleRecord> articles;
    std::vector<JournalRecord> journals;
    // Attention is stored in hundredths so that every score is an integer.
    double scale = 100.0;
};

// Articles of `year` whose attention is exactly scale * (b . x) with x built
// from an integer journal indicator T and integer 5-year JIF. Articles from the
// two following years pad each journal's window so its mean is exactly T.
inline PlantedCorpus planted_corpus(std::uint64_t seed, std::size_t n_journals = 12, std::size_t per_journal = 25,
                                    int year = 2019) {
    std::mt19937_64 g(seed);
    PlantedCorpus pc;
    std::vector<std::int64_t> w;
    for (double b : planted_coefficients()) w.push_back(std::llround(b * pc.scale));

    for (std::size_t j = 0; j < n_journals; ++j) {
        const std::string id = "PJ" + std::to_string(j + 1);
        const std::int64_t target = 5 + static_cast<std::int64_t>(g() % 26);
        const std::int64_t jif = 1 + static_cast<std::int64_t>(g() % 6);

        JournalRecord jr;
        jr.journal_id = id;
        jr.name = "Planted journal " + std::to_string(j + 1);
        jr.n_articles_2020 = 50;
        jr.jif = static_cast<double>(jif);
        jr.jif_5yr = static_cast<double>(jif);
        jr.jif_percentile = 4.0 + 92.0 * static_cast<double>(j) / static_cast<double>(n_journals);
        jr.jif_quartile = nominal_quartile(jr.jif_percentile);
        pc.journals.push_back(jr);

        std::int64_t sum = 0;
        for (std::size_t i = 0; i < per_journal; ++i) {
            ArticleRecord a;
            a.article_id = id + "-" + std::to_string(year) + "-" + std::to_string(i + 1);
            a.journal_id = id;
            a.pub_year = year;
            a.n_authors = 1 + static_cast<int>(g() % 8);
            a.open_access = g() % 2;
            a.funded = g() % 4 == 0;
            a.citations = static_cast<std::int64_t>(g() % 60);
            a.attention = w[0] * target + w[1] * a.n_authors + w[2] * a.open_access + w[3] * a.funded +
                          w[4] * a.citations + w[5] * jif;
            sum += a.attention;
            pc.articles.push_back(std::move(a));
        }
        const auto k = static_cast<std::int64_t>(per_journal);
        const std::int64_t m = std::max<std::int64_t>(1, (sum - target * k + target - 1) / target);
        const std::int64_t pad_total = target * (k + m) - sum;
        for (std::int64_t i = 0; i < m; ++i) {
            ArticleRecord a;
            a.journal_id = id;
            a.pub_year = year + 1 + static_cast<int>(i % 2);
            a.article_id = id + "-" + std::to_string(a.pub_year) + "-" + std::to_string(i + 1);
            a.n_authors = 1 + static_cast<int>(g() % 5);
            a.citations = static_cast<std::int64_t>(g() % 10);
            a.attention = pad_total / m + (i < pad_total % m ? 1 : 0);
            pc.articles.push_back(std::move(a));
        }
    }
    return pc;
}

}  // namespace jsa::testing
