#include "jsa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "jsa/errors.hpp"
#include "jsa/kernels.hpp"

namespace jsa::stats {
namespace {

constexpr double kTiny = 1e-300;
constexpr double kCfEps = 1e-16;
constexpr int kCfMaxIter = 20000;

bool all_equal(std::span<const double> v) {
    return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

// Continued fraction for I_x(a, b), modified Lentz.
double beta_cf(double x, double a, double b) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kCfMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kCfEps) return h;
    }
    throw DataError("incomplete beta continued fraction did not converge (a=" + std::to_string(a) +
                    ", b=" + std::to_string(b) + ", x=" + std::to_string(x) + ")");
}

// I_x(a, b) given both x and y = 1 - x, so callers holding an accurate
// complement do not lose it to cancellation.
double ibeta(double x, double y, double a, double b) {
    if (x <= 0.0) return 0.0;
    if (y <= 0.0) return 1.0;
    const double log_beta = log_gamma(a) + log_gamma(b) - log_gamma(a + b);
    const double front = std::exp(a * std::log(x) + b * std::log(y) - log_beta);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(x, a, b) / a;
    }
    return 1.0 - front * beta_cf(y, b, a) / b;
}

void require_df(double df, const char* what) {
    if (!(df > 0.0) || std::isnan(df)) {
        throw UsageError(std::string(what) + " degrees of freedom must be positive");
    }
}

}  // namespace

const char* stars_label(Stars s) noexcept {
    switch (s) {
        case Stars::p01: return "**";
        case Stars::p05: return "*";
        case Stars::none: break;
    }
    return "";
}

Stars stars_for(double p) noexcept {
    if (p < 0.01) return Stars::p01;
    if (p < 0.05) return Stars::p05;
    return Stars::none;
}

double mean(std::span<const double> values) {
    if (values.empty()) throw UsageError("mean of empty sample");
    if (all_equal(values)) return values.front();
    return kernels::sum(values) / static_cast<double>(values.size());
}

SummaryStats summary(std::span<const double> values) {
    if (values.empty()) throw UsageError("summary of empty sample");
    SummaryStats s;
    s.n = values.size();
    s.mean = mean(values);
    s.sd_defined = s.n >= 2;
    if (s.n >= 2 && !all_equal(values)) {
        const double ss = kernels::centered_dot(values, s.mean, values, s.mean);
        s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
    }
    return s;
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw UsageError("pearson: inputs differ in length");
    if (x.size() < 3) throw UsageError("pearson: need at least 3 observations");
    if (all_equal(x) || all_equal(y)) {
        throw UndefinedCorrelation("pearson: an input has zero variance");
    }
    const double mx = kernels::sum(x) / static_cast<double>(x.size());
    const double my = kernels::sum(y) / static_cast<double>(y.size());
    const double sxy = kernels::centered_dot(x, mx, y, my);
    const double sxx = kernels::centered_dot(x, mx, x, mx);
    const double syy = kernels::centered_dot(y, my, y, my);

    CorrelationResult out;
    out.n = x.size();
    out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    const double df = static_cast<double>(out.n - 2);
    const double r2 = out.r * out.r;
    if (r2 >= 1.0) {
        out.t_stat = std::copysign(std::numeric_limits<double>::infinity(), out.r);
        out.p_two_tailed = 0.0;
    } else {
        out.t_stat = out.r * std::sqrt(df / (1.0 - r2));
        // P(|T| >= |t|) = I_{df/(df+t^2)}(df/2, 1/2) and df/(df+t^2) = 1 - r^2.
        out.p_two_tailed = ibeta(1.0 - r2, r2, 0.5 * df, 0.5);
    }
    out.stars = stars_for(out.p_two_tailed);
    return out;
}

CorrelationMatrix correlation_matrix(std::span<const std::vector<double>> columns) {
    CorrelationMatrix m;
    const std::size_t k = columns.size();
    m.results.assign(k, std::vector<std::optional<CorrelationResult>>(k));
    for (const auto& c : columns) m.summaries.push_back(summary(c));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            try {
                m.results[i][j] = pearson(columns[i], columns[j]);
                m.results[j][i] = m.results[i][j];
            } catch (const UndefinedCorrelation&) {
            }
        }
    }
    return m;
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw UsageError("log_gamma: argument must be positive");
    static constexpr double kCoef[9] = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        // Reflection keeps the series argument >= 0.5.
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double acc = kCoef[0];
    for (int i = 1; i < 9; ++i) acc += kCoef[i] / (z + i);
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

double reg_inc_beta(double x, double a, double b) {
    if (!(x >= 0.0 && x <= 1.0)) throw UsageError("reg_inc_beta: x must lie in [0, 1]");
    if (!(a > 0.0) || !(b > 0.0)) throw UsageError("reg_inc_beta: a and b must be positive");
    return ibeta(x, 1.0 - x, a, b);
}

double t_two_tailed_p(double t, double df) {
    require_df(df, "t distribution");
    if (std::isnan(t)) throw UsageError("t_two_tailed_p: t is NaN");
    if (std::isinf(t)) return 0.0;
    const double t2 = t * t;
    return ibeta(df / (df + t2), t2 / (df + t2), 0.5 * df, 0.5);
}

double t_cdf(double t, double df) {
    require_df(df, "t distribution");
    if (std::isnan(t)) throw UsageError("t_cdf: t is NaN");
    if (t == 0.0) return 0.5;
    const double tail = 0.5 * t_two_tailed_p(t, df);
    return t > 0.0 ? 1.0 - tail : tail;
}

double t_quantile(double p, double df) {
    require_df(df, "t distribution");
    if (!(p > 0.0 && p < 1.0)) throw UsageError("t_quantile: p must lie in (0, 1)");
    if (p == 0.5) return 0.0;
    const double upper = p > 0.5 ? 1.0 - p : p;  // one-sided tail mass
    double lo = 0.0;
    double hi = 1.0;
    while (0.5 * t_two_tailed_p(hi, df) > upper) {
        lo = hi;
        hi *= 2.0;
    }
    for (int i = 0; i < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (0.5 * t_two_tailed_p(mid, df) > upper) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double t = 0.5 * (lo + hi);
    return p > 0.5 ? t : -t;
}

double f_cdf(double f, double d1, double d2) {
    require_df(d1, "F numerator");
    require_df(d2, "F denominator");
    if (!(f >= 0.0)) throw UsageError("f_cdf: F must be non-negative");
    if (f == 0.0) return 0.0;
    if (std::isinf(f)) return 1.0;
    const double denom = d1 * f + d2;
    return ibeta(d1 * f / denom, d2 / denom, 0.5 * d1, 0.5 * d2);
}

double f_sf(double f, double d1, double d2) {
    require_df(d1, "F numerator");
    require_df(d2, "F denominator");
    if (!(f >= 0.0)) throw UsageError("f_sf: F must be non-negative");
    if (f == 0.0) return 1.0;
    if (std::isinf(f)) return 0.0;
    const double denom = d1 * f + d2;
    return ibeta(d2 / denom, d1 * f / denom, 0.5 * d2, 0.5 * d1);
}

TestResult welch_test(std::span<const double> x, std::span<const double> y) {
    if (x.size() < 2 || y.size() < 2) throw UsageError("welch_test: each sample needs n >= 2");
    const SummaryStats sx = summary(x);
    const SummaryStats sy = summary(y);
    const double nx = static_cast<double>(sx.n);
    const double ny = static_cast<double>(sy.n);
    const double vx = sx.sd * sx.sd / nx;
    const double vy = sy.sd * sy.sd / ny;
    const double se2 = vx + vy;
    const double diff = sx.mean - sy.mean;

    TestResult out;
    if (se2 == 0.0) {
        // Both samples constant: df degenerates, fall back to pooled count.
        out.df = nx + ny - 2.0;
        if (diff == 0.0) {
            out.statistic = 0.0;
            out.p_two_tailed = 1.0;
        } else {
            out.statistic = std::copysign(std::numeric_limits<double>::infinity(), diff);
            out.p_two_tailed = 0.0;
        }
        return out;
    }
    out.statistic = diff / std::sqrt(se2);
    out.df = se2 * se2 / (vx * vx / (nx - 1.0) + vy * vy / (ny - 1.0));
    out.p_two_tailed = t_two_tailed_p(out.statistic, out.df);
    return out;
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw UsageError("quantile of empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("quantile: p must lie in [0, 1]");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BoxSummary box_summary(std::span<const double> values) {
    if (values.empty()) throw UsageError("box_summary of empty sample");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());

    BoxSummary b;
    b.min = v.front();
    b.max = v.back();
    b.q1 = quantile_sorted(v, 0.25);
    b.median = quantile_sorted(v, 0.5);
    b.q3 = quantile_sorted(v, 0.75);
    b.mean = mean(v);

    const double iqr = b.q3 - b.q1;
    const double fence_lo = b.q1 - 1.5 * iqr;
    const double fence_hi = b.q3 + 1.5 * iqr;
    b.whisker_low = b.q1;
    b.whisker_high = b.q3;
    for (double x : v) {
        if (x < fence_lo || x > fence_hi) {
            b.outliers.push_back(x);
        } else {
            b.whisker_low = std::min(b.whisker_low, x);
            b.whisker_high = std::max(b.whisker_high, x);
        }
    }
    return b;
}

}  // namespace jsa::stats
