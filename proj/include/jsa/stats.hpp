#pragma once

// Descriptive statistics, correlation with significance, Student-t and F
// distribution functions, Welch's two-sample test and box-plot summaries.
// All functions are pure.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace jsa::stats {

struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    /// Sample standard deviation (n - 1 denominator). 0 when n == 1.
    double sd = 0.0;
    /// False when n < 2 and `sd` is therefore a placeholder.
    bool sd_defined = false;
};

/// Throws UsageError on empty input.
SummaryStats summary(std::span<const double> values);

double mean(std::span<const double> values);

enum class Stars { none, p05, p01 };

/// "", "*" or "**".
const char* stars_label(Stars s) noexcept;
Stars stars_for(double p) noexcept;

struct CorrelationResult {
    double r = 0.0;
    std::size_t n = 0;
    double t_stat = 0.0;
    double p_two_tailed = 1.0;
    Stars stars = Stars::none;
};

/// Pearson product-moment correlation with a two-tailed test against r = 0
/// on n - 2 degrees of freedom. Throws UsageError on unequal lengths or
/// n < 3 and UndefinedCorrelation if either input is constant.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

struct CorrelationMatrix {
    std::vector<SummaryStats> summaries;
    /// results[i][j] for i != j; empty where a variable is constant.
    std::vector<std::vector<std::optional<CorrelationResult>>> results;
};

/// Summaries and pairwise Pearson correlations of equally long columns.
CorrelationMatrix correlation_matrix(std::span<const std::vector<double>> columns);

/// log Gamma(x) for x > 0 (Lanczos approximation, g = 7).
double log_gamma(double x);

/// Regularised incomplete beta I_x(a, b) by Lentz's continued fraction.
double reg_inc_beta(double x, double a, double b);

/// Student-t cumulative distribution function.
double t_cdf(double t, double df);

/// P(|T| >= |t|) for T ~ t(df), computed without cancellation.
double t_two_tailed_p(double t, double df);

/// Quantile of the Student-t distribution, p in (0, 1).
double t_quantile(double p, double df);

/// F cumulative distribution function with (d1, d2) degrees of freedom.
double f_cdf(double f, double d1, double d2);

/// Upper tail P(F' >= f), computed without cancellation.
double f_sf(double f, double d1, double d2);

struct TestResult {
    double statistic = 0.0;
    double df = 0.0;
    double p_two_tailed = 1.0;
};

/// Welch's unequal-variance two-sample t-test. Requires n >= 2 in each sample.
TestResult welch_test(std::span<const double> x, std::span<const double> y);

/// Type-7 (linear interpolation of order statistics) quantile of sorted data.
double quantile_sorted(std::span<const double> sorted, double p);

struct BoxSummary {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    double whisker_low = 0.0;
    double whisker_high = 0.0;
    std::vector<double> outliers;  // ascending
    double mean = 0.0;
};

/// Tukey box: type-7 quartiles, whiskers at the most extreme observations
/// within 1.5 IQR of the box, everything beyond listed as an outlier.
BoxSummary box_summary(std::span<const double> values);

}  // namespace jsa::stats
