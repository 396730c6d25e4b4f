#pragma once

// Ordinary least squares with classical inference, standardised
// coefficients, the correlation-matrix route to standardised coefficients,
// and residual diagnostics.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace jsa::regress {

struct DesignSpec {
    std::string response;
    std::vector<std::string> predictors;
    bool include_intercept = true;
};

/// Throws UsageError if predictors are empty, repeated, or include the response.
void validate(const DesignSpec& spec);

struct CoefficientRow {
    std::string name;
    double b = 0.0;
    double se = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double beta = 0.0;
    double t_stat = 0.0;
    double p_two_tailed = 1.0;
};

inline constexpr const char* kInterceptName = "Constant";

struct RegressionFit {
    DesignSpec spec;
    /// Intercept first when included, then predictors in spec order.
    std::vector<CoefficientRow> coefficients;
    std::size_t n = 0;
    std::size_t df_model = 0;
    std::size_t df_resid = 0;
    /// Centred R^2 with an intercept, uncentred R^2 without one.
    double r2 = 0.0;
    double adj_r2 = 0.0;
    double r2_centered = 0.0;
    double r2_uncentered = 0.0;
    double f_stat = 0.0;
    double p_f = 1.0;
    double sse = 0.0;
    double sigma = 0.0;
    /// |R_00| / |R_kk| of the pivoted triangular factor.
    double condition_estimate = 1.0;
    std::vector<double> residuals;
    std::vector<double> fitted;

    /// Slope row by predictor name. Throws UsageError if unknown.
    const CoefficientRow& coefficient(const std::string& name) const;
};

/// Least squares via Householder QR with column pivoting. `columns` holds one
/// vector per predictor in spec order, each of length y.size().
/// Throws RankDeficient when a pivot falls below 1e-10 of the leading pivot,
/// UsageError when n does not exceed the number of parameters.
RegressionFit fit_ols(const DesignSpec& spec, std::span<const std::vector<double>> columns,
                      std::span<const double> y);

/// beta_j = b_j * sd(x_j) / sd(y). Throws UsageError for a non-positive SD.
std::vector<double> standardized_betas(const RegressionFit& fit, std::span<const double> predictor_sds,
                                       double response_sd);

/// Solve rxx * beta = rxy by Cholesky. Throws UsageError for a non-symmetric
/// or non-unit-diagonal matrix and NotPositiveDefinite otherwise.
std::vector<double> betas_from_correlations(std::span<const std::vector<double>> rxx,
                                            std::span<const double> rxy);

/// intercept + sum_j b_j * row[name_j]. Throws UsageError on a missing name.
double predict(const std::vector<std::pair<std::string, double>>& coefficients,
               const std::map<std::string, double>& row, double intercept = 0.0);

/// 1 - (1 - r2)(n - 1)/(n - p - 1). Throws UsageError unless n > p + 1.
double adjusted_r2(double r2, std::size_t n, std::size_t p);

struct HistogramBin {
    double low = 0.0;
    double high = 0.0;
    std::size_t count = 0;
};

struct Diagnostics {
    std::vector<HistogramBin> residual_histogram;
    /// 0 when the residuals have no spread.
    double skewness = 0.0;
    /// Undefined when the residuals have no spread.
    std::optional<double> excess_kurtosis;
    std::vector<std::pair<double, double>> resid_vs_fitted;  // (fitted, residual)
    /// Keyed by predictor name; +inf when a predictor is an exact combination
    /// of the others.
    std::map<std::string, double> vif;
};

/// Residual histogram (equal-width over the residual range), moment
/// skewness/excess kurtosis, residual-vs-fitted pairs and VIFs from auxiliary
/// regressions. `columns` must be the predictor columns the fit used.
Diagnostics diagnostics(const RegressionFit& fit, std::span<const std::vector<double>> columns,
                        std::size_t bins = 30);

}  // namespace jsa::regress
