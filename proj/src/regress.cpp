#include "jsa/regress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "jsa/errors.hpp"
#include "jsa/kernels.hpp"
#include "jsa/stats.hpp"

namespace jsa::regress {
namespace {

constexpr double kRankTolerance = 1e-10;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Column-major Householder QR with column pivoting, applied in place.
struct PivotedQr {
    std::vector<std::vector<double>> a;  // columns; upper triangle holds R on exit
    std::vector<std::size_t> perm;       // perm[j] = original column at pivot j
    std::vector<std::vector<double>> reflectors;
    std::vector<double> reflector_norm2;

    // Throws RankDeficient naming names[perm[j]] at the first tiny pivot.
    void factor(const std::vector<std::string>& names) {
        const std::size_t k = a.size();
        const std::size_t n = a.front().size();
        perm.resize(k);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        double lead = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            std::size_t best = j;
            double best_norm2 = -1.0;
            for (std::size_t c = j; c < k; ++c) {
                std::span<const double> seg(a[c].data() + j, n - j);
                const double nn = kernels::dot(seg, seg);
                if (nn > best_norm2) {
                    best_norm2 = nn;
                    best = c;
                }
            }
            std::swap(a[j], a[best]);
            std::swap(perm[j], perm[best]);

            const double norm = std::sqrt(best_norm2);
            if (j == 0) lead = norm;
            if (!(norm > kRankTolerance * lead) || norm == 0.0) {
                const std::string& name = names[perm[j]];
                throw RankDeficient(name, "design is rank deficient: column '" + name +
                                              "' is a linear combination of the others");
            }

            std::span<double> x(a[j].data() + j, n - j);
            const double alpha = x[0];
            const double beta = alpha >= 0.0 ? -norm : norm;
            std::vector<double> v(x.begin(), x.end());
            v[0] -= beta;
            const double vtv = kernels::dot(v, v);
            std::fill(x.begin(), x.end(), 0.0);
            x[0] = beta;
            for (std::size_t c = j + 1; c < k; ++c) {
                std::span<double> seg(a[c].data() + j, n - j);
                const double s = 2.0 * kernels::dot(v, seg) / vtv;
                kernels::axpy(-s, v, seg);
            }
            reflectors.push_back(std::move(v));
            reflector_norm2.push_back(vtv);
        }
    }

    std::vector<double> apply_qt(std::span<const double> y) const {
        std::vector<double> out(y.begin(), y.end());
        for (std::size_t j = 0; j < reflectors.size(); ++j) {
            std::span<double> seg(out.data() + j, out.size() - j);
            const double s = 2.0 * kernels::dot(reflectors[j], seg) / reflector_norm2[j];
            kernels::axpy(-s, reflectors[j], seg);
        }
        return out;
    }

    double r(std::size_t row, std::size_t col) const { return a[col][row]; }
};

// Inverse of the k x k upper-triangular R, row-major.
std::vector<std::vector<double>> invert_upper(const PivotedQr& qr, std::size_t k) {
    std::vector<std::vector<double>> inv(k, std::vector<double>(k, 0.0));
    for (std::size_t c = 0; c < k; ++c) {
        inv[c][c] = 1.0 / qr.r(c, c);
        for (std::size_t i = c; i-- > 0;) {
            double s = 0.0;
            for (std::size_t m = i + 1; m <= c; ++m) s += qr.r(i, m) * inv[m][c];
            inv[i][c] = -s / qr.r(i, i);
        }
    }
    return inv;
}

double safe_sd(std::span<const double> v) {
    return v.size() >= 2 ? stats::summary(v).sd : 0.0;
}

}  // namespace

void validate(const DesignSpec& spec) {
    if (spec.predictors.empty()) throw UsageError("design has no predictors");
    std::set<std::string> seen;
    for (const auto& p : spec.predictors) {
        if (!seen.insert(p).second) throw UsageError("predictor '" + p + "' listed twice");
        if (p == spec.response) throw UsageError("response '" + p + "' also listed as a predictor");
    }
}

const CoefficientRow& RegressionFit::coefficient(const std::string& name) const {
    for (const auto& c : coefficients) {
        if (c.name == name) return c;
    }
    throw UsageError("no coefficient named '" + name + "'");
}

RegressionFit fit_ols(const DesignSpec& spec, std::span<const std::vector<double>> columns,
                      std::span<const double> y) {
    validate(spec);
    if (columns.size() != spec.predictors.size()) {
        throw UsageError("fit_ols: " + std::to_string(columns.size()) + " columns for " +
                         std::to_string(spec.predictors.size()) + " predictors");
    }
    const std::size_t n = y.size();
    for (const auto& c : columns) {
        if (c.size() != n) throw UsageError("fit_ols: column length differs from response length");
    }
    const std::size_t p = spec.predictors.size();
    const std::size_t k = p + (spec.include_intercept ? 1 : 0);
    if (n <= k) {
        throw UsageError("fit_ols: " + std::to_string(n) + " observations for " + std::to_string(k) +
                         " parameters");
    }

    std::vector<std::string> names;
    PivotedQr qr;
    if (spec.include_intercept) {
        names.push_back(kInterceptName);
        qr.a.emplace_back(n, 1.0);
    }
    for (std::size_t j = 0; j < p; ++j) {
        names.push_back(spec.predictors[j]);
        qr.a.push_back(columns[j]);
    }
    qr.factor(names);

    const std::vector<double> qty = qr.apply_qt(y);
    std::vector<double> z(k);
    for (std::size_t i = k; i-- > 0;) {
        double s = qty[i];
        for (std::size_t m = i + 1; m < k; ++m) s -= qr.r(i, m) * z[m];
        z[i] = s / qr.r(i, i);
    }
    std::vector<double> b(k);
    for (std::size_t j = 0; j < k; ++j) b[qr.perm[j]] = z[j];

    const auto rinv = invert_upper(qr, k);
    std::vector<double> xtx_inv_diag(k);
    for (std::size_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (std::size_t m = j; m < k; ++m) s += rinv[j][m] * rinv[j][m];
        xtx_inv_diag[qr.perm[j]] = s;
    }

    RegressionFit fit;
    fit.spec = spec;
    fit.n = n;
    fit.df_resid = n - k;
    fit.condition_estimate = std::fabs(qr.r(0, 0)) / std::fabs(qr.r(k - 1, k - 1));

    fit.fitted.assign(n, 0.0);
    {
        std::size_t j = 0;
        if (spec.include_intercept) {
            std::fill(fit.fitted.begin(), fit.fitted.end(), b[0]);
            j = 1;
        }
        for (std::size_t c = 0; c < p; ++c, ++j) kernels::axpy(b[j], columns[c], fit.fitted);
    }
    fit.residuals.resize(n);
    for (std::size_t i = 0; i < n; ++i) fit.residuals[i] = y[i] - fit.fitted[i];

    fit.sse = kernels::dot(fit.residuals, fit.residuals);
    const double df_resid = static_cast<double>(fit.df_resid);
    const double s2 = fit.sse / df_resid;
    fit.sigma = std::sqrt(s2);

    const double ybar = kernels::sum(y) / static_cast<double>(n);
    const double sst = kernels::centered_dot(y, ybar, y, ybar);
    const double syy = kernels::dot(y, y);
    auto ratio_r2 = [&](double total) { return total > 0.0 ? 1.0 - fit.sse / total : 1.0; };
    fit.r2_centered = ratio_r2(sst);
    fit.r2_uncentered = ratio_r2(syy);

    double explained = 0.0;
    if (spec.include_intercept) {
        fit.df_model = p;
        fit.r2 = fit.r2_centered;
        fit.adj_r2 = 1.0 - (1.0 - fit.r2) * (static_cast<double>(n) - 1.0) / df_resid;
        explained = sst - fit.sse;
    } else {
        fit.df_model = k;
        fit.r2 = fit.r2_uncentered;
        fit.adj_r2 = 1.0 - (1.0 - fit.r2) * static_cast<double>(n) / df_resid;
        explained = syy - fit.sse;
    }
    const double df_model = static_cast<double>(fit.df_model);
    if (fit.sse > 0.0) {
        fit.f_stat = (explained / df_model) / s2;
        fit.p_f = fit.f_stat > 0.0 ? stats::f_sf(fit.f_stat, df_model, df_resid) : 1.0;
    } else {
        fit.f_stat = kInf;
        fit.p_f = 0.0;
    }

    const double t_crit = stats::t_quantile(0.975, df_resid);
    const double sd_y = safe_sd(y);
    for (std::size_t j = 0; j < k; ++j) {
        CoefficientRow row;
        row.name = names[j];
        row.b = b[j];
        row.se = std::sqrt(s2 * xtx_inv_diag[j]);
        row.ci_low = row.b - t_crit * row.se;
        row.ci_high = row.b + t_crit * row.se;
        if (row.se > 0.0) {
            row.t_stat = row.b / row.se;
            row.p_two_tailed = stats::t_two_tailed_p(row.t_stat, df_resid);
        } else if (row.b != 0.0) {
            row.t_stat = std::copysign(kInf, row.b);
            row.p_two_tailed = 0.0;
        }
        const bool is_intercept = spec.include_intercept && j == 0;
        if (!is_intercept && sd_y > 0.0) {
            row.beta = row.b * safe_sd(columns[j - (spec.include_intercept ? 1 : 0)]) / sd_y;
        }
        fit.coefficients.push_back(std::move(row));
    }
    return fit;
}

std::vector<double> standardized_betas(const RegressionFit& fit, std::span<const double> predictor_sds,
                                       double response_sd) {
    const auto& preds = fit.spec.predictors;
    if (predictor_sds.size() != preds.size()) {
        throw UsageError("standardized_betas: expected one SD per predictor");
    }
    if (!(response_sd > 0.0)) throw UsageError("standardized_betas: response SD must be positive");
    std::vector<double> out;
    out.reserve(preds.size());
    for (std::size_t j = 0; j < preds.size(); ++j) {
        if (!(predictor_sds[j] > 0.0)) {
            throw UsageError("standardized_betas: SD of '" + preds[j] + "' must be positive");
        }
        out.push_back(fit.coefficient(preds[j]).b * predictor_sds[j] / response_sd);
    }
    return out;
}

std::vector<double> betas_from_correlations(std::span<const std::vector<double>> rxx,
                                            std::span<const double> rxy) {
    const std::size_t p = rxx.size();
    if (p == 0 || rxy.size() != p) throw UsageError("betas_from_correlations: dimension mismatch");
    for (std::size_t i = 0; i < p; ++i) {
        if (rxx[i].size() != p) throw UsageError("betas_from_correlations: matrix is not square");
        if (std::fabs(rxx[i][i] - 1.0) > 1e-12) throw UsageError("betas_from_correlations: diagonal must be 1");
        for (std::size_t j = 0; j < i; ++j) {
            if (std::fabs(rxx[i][j] - rxx[j][i]) > 1e-12) {
                throw UsageError("betas_from_correlations: matrix is not symmetric");
            }
        }
    }
    // Cholesky rxx = L L^T.
    std::vector<std::vector<double>> l(p, std::vector<double>(p, 0.0));
    for (std::size_t j = 0; j < p; ++j) {
        double d = rxx[j][j];
        for (std::size_t m = 0; m < j; ++m) d -= l[j][m] * l[j][m];
        if (!(d > 0.0)) throw NotPositiveDefinite("correlation matrix is not positive definite");
        l[j][j] = std::sqrt(d);
        for (std::size_t i = j + 1; i < p; ++i) {
            double s = rxx[i][j];
            for (std::size_t m = 0; m < j; ++m) s -= l[i][m] * l[j][m];
            l[i][j] = s / l[j][j];
        }
    }
    std::vector<double> w(p);
    for (std::size_t i = 0; i < p; ++i) {
        double s = rxy[i];
        for (std::size_t m = 0; m < i; ++m) s -= l[i][m] * w[m];
        w[i] = s / l[i][i];
    }
    std::vector<double> beta(p);
    for (std::size_t i = p; i-- > 0;) {
        double s = w[i];
        for (std::size_t m = i + 1; m < p; ++m) s -= l[m][i] * beta[m];
        beta[i] = s / l[i][i];
    }
    return beta;
}

double predict(const std::vector<std::pair<std::string, double>>& coefficients,
               const std::map<std::string, double>& row, double intercept) {
    double out = intercept;
    for (const auto& [name, b] : coefficients) {
        auto it = row.find(name);
        if (it == row.end()) throw UsageError("predict: row has no value for '" + name + "'");
        out += b * it->second;
    }
    return out;
}

double adjusted_r2(double r2, std::size_t n, std::size_t p) {
    if (n <= p + 1) throw UsageError("adjusted_r2: need n > p + 1");
    const double dn = static_cast<double>(n);
    return 1.0 - (1.0 - r2) * (dn - 1.0) / (dn - static_cast<double>(p) - 1.0);
}

Diagnostics diagnostics(const RegressionFit& fit, std::span<const std::vector<double>> columns,
                        std::size_t bins) {
    if (bins < 1) throw UsageError("diagnostics: need at least one histogram bin");
    const auto& preds = fit.spec.predictors;
    if (columns.size() != preds.size()) throw UsageError("diagnostics: column count differs from the fit");
    const auto& res = fit.residuals;
    if (res.empty()) throw UsageError("diagnostics: fit has no residuals");

    Diagnostics d;
    const auto [mn, mx] = std::minmax_element(res.begin(), res.end());
    const double lo = *mn;
    const double hi = *mx;
    if (hi == lo) {
        d.residual_histogram.push_back({lo, hi, res.size()});
    } else {
        const double width = (hi - lo) / static_cast<double>(bins);
        d.residual_histogram.resize(bins);
        for (std::size_t i = 0; i < bins; ++i) {
            d.residual_histogram[i].low = lo + width * static_cast<double>(i);
            d.residual_histogram[i].high = i + 1 == bins ? hi : lo + width * static_cast<double>(i + 1);
        }
        for (double r : res) {
            auto idx = static_cast<std::size_t>((r - lo) / width);
            d.residual_histogram[std::min(idx, bins - 1)].count++;
        }
    }

    if (hi > lo) {
        const double n = static_cast<double>(res.size());
        const double m = kernels::sum(res) / n;
        const auto cs = kernels::central_sums(res, m);
        const double m2 = cs.s2 / n;
        d.skewness = (cs.s3 / n) / std::pow(m2, 1.5);
        d.excess_kurtosis = (cs.s4 / n) / (m2 * m2) - 3.0;
    }

    d.resid_vs_fitted.reserve(res.size());
    for (std::size_t i = 0; i < res.size(); ++i) d.resid_vs_fitted.emplace_back(fit.fitted[i], res[i]);

    for (std::size_t j = 0; j < preds.size(); ++j) {
        if (preds.size() == 1) {
            d.vif[preds[j]] = 1.0;
            continue;
        }
        DesignSpec aux;
        aux.response = preds[j];
        aux.include_intercept = true;
        std::vector<std::vector<double>> others;
        for (std::size_t c = 0; c < preds.size(); ++c) {
            if (c == j) continue;
            aux.predictors.push_back(preds[c]);
            others.push_back(columns[c]);
        }
        const auto& xj = columns[j];
        const double mj = kernels::sum(xj) / static_cast<double>(xj.size());
        const double sst = kernels::centered_dot(xj, mj, xj, mj);
        try {
            const RegressionFit af = fit_ols(aux, others, xj);
            d.vif[preds[j]] = af.sse > 0.0 && sst > 0.0 ? sst / af.sse : kInf;
        } catch (const RankDeficient&) {
            d.vif[preds[j]] = kInf;
        }
    }
    return d;
}

}  // namespace jsa::regress
