#include "jsa/kernels.hpp"

// Reference implementations. The four accumulators mirror the SIMD lanes so
// that vector backends reproduce these results bit for bit.

namespace jsa::kernels::scalar {

double sum(const double* x, std::size_t n) noexcept {
    double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
    const std::size_t body = n & ~std::size_t{3};
    for (std::size_t i = 0; i < body; i += 4) {
        l0 += x[i];
        l1 += x[i + 1];
        l2 += x[i + 2];
        l3 += x[i + 3];
    }
    double s = (l0 + l1) + (l2 + l3);
    for (std::size_t i = body; i < n; ++i) s += x[i];
    return s;
}

double dot(const double* x, const double* y, std::size_t n) noexcept {
    double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
    const std::size_t body = n & ~std::size_t{3};
    for (std::size_t i = 0; i < body; i += 4) {
        l0 += x[i] * y[i];
        l1 += x[i + 1] * y[i + 1];
        l2 += x[i + 2] * y[i + 2];
        l3 += x[i + 3] * y[i + 3];
    }
    double s = (l0 + l1) + (l2 + l3);
    for (std::size_t i = body; i < n; ++i) s += x[i] * y[i];
    return s;
}

double centered_dot(const double* x, double mx, const double* y, double my, std::size_t n) noexcept {
    double l[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t body = n & ~std::size_t{3};
    for (std::size_t i = 0; i < body; i += 4) {
        for (std::size_t k = 0; k < 4; ++k) {
            l[k] += (x[i + k] - mx) * (y[i + k] - my);
        }
    }
    double s = (l[0] + l[1]) + (l[2] + l[3]);
    for (std::size_t i = body; i < n; ++i) s += (x[i] - mx) * (y[i] - my);
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

CentralSums central_sums(const double* x, double mean, std::size_t n) noexcept {
    double a2[4] = {}, a3[4] = {}, a4[4] = {};
    const std::size_t body = n & ~std::size_t{3};
    for (std::size_t i = 0; i < body; i += 4) {
        for (std::size_t k = 0; k < 4; ++k) {
            const double d = x[i + k] - mean;
            const double d2 = d * d;
            a2[k] += d2;
            a3[k] += d2 * d;
            a4[k] += d2 * d2;
        }
    }
    CentralSums out;
    out.s2 = (a2[0] + a2[1]) + (a2[2] + a2[3]);
    out.s3 = (a3[0] + a3[1]) + (a3[2] + a3[3]);
    out.s4 = (a4[0] + a4[1]) + (a4[2] + a4[3]);
    for (std::size_t i = body; i < n; ++i) {
        const double d = x[i] - mean;
        const double d2 = d * d;
        out.s2 += d2;
        out.s3 += d2 * d;
        out.s4 += d2 * d2;
    }
    return out;
}

}  // namespace jsa::kernels::scalar
