#include "jsa/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

// Two 128-bit registers hold lanes {0,1} and {2,3} of the reference layout.
// vfmaq is deliberately absent: products are rounded before accumulation.

namespace jsa::kernels::neon {
namespace {

inline double reduce(float64x2_t lo, float64x2_t hi) noexcept {
    return (vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1)) +
           (vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1));
}

}  // namespace

double sum(const double* x, std::size_t n) noexcept {
    float64x2_t lo = vdupq_n_f64(0.0), hi = vdupq_n_f64(0.0);
    const std::size_t body = n & ~std::size_t{3};
    for (std::size_t i = 0; i < body; i += 4) {
        lo = vaddq_f64(lo, vld1q_f64(x + i));
        hi = vaddq_f64(hi, vld1q_f64(x + i + 2));
    }
    double s = reduce(lo, hi);
    for (std::size_t i = body; i < n; ++i) s += x[i];
    return s;
}

double dot(const double* x, const double* y, std::size_t n) noexcept {
    float64x2_t lo = vdupq_n_f64(0.0), hi = vdupq_n_f64(0.0);
    const std::size_t body = n & ~std::size_t{3};
    for (std::size_t i = 0; i < body; i += 4) {
        lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
        hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
    }
    double s = reduce(lo, hi);
    for (std::size_t i = body; i < n; ++i) s += x[i] * y[i];
    return s;
}

double centered_dot(const double* x, double mx, const double* y, double my, std::size_t n) noexcept {
    const float64x2_t vmx = vdupq_n_f64(mx), vmy = vdupq_n_f64(my);
    float64x2_t lo = vdupq_n_f64(0.0), hi = vdupq_n_f64(0.0);
    const std::size_t body = n & ~std::size_t{3};
    for (std::size_t i = 0; i < body; i += 4) {
        const float64x2_t dx0 = vsubq_f64(vld1q_f64(x + i), vmx);
        const float64x2_t dy0 = vsubq_f64(vld1q_f64(y + i), vmy);
        const float64x2_t dx1 = vsubq_f64(vld1q_f64(x + i + 2), vmx);
        const float64x2_t dy1 = vsubq_f64(vld1q_f64(y + i + 2), vmy);
        lo = vaddq_f64(lo, vmulq_f64(dx0, dy0));
        hi = vaddq_f64(hi, vmulq_f64(dx1, dy1));
    }
    double s = reduce(lo, hi);
    for (std::size_t i = body; i < n; ++i) s += (x[i] - mx) * (y[i] - my);
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept {
    const float64x2_t va = vdupq_n_f64(alpha);
    const std::size_t body = n & ~std::size_t{1};
    for (std::size_t i = 0; i < body; i += 2) {
        vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
    }
    for (std::size_t i = body; i < n; ++i) y[i] += alpha * x[i];
}

CentralSums central_sums(const double* x, double mean, std::size_t n) noexcept {
    const float64x2_t vm = vdupq_n_f64(mean);
    float64x2_t a2[2] = {vdupq_n_f64(0.0), vdupq_n_f64(0.0)};
    float64x2_t a3[2] = {vdupq_n_f64(0.0), vdupq_n_f64(0.0)};
    float64x2_t a4[2] = {vdupq_n_f64(0.0), vdupq_n_f64(0.0)};
    const std::size_t body = n & ~std::size_t{3};
    for (std::size_t i = 0; i < body; i += 4) {
        for (int h = 0; h < 2; ++h) {
            const float64x2_t d = vsubq_f64(vld1q_f64(x + i + 2 * h), vm);
            const float64x2_t d2 = vmulq_f64(d, d);
            a2[h] = vaddq_f64(a2[h], d2);
            a3[h] = vaddq_f64(a3[h], vmulq_f64(d2, d));
            a4[h] = vaddq_f64(a4[h], vmulq_f64(d2, d2));
        }
    }
    CentralSums out{reduce(a2[0], a2[1]), reduce(a3[0], a3[1]), reduce(a4[0], a4[1])};
    for (std::size_t i = body; i < n; ++i) {
        const double d = x[i] - mean;
        const double d2 = d * d;
        out.s2 += d2;
        out.s3 += d2 * d;
        out.s4 += d2 * d2;
    }
    return out;
}

}  // namespace jsa::kernels::neon

#else

namespace jsa::kernels::neon {
double sum(const double* x, std::size_t n) noexcept { return scalar::sum(x, n); }
double dot(const double* x, const double* y, std::size_t n) noexcept { return scalar::dot(x, y, n); }
double centered_dot(const double* x, double mx, const double* y, double my, std::size_t n) noexcept {
    return scalar::centered_dot(x, mx, y, my, n);
}
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept { scalar::axpy(alpha, x, y, n); }
CentralSums central_sums(const double* x, double mean, std::size_t n) noexcept {
    return scalar::central_sums(x, mean, n);
}
}  // namespace jsa::kernels::neon

#endif
