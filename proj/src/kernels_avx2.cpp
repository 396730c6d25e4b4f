#include "jsa/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)
#include <immintrin.h>

namespace jsa::kernels::avx2 {
namespace {

// (l0 + l1) + (l2 + l3), matching the scalar reference.
inline double reduce(__m256d v) noexcept {
    alignas(32) double l[4];
    _mm256_store_pd(l, v);
    return (l[0] + l[1]) + (l[2] + l[3]);
}

}  // namespace

double sum(const double* x, std::size_t n) noexcept {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t body = n & ~std::size_t{3};
    for (std::size_t i = 0; i < body; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    }
    double s = reduce(acc);
    for (std::size_t i = body; i < n; ++i) s += x[i];
    return s;
}

double dot(const double* x, const double* y, std::size_t n) noexcept {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t body = n & ~std::size_t{3};
    for (std::size_t i = 0; i < body; i += 4) {
        const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_add_pd(acc, p);
    }
    double s = reduce(acc);
    for (std::size_t i = body; i < n; ++i) s += x[i] * y[i];
    return s;
}

double centered_dot(const double* x, double mx, const double* y, double my, std::size_t n) noexcept {
    const __m256d vmx = _mm256_set1_pd(mx);
    const __m256d vmy = _mm256_set1_pd(my);
    __m256d acc = _mm256_setzero_pd();
    const std::size_t body = n & ~std::size_t{3};
    for (std::size_t i = 0; i < body; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i), vmx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + i), vmy);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(dx, dy));
    }
    double s = reduce(acc);
    for (std::size_t i = body; i < n; ++i) s += (x[i] - mx) * (y[i] - my);
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept {
    const __m256d va = _mm256_set1_pd(alpha);
    const std::size_t body = n & ~std::size_t{3};
    for (std::size_t i = 0; i < body; i += 4) {
        const __m256d p = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), p));
    }
    for (std::size_t i = body; i < n; ++i) y[i] += alpha * x[i];
}

CentralSums central_sums(const double* x, double mean, std::size_t n) noexcept {
    const __m256d vm = _mm256_set1_pd(mean);
    __m256d a2 = _mm256_setzero_pd();
    __m256d a3 = _mm256_setzero_pd();
    __m256d a4 = _mm256_setzero_pd();
    const std::size_t body = n & ~std::size_t{3};
    for (std::size_t i = 0; i < body; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), vm);
        const __m256d d2 = _mm256_mul_pd(d, d);
        a2 = _mm256_add_pd(a2, d2);
        a3 = _mm256_add_pd(a3, _mm256_mul_pd(d2, d));
        a4 = _mm256_add_pd(a4, _mm256_mul_pd(d2, d2));
    }
    CentralSums out{reduce(a2), reduce(a3), reduce(a4)};
    for (std::size_t i = body; i < n; ++i) {
        const double d = x[i] - mean;
        const double d2 = d * d;
        out.s2 += d2;
        out.s3 += d2 * d;
        out.s4 += d2 * d2;
    }
    return out;
}

}  // namespace jsa::kernels::avx2

#else

// Not reachable: backend_available(Backend::avx2) is false on this target.
namespace jsa::kernels::avx2 {
double sum(const double* x, std::size_t n) noexcept { return scalar::sum(x, n); }
double dot(const double* x, const double* y, std::size_t n) noexcept { return scalar::dot(x, y, n); }
double centered_dot(const double* x, double mx, const double* y, double my, std::size_t n) noexcept {
    return scalar::centered_dot(x, mx, y, my, n);
}
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept { scalar::axpy(alpha, x, y, n); }
CentralSums central_sums(const double* x, double mean, std::size_t n) noexcept {
    return scalar::central_sums(x, mean, n);
}
}  // namespace jsa::kernels::avx2

#endif
