#include "jsa/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "jsa/errors.hpp"

namespace jsa::kernels {
namespace {

struct Table {
    Backend backend;
    double (*sum)(const double*, std::size_t) noexcept;
    double (*dot)(const double*, const double*, std::size_t) noexcept;
    double (*centered_dot)(const double*, double, const double*, double, std::size_t) noexcept;
    void (*axpy)(double, const double*, double*, std::size_t) noexcept;
    CentralSums (*central_sums)(const double*, double, std::size_t) noexcept;
};

constexpr Table kScalar{Backend::scalar, scalar::sum, scalar::dot, scalar::centered_dot,
                        scalar::axpy, scalar::central_sums};
constexpr Table kAvx2{Backend::avx2, avx2::sum, avx2::dot, avx2::centered_dot,
                      avx2::axpy, avx2::central_sums};
constexpr Table kNeon{Backend::neon, neon::sum, neon::dot, neon::centered_dot,
                      neon::axpy, neon::central_sums};

const Table* table_for(Backend b) noexcept {
    switch (b) {
        case Backend::avx2: return &kAvx2;
        case Backend::neon: return &kNeon;
        case Backend::scalar: break;
    }
    return &kScalar;
}

const Table* initial_table() noexcept {
    if (const char* env = std::getenv("JSA_SIMD")) {
        const std::string want(env);
        for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
            if (want == backend_name(b) && backend_available(b)) return table_for(b);
        }
    }
    if (backend_available(Backend::avx2)) return &kAvx2;
    if (backend_available(Backend::neon)) return &kNeon;
    return &kScalar;
}

std::atomic<const Table*>& current() noexcept {
    static std::atomic<const Table*> t{initial_table()};
    return t;
}

inline const Table& active() noexcept { return *current().load(std::memory_order_relaxed); }

}  // namespace

std::string_view backend_name(Backend b) noexcept {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "scalar";
}

bool backend_available(Backend b) noexcept {
    switch (b) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Backend::neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Backend active_backend() noexcept { return active().backend; }

void set_backend(Backend b) {
    if (!backend_available(b)) {
        throw UsageError("SIMD backend '" + std::string(backend_name(b)) + "' is not available");
    }
    current().store(table_for(b), std::memory_order_relaxed);
}

double sum(std::span<const double> x) noexcept { return active().sum(x.data(), x.size()); }

double dot(std::span<const double> x, std::span<const double> y) noexcept {
    return active().dot(x.data(), y.data(), x.size());
}

double centered_dot(std::span<const double> x, double mx, std::span<const double> y, double my) noexcept {
    return active().centered_dot(x.data(), mx, y.data(), my, x.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept {
    active().axpy(alpha, x.data(), y.data(), x.size());
}

CentralSums central_sums(std::span<const double> x, double mean) noexcept {
    return active().central_sums(x.data(), mean, x.size());
}

}  // namespace jsa::kernels
