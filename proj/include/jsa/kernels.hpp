#pragma once

// Dense double-precision reductions used by the statistics and regression
// code. Each routine has a scalar reference implementation and vectorised
// variants (AVX2 on x86-64, NEON on AArch64) selected once at runtime.
//
// Every backend accumulates in the same four-lane order: element i goes to
// lane i % 4, lanes are combined as (l0 + l1) + (l2 + l3), and the tail
// (i >= 4 * floor(n / 4)) is added last in index order. No backend fuses
// multiply-add. Results are therefore bit-identical whichever backend runs.

#include <cstddef>
#include <span>
#include <string_view>

namespace jsa::kernels {

enum class Backend { scalar, avx2, neon };

std::string_view backend_name(Backend b) noexcept;

/// True if `b` can run on this machine.
bool backend_available(Backend b) noexcept;

/// Backend used by the free functions below. Chosen at first use from
/// JSA_SIMD (scalar|avx2|neon) if set and available, else the best available.
Backend active_backend() noexcept;

/// Override the active backend. Throws UsageError if unavailable.
void set_backend(Backend b);

double sum(std::span<const double> x) noexcept;
double dot(std::span<const double> x, std::span<const double> y) noexcept;

/// Sum of (x[i] - mx) * (y[i] - my).
double centered_dot(std::span<const double> x, double mx,
                    std::span<const double> y, double my) noexcept;

/// y[i] += alpha * x[i]
void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept;

/// Second, third and fourth central power sums around `mean`.
struct CentralSums {
    double s2 = 0.0;
    double s3 = 0.0;
    double s4 = 0.0;
};
CentralSums central_sums(std::span<const double> x, double mean) noexcept;

// Direct entry points for equivalence testing. Calling a backend that is not
// available on the host is undefined; check backend_available() first.
namespace scalar {
double sum(const double* x, std::size_t n) noexcept;
double dot(const double* x, const double* y, std::size_t n) noexcept;
double centered_dot(const double* x, double mx, const double* y, double my, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
CentralSums central_sums(const double* x, double mean, std::size_t n) noexcept;
}  // namespace scalar

namespace avx2 {
double sum(const double* x, std::size_t n) noexcept;
double dot(const double* x, const double* y, std::size_t n) noexcept;
double centered_dot(const double* x, double mx, const double* y, double my, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
CentralSums central_sums(const double* x, double mean, std::size_t n) noexcept;
}  // namespace avx2

namespace neon {
double sum(const double* x, std::size_t n) noexcept;
double dot(const double* x, const double* y, std::size_t n) noexcept;
double centered_dot(const double* x, double mx, const double* y, double my, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
CentralSums central_sums(const double* x, double mean, std::size_t n) noexcept;
}  // namespace neon

}  // namespace jsa::kernels
