#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "jsa/errors.hpp"
#include "jsa/kernels.hpp"

using namespace jsa::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& g, std::size_t n) {
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    std::vector<double> v(n);
    for (auto& x : v) x = u(g) * std::pow(10.0, static_cast<int>(g() % 7) - 3);
    return v;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

struct Impl {
    Backend backend;
    double (*sum)(const double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    double (*centered_dot)(const double*, double, const double*, double, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    CentralSums (*central_sums)(const double*, double, std::size_t);
};

std::vector<Impl> vector_impls() {
    std::vector<Impl> out;
    if (backend_available(Backend::avx2)) {
        out.push_back({Backend::avx2, avx2::sum, avx2::dot, avx2::centered_dot, avx2::axpy, avx2::central_sums});
    }
    if (backend_available(Backend::neon)) {
        out.push_back({Backend::neon, neon::sum, neon::dot, neon::centered_dot, neon::axpy, neon::central_sums});
    }
    return out;
}

}  // namespace

TEST_CASE("scalar kernels against naive sums on small inputs") {
    const std::vector<double> x = {1, 2, 3, 4, 5, 6, 7};
    const std::vector<double> y = {7, 6, 5, 4, 3, 2, 1};
    CHECK(scalar::sum(x.data(), x.size()) == 28.0);
    CHECK(scalar::dot(x.data(), y.data(), x.size()) == 84.0);
    CHECK(scalar::centered_dot(x.data(), 4.0, y.data(), 4.0, x.size()) == -28.0);
    const auto cs = scalar::central_sums(x.data(), 4.0, x.size());
    CHECK(cs.s2 == 28.0);
    CHECK(cs.s3 == 0.0);
    CHECK(cs.s4 == 196.0);
    std::vector<double> z = y;
    scalar::axpy(2.0, x.data(), z.data(), z.size());
    CHECK(z == std::vector<double>{9, 10, 11, 12, 13, 14, 15});
    CHECK(scalar::sum(x.data(), 0) == 0.0);
}

TEST_CASE("vector backends are bit-identical to the scalar reference") {
    const auto impls = vector_impls();
    if (impls.empty()) {
        MESSAGE("no vector backend on this host");
        return;
    }
    std::mt19937_64 g(5);
    for (const auto& impl : impls) {
        CAPTURE(backend_name(impl.backend));
        for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 63u, 64u, 65u, 1000u, 4099u}) {
            CAPTURE(n);
            const auto x = random_vector(g, n);
            const auto y = random_vector(g, n);
            const double mx = 1.25;
            const double my = -3.5;
            CHECK(same_bits(impl.sum(x.data(), n), scalar::sum(x.data(), n)));
            CHECK(same_bits(impl.dot(x.data(), y.data(), n), scalar::dot(x.data(), y.data(), n)));
            CHECK(same_bits(impl.centered_dot(x.data(), mx, y.data(), my, n),
                            scalar::centered_dot(x.data(), mx, y.data(), my, n)));
            const auto a = impl.central_sums(x.data(), mx, n);
            const auto b = scalar::central_sums(x.data(), mx, n);
            CHECK(same_bits(a.s2, b.s2));
            CHECK(same_bits(a.s3, b.s3));
            CHECK(same_bits(a.s4, b.s4));
            auto za = y;
            auto zb = y;
            impl.axpy(-0.375, x.data(), za.data(), n);
            scalar::axpy(-0.375, x.data(), zb.data(), n);
            CHECK(std::memcmp(za.data(), zb.data(), n * sizeof(double)) == 0);
        }
    }
}

TEST_CASE("dispatch honours set_backend and rejects unavailable backends") {
    const Backend original = active_backend();
    CHECK(backend_available(Backend::scalar));
    set_backend(Backend::scalar);
    CHECK(active_backend() == Backend::scalar);
    const std::vector<double> x = {0.1, 0.2, 0.3, 0.4, 0.5};
    const double s = sum(x);
    for (Backend b : {Backend::avx2, Backend::neon}) {
        if (backend_available(b)) {
            set_backend(b);
            CHECK(same_bits(sum(x), s));
        } else {
            CHECK_THROWS_AS(set_backend(b), jsa::UsageError);
        }
    }
    set_backend(original);
    CHECK(active_backend() == original);
}
