#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "dta/simd/simd.hpp"

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    std::vector<double> v(n);
    for (double& x : v) x = uni(rng);
    return v;
}

}  // namespace

TEST_CASE("scalar kernels compute the expected values") {
    const std::vector<double> a{1.0, 2.0, 3.0};
    const std::vector<double> b{4.0, -1.0, 0.5};
    CHECK(dta::simd::scalar::dot(a.data(), b.data(), 3) == doctest::Approx(3.5));
    CHECK(dta::simd::scalar::sum(a.data(), 3) == doctest::Approx(6.0));
    CHECK(dta::simd::scalar::squared_distance(a.data(), b.data(), 3) ==
          doctest::Approx(9.0 + 9.0 + 6.25));

    std::vector<double> y = b;
    dta::simd::scalar::axpy(2.0, a.data(), y.data(), 3);
    CHECK(y[0] == doctest::Approx(6.0));
    CHECK(y[1] == doctest::Approx(3.0));
    CHECK(y[2] == doctest::Approx(6.5));

    std::vector<double> s = a;
    dta::simd::scalar::scale(s.data(), -2.0, 3);
    CHECK(s[2] == doctest::Approx(-6.0));
}

TEST_CASE("dispatched kernels agree with the scalar reference") {
    INFO("active backend: " << dta::simd::backend_name());
    std::mt19937_64 rng(42);
    // cover remainders around every SIMD width
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 1000u}) {
        const auto a = random_vec(n, rng);
        const auto b = random_vec(n, rng);
        CHECK(dta::simd::dot(a.data(), b.data(), n) ==
              doctest::Approx(dta::simd::scalar::dot(a.data(), b.data(), n)).epsilon(1e-12));
        CHECK(dta::simd::sum(a.data(), n) ==
              doctest::Approx(dta::simd::scalar::sum(a.data(), n)).epsilon(1e-12));
        CHECK(dta::simd::squared_distance(a.data(), b.data(), n) ==
              doctest::Approx(dta::simd::scalar::squared_distance(a.data(), b.data(), n))
                  .epsilon(1e-12));

        auto y1 = b;
        auto y2 = b;
        dta::simd::axpy(1.7, a.data(), y1.data(), n);
        dta::simd::scalar::axpy(1.7, a.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-13));

        auto s1 = a;
        auto s2 = a;
        dta::simd::scale(s1.data(), 0.37, n);
        dta::simd::scalar::scale(s2.data(), 0.37, n);
        for (std::size_t i = 0; i < n; ++i) CHECK(s1[i] == s2[i]);
    }
}

#if defined(__x86_64__)
TEST_CASE("avx2 kernels agree with scalar when the host supports them") {
    if (!dta::simd::avx2::supported()) return;
    std::mt19937_64 rng(7);
    for (std::size_t n : {1u, 5u, 8u, 13u, 100u, 257u}) {
        const auto a = random_vec(n, rng);
        const auto b = random_vec(n, rng);
        CHECK(dta::simd::avx2::dot(a.data(), b.data(), n) ==
              doctest::Approx(dta::simd::scalar::dot(a.data(), b.data(), n)).epsilon(1e-12));
        CHECK(dta::simd::avx2::squared_distance(a.data(), b.data(), n) ==
              doctest::Approx(dta::simd::scalar::squared_distance(a.data(), b.data(), n))
                  .epsilon(1e-12));
        CHECK(dta::simd::avx2::sum(a.data(), n) ==
              doctest::Approx(dta::simd::scalar::sum(a.data(), n)).epsilon(1e-12));
    }
}
#endif
