#include <doctest.h>

#include <random>
#include <vector>

#include "ratiolab/kernels.hpp"

using namespace ratiolab;

namespace {

std::vector<double> random_vec(std::mt19937_64& eng, size_t n, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> v(n);
    for (auto& x : v) x = u(eng);
    return v;
}

}  // namespace

TEST_CASE("scalar kernels match straightforward loops") {
    std::vector<double> x = {1.0, 2.0, 3.0, 4.0, 5.0};
    std::vector<double> y = {2.0, -1.0, 0.5, 3.0, -2.0};
    CHECK(kernels::scalar::sum(x) == doctest::Approx(15.0));
    CHECK(kernels::scalar::dot(x, y) == doctest::Approx(2.0 - 2.0 + 1.5 + 12.0 - 10.0));
    CHECK(kernels::scalar::sumsq(y) == doctest::Approx(4.0 + 1.0 + 0.25 + 9.0 + 4.0));
    // RSS about y = 1 + 0*x
    double rss = 0;
    for (double v : y) rss += (v - 1.0) * (v - 1.0);
    CHECK(kernels::scalar::line_rss(x, y, 1.0, 0.0) == doctest::Approx(rss));
}

TEST_CASE("poly_eval is Horner evaluation") {
    std::vector<double> x = {-2.0, 0.0, 1.0, 3.0, 10.0};
    std::vector<double> c = {1.0, 2.0, -0.5};
    std::vector<double> out(x.size());
    kernels::scalar::poly_eval(x, c, out);
    for (size_t i = 0; i < x.size(); ++i)
        CHECK(out[i] == doctest::Approx(1.0 + 2.0 * x[i] - 0.5 * x[i] * x[i]));
}

TEST_CASE("simd backend agrees with scalar reference") {
    const auto original = kernels::active_backend();
    if (kernels::force_backend(kernels::Backend::avx2) != kernels::Backend::avx2) {
        MESSAGE("AVX2 not available on this CPU; dispatch falls back to scalar");
        return;
    }

    std::mt19937_64 eng(42);
    for (size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 1001u}) {
        const auto x = random_vec(eng, n, 50.0);
        const auto y = random_vec(eng, n, 5.0);
        const double tol = 1e-11 * (1.0 + n);
        CHECK(kernels::sum(x) ==
              doctest::Approx(kernels::scalar::sum(x)).epsilon(tol));
        CHECK(kernels::dot(x, y) ==
              doctest::Approx(kernels::scalar::dot(x, y)).epsilon(tol));
        CHECK(kernels::sumsq(x) ==
              doctest::Approx(kernels::scalar::sumsq(x)).epsilon(tol));
        CHECK(kernels::line_rss(x, y, 0.7, -1.3) ==
              doctest::Approx(kernels::scalar::line_rss(x, y, 0.7, -1.3)).epsilon(tol));

        std::vector<double> c = {1.5, -2.0, 0.25, 0.01};
        std::vector<double> a(n), b(n);
        kernels::poly_eval(x, c, a);
        kernels::scalar::poly_eval(x, c, b);
        for (size_t i = 0; i < n; ++i)
            CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
    }
    kernels::force_backend(original);
}
