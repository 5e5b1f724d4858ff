#include "ratiolab/kernels.hpp"

#ifdef RATIOLAB_HAVE_AVX2_BUILD

#include <immintrin.h>

#include <cassert>

namespace ratiolab::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

double sum(std::span<const double> x) {
    const std::size_t n = x.size();
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(x.data() + i));
    double tail = 0.0;
    for (; i < n; ++i) tail += x[i];
    return hsum(acc) + tail;
}

double dot(std::span<const double> x, std::span<const double> y) {
    assert(x.size() == y.size());
    const std::size_t n = x.size();
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x.data() + i),
                              _mm256_loadu_pd(y.data() + i), acc);
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += x[i] * y[i];
    return hsum(acc) + tail;
}

double sumsq(std::span<const double> x) {
    const std::size_t n = x.size();
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x.data() + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += x[i] * x[i];
    return hsum(acc) + tail;
}

double line_rss(std::span<const double> x, std::span<const double> y,
                double a, double b) {
    assert(x.size() == y.size());
    const std::size_t n = x.size();
    std::size_t i = 0;
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x.data() + i);
        const __m256d vy = _mm256_loadu_pd(y.data() + i);
        __m256d r = _mm256_sub_pd(vy, _mm256_fmadd_pd(vb, vx, va));
        acc = _mm256_fmadd_pd(r, r, acc);
    }
    double tail = 0.0;
    for (; i < n; ++i) {
        const double r = y[i] - a - b * x[i];
        tail += r * r;
    }
    return hsum(acc) + tail;
}

void poly_eval(std::span<const double> x, std::span<const double> coeffs,
               std::span<double> out) {
    assert(x.size() == out.size());
    const std::size_t n = x.size();
    if (coeffs.empty()) {
        for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
        return;
    }
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x.data() + i);
        __m256d acc = _mm256_set1_pd(coeffs[coeffs.size() - 1]);
        for (std::size_t k = coeffs.size() - 1; k-- > 0;)
            acc = _mm256_fmadd_pd(acc, vx, _mm256_set1_pd(coeffs[k]));
        _mm256_storeu_pd(out.data() + i, acc);
    }
    for (; i < n; ++i) {
        double acc = coeffs[coeffs.size() - 1];
        for (std::size_t k = coeffs.size() - 1; k-- > 0;)
            acc = acc * x[i] + coeffs[k];
        out[i] = acc;
    }
}

}  // namespace ratiolab::kernels::avx2

#endif  // RATIOLAB_HAVE_AVX2_BUILD
