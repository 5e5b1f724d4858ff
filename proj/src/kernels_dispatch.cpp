#include "ratiolab/kernels.hpp"

namespace ratiolab::kernels {

namespace {

bool cpu_has_avx2() {
#ifdef RATIOLAB_HAVE_AVX2_BUILD
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend& current_backend() {
    static Backend b = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
    return b;
}

}  // namespace

Backend active_backend() { return current_backend(); }

const char* backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

Backend force_backend(Backend b) {
    if (b == Backend::avx2 && !cpu_has_avx2()) return current_backend();
    current_backend() = b;
    return b;
}

double sum(std::span<const double> x) {
#ifdef RATIOLAB_HAVE_AVX2_BUILD
    if (current_backend() == Backend::avx2) return avx2::sum(x);
#endif
    return scalar::sum(x);
}

double dot(std::span<const double> x, std::span<const double> y) {
#ifdef RATIOLAB_HAVE_AVX2_BUILD
    if (current_backend() == Backend::avx2) return avx2::dot(x, y);
#endif
    return scalar::dot(x, y);
}

double sumsq(std::span<const double> x) {
#ifdef RATIOLAB_HAVE_AVX2_BUILD
    if (current_backend() == Backend::avx2) return avx2::sumsq(x);
#endif
    return scalar::sumsq(x);
}

double line_rss(std::span<const double> x, std::span<const double> y,
                double a, double b) {
#ifdef RATIOLAB_HAVE_AVX2_BUILD
    if (current_backend() == Backend::avx2) return avx2::line_rss(x, y, a, b);
#endif
    return scalar::line_rss(x, y, a, b);
}

void poly_eval(std::span<const double> x, std::span<const double> coeffs,
               std::span<double> out) {
#ifdef RATIOLAB_HAVE_AVX2_BUILD
    if (current_backend() == Backend::avx2) {
        avx2::poly_eval(x, coeffs, out);
        return;
    }
#endif
    scalar::poly_eval(x, coeffs, out);
}

}  // namespace ratiolab::kernels
