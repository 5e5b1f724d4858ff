#include "ratiolab/kernels.hpp"

#include <cassert>

namespace ratiolab::kernels::scalar {

double sum(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v;
    return acc;
}

double dot(std::span<const double> x, std::span<const double> y) {
    assert(x.size() == y.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}

double sumsq(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return acc;
}

double line_rss(std::span<const double> x, std::span<const double> y,
                double a, double b) {
    assert(x.size() == y.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - a - b * x[i];
        acc += r * r;
    }
    return acc;
}

void poly_eval(std::span<const double> x, std::span<const double> coeffs,
               std::span<double> out) {
    assert(x.size() == out.size());
    if (coeffs.empty()) {
        for (double& o : out) o = 0.0;
        return;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        double acc = coeffs[coeffs.size() - 1];
        for (std::size_t k = coeffs.size() - 1; k-- > 0;)
            acc = acc * x[i] + coeffs[k];
        out[i] = acc;
    }
}

}  // namespace ratiolab::kernels::scalar
