#pragma once

// Data-parallel reduction kernels used by the regression and simulation
// inner loops.  A scalar reference implementation always exists; on x86-64
// an AVX2+FMA variant is selected at runtime when the CPU supports it.
// Both variants are equivalence-tested against each other.

#include <cstddef>
#include <span>

namespace ratiolab::kernels {

enum class Backend { scalar, avx2 };

// Backend currently used by the dispatching entry points below.
Backend active_backend();
const char* backend_name(Backend b);

// Force a specific backend (tests only).  Forcing Backend::avx2 on a CPU
// without AVX2 is a no-op; the return value is the backend actually set.
Backend force_backend(Backend b);

// Sum of all elements.
double sum(std::span<const double> x);

// Inner product; x and y must have equal length.
double dot(std::span<const double> x, std::span<const double> y);

// Sum of squares.
double sumsq(std::span<const double> x);

// Residual sum of squares about the line y = a + b*x.
double line_rss(std::span<const double> x, std::span<const double> y,
                double a, double b);

// Horner evaluation of a polynomial (coeffs[0] + coeffs[1]*x + ...) at each
// x[i], writing to out[i].  out must have the same length as x.
void poly_eval(std::span<const double> x, std::span<const double> coeffs,
               std::span<double> out);

namespace scalar {
double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double sumsq(std::span<const double> x);
double line_rss(std::span<const double> x, std::span<const double> y,
                double a, double b);
void poly_eval(std::span<const double> x, std::span<const double> coeffs,
               std::span<double> out);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define RATIOLAB_HAVE_AVX2_BUILD 1
namespace avx2 {
double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double sumsq(std::span<const double> x);
double line_rss(std::span<const double> x, std::span<const double> y,
                double a, double b);
void poly_eval(std::span<const double> x, std::span<const double> coeffs,
               std::span<double> out);
}  // namespace avx2
#endif

}  // namespace ratiolab::kernels
