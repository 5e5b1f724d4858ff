#pragma once

// Ordinary least-squares polynomial fitting with per-coefficient inference,
// the ratio <-> fraction reparameterization, and inflection-point extraction.

#include <optional>
#include <vector>

namespace ratiolab::regression {

enum class XKind { ratio, fraction, raw };

struct Point {
    double x = 0;
    double y = 0;
};

// Raw (x, y) observations.
struct ScatterData {
    std::vector<Point> points;
    XKind x_kind = XKind::raw;

    // True when the data came from a dichotomized design (e.g. per-group
    // summary rows): only group labels survive, not outcome scores.
    bool dichotomized = false;

    std::vector<double> xs() const;
    std::vector<double> ys() const;

    // Throws DomainError on non-finite coordinates or fraction x outside [0,1].
    void validate() const;
};

struct InflectionPoint {
    double x = 0;
    bool inside_range = false;  // within the fitted data's predictor range
};

// Fitted polynomial in the raw predictor basis, with inference.
struct RegressionFit {
    int degree = 0;
    std::vector<double> coeffs;      // b0..bd, raw basis
    std::vector<double> std_errors;  // per coefficient
    std::vector<double> t_stats;
    std::vector<double> p_values;    // two-tailed
    double r_squared = 0;
    long n = 0;
    double resid_var = 0;            // unbiased, RSS / (n - degree - 1)

    // Observed predictor/response scale, recorded at fit time.  Used for the
    // cubic-term numerical floor and for extrapolation flagging.
    double x_min = 0;
    double x_max = 0;
    double x_sd = 0;
    double y_sd = 0;
};

// Least squares via Householder QR on a centered-and-scaled polynomial basis;
// coefficients and their covariance are mapped back to the raw basis for
// reporting.  degree must be 1, 2 or 3 and n > degree + 1.
RegressionFit fit_polynomial(const ScatterData& data, int degree);

// Horner evaluation of the fitted polynomial.
double predict(const RegressionFit& fit, double x);

// True when x lies outside the predictor range seen at fit time.
bool is_extrapolation(const RegressionFit& fit, double x);

// r / (1 + r), a strictly increasing bijection [0, inf) -> [0, 1).
double ratio_to_fraction(double r);

// f / (1 - f), the inverse transformation, for f in [0, 1).
double fraction_to_ratio(double f);

// p / (p + n); defined even when n = 0 (returns 1).  Throws
// UndefinedFractionError when p = n = 0.
double fraction_from_counts(double p, double n);

// Root of the fitted cubic's second derivative, x* = -b2 / (3 b3), when the
// cubic term exceeds a numerical floor of 1e-3 * y_sd / x_sd^3; absent
// otherwise.  Throws DomainError unless fit.degree == 3.
std::optional<InflectionPoint> inflection_point(const RegressionFit& fit);

}  // namespace ratiolab::regression
