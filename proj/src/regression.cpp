#include "ratiolab/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ratiolab/errors.hpp"
#include "ratiolab/kernels.hpp"
#include "ratiolab/stats.hpp"

namespace ratiolab::regression {

namespace {

// Small dense matrices only: the basis has at most 4 columns.
constexpr int kMaxCols = 4;

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

std::vector<double> ScatterData::xs() const {
    std::vector<double> v;
    v.reserve(points.size());
    for (const Point& p : points) v.push_back(p.x);
    return v;
}

std::vector<double> ScatterData::ys() const {
    std::vector<double> v;
    v.reserve(points.size());
    for (const Point& p : points) v.push_back(p.y);
    return v;
}

void ScatterData::validate() const {
    for (const Point& p : points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw DomainError("scatter data must be finite");
        if (x_kind == XKind::fraction && (p.x < 0.0 || p.x > 1.0))
            throw DomainError("fraction predictor outside [0,1]");
    }
}

RegressionFit fit_polynomial(const ScatterData& data, int degree) {
    data.validate();
    if (degree < 1 || degree > 3)
        throw DomainError("polynomial degree must be 1, 2 or 3");
    const long n = static_cast<long>(data.points.size());
    const int p = degree + 1;
    if (n <= degree + 1)
        throw SampleSizeError("need more than degree + 1 points");

    const std::vector<double> xs = data.xs();
    const std::vector<double> ys = data.ys();

    const double x_mean = kernels::sum(xs) / n;
    const double y_mean = kernels::sum(ys) / n;
    double sxx = 0.0, syy = 0.0;
    for (long i = 0; i < n; ++i) {
        sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
        syy += (ys[i] - y_mean) * (ys[i] - y_mean);
    }
    const double x_sd = std::sqrt(sxx / (n - 1));
    const double y_sd = std::sqrt(syy / (n - 1));
    if (!(x_sd > 0))
        throw SingularFitError("all predictor values identical");

    // Centered-and-scaled basis: z = (x - mean) / sd keeps the degree-3
    // Vandermonde well conditioned for ratios up to ~30.
    std::vector<double> a(static_cast<size_t>(n) * p);  // column-major
    for (long i = 0; i < n; ++i) {
        const double z = (xs[i] - x_mean) / x_sd;
        double pw = 1.0;
        for (int j = 0; j < p; ++j) {
            a[static_cast<size_t>(j) * n + i] = pw;
            pw *= z;
        }
    }
    std::vector<double> qty = ys;

    // Householder QR, reducing A in place and applying the reflectors to y.
    double rmat[kMaxCols][kMaxCols] = {};
    for (int j = 0; j < p; ++j) {
        double* col = a.data() + static_cast<size_t>(j) * n;
        double norm = 0.0;
        for (long i = j; i < n; ++i) norm += col[i] * col[i];
        norm = std::sqrt(norm);
        if (norm < 1e-12 * std::sqrt(static_cast<double>(n)))
            throw SingularFitError("rank-deficient design matrix");
        const double alpha = col[j] >= 0 ? -norm : norm;
        std::vector<double> v(n - j);
        v[0] = col[j] - alpha;
        for (long i = j + 1; i < n; ++i) v[i - j] = col[i];
        const double vtv = kernels::sumsq(v);
        col[j] = alpha;
        for (long i = j + 1; i < n; ++i) col[i] = 0.0;
        if (vtv > 0) {
            for (int k = j + 1; k < p; ++k) {
                double* ck = a.data() + static_cast<size_t>(k) * n;
                double dotv = 0.0;
                for (long i = j; i < n; ++i) dotv += v[i - j] * ck[i];
                const double f = 2.0 * dotv / vtv;
                for (long i = j; i < n; ++i) ck[i] -= f * v[i - j];
            }
            double dotv = 0.0;
            for (long i = j; i < n; ++i) dotv += v[i - j] * qty[i];
            const double f = 2.0 * dotv / vtv;
            for (long i = j; i < n; ++i) qty[i] -= f * v[i - j];
        }
        for (int k = j; k < p; ++k)
            rmat[j][k] = a[static_cast<size_t>(k) * n + j];
    }

    // Back substitution for the standardized-basis coefficients.
    double cz[kMaxCols] = {};
    for (int j = p - 1; j >= 0; --j) {
        double s = qty[j];
        for (int k = j + 1; k < p; ++k) s -= rmat[j][k] * cz[k];
        cz[j] = s / rmat[j][j];
    }

    double rss = 0.0;
    for (long i = p; i < n; ++i) rss += qty[i] * qty[i];
    rss = std::max(rss, 0.0);
    const long df = n - p;
    const double resid_var = rss / df;

    // R^{-1}, then cov_z = resid_var * R^{-1} R^{-T}.
    double rinv[kMaxCols][kMaxCols] = {};
    for (int j = p - 1; j >= 0; --j) {
        rinv[j][j] = 1.0 / rmat[j][j];
        for (int i = j - 1; i >= 0; --i) {
            double s = 0.0;
            for (int k = i + 1; k <= j; ++k) s += rmat[i][k] * rinv[k][j];
            rinv[i][j] = -s / rmat[i][i];
        }
    }
    double cov_z[kMaxCols][kMaxCols] = {};
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            double s = 0.0;
            for (int k = std::max(i, j); k < p; ++k)
                s += rinv[i][k] * rinv[j][k];
            cov_z[i][j] = resid_var * s;
        }

    // Basis change back to raw powers of x:
    //   sum_k cz[k] ((x - m)/s)^k = sum_j (sum_k M[j][k] cz[k]) x^j
    // with M[j][k] = C(k, j) (-m)^(k-j) / s^k for j <= k.
    double m[kMaxCols][kMaxCols] = {};
    for (int k = 0; k < p; ++k) {
        const double sk = std::pow(x_sd, k);
        for (int j = 0; j <= k; ++j)
            m[j][k] = binom(k, j) * std::pow(-x_mean, k - j) / sk;
    }

    RegressionFit fit;
    fit.degree = degree;
    fit.n = n;
    fit.resid_var = resid_var;
    fit.x_sd = x_sd;
    fit.y_sd = y_sd;
    const auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
    fit.x_min = *mn;
    fit.x_max = *mx;
    fit.r_squared = syy > 0 ? std::clamp(1.0 - rss / syy, 0.0, 1.0) : 1.0;

    fit.coeffs.resize(p);
    fit.std_errors.resize(p);
    fit.t_stats.resize(p);
    fit.p_values.resize(p);
    for (int j = 0; j < p; ++j) {
        double cj = 0.0;
        for (int k = j; k < p; ++k) cj += m[j][k] * cz[k];
        fit.coeffs[j] = cj;
        double var = 0.0;
        for (int k = j; k < p; ++k)
            for (int l = j; l < p; ++l) var += m[j][k] * cov_z[k][l] * m[j][l];
        const double se = std::sqrt(std::max(var, 0.0));
        fit.std_errors[j] = se;
        const bool noiseless = rss <= 1e-20 * std::max(syy, 1.0);
        if (se > 0 && !noiseless) {
            fit.t_stats[j] = cj / se;
            fit.p_values[j] =
                stats::student_t_sf_two_tailed(fit.t_stats[j], static_cast<double>(df));
        } else {
            // Noiseless interpolation: a coefficient is either exactly
            // present or numerically null.
            const double floor_j =
                1e-9 * (y_sd > 0 ? y_sd : 1.0) / std::pow(x_sd, j);
            const bool null_coef = std::fabs(cj) <= floor_j;
            fit.t_stats[j] =
                null_coef ? 0.0
                          : std::copysign(std::numeric_limits<double>::infinity(), cj);
            fit.p_values[j] = null_coef ? 1.0 : 0.0;
        }
    }
    return fit;
}

double predict(const RegressionFit& fit, double x) {
    if (!std::isfinite(x)) throw DomainError("predictor must be finite");
    double acc = 0.0;
    for (size_t k = fit.coeffs.size(); k-- > 0;) acc = acc * x + fit.coeffs[k];
    return acc;
}

bool is_extrapolation(const RegressionFit& fit, double x) {
    return x < fit.x_min || x > fit.x_max;
}

double ratio_to_fraction(double r) {
    if (!std::isfinite(r) || r < 0)
        throw DomainError("positivity ratio must be finite and nonnegative");
    return r / (1.0 + r);
}

double fraction_to_ratio(double f) {
    if (!std::isfinite(f) || f < 0 || f >= 1)
        throw DomainError("positivity fraction must lie in [0,1)");
    return f / (1.0 - f);
}

double fraction_from_counts(double p, double n) {
    if (!std::isfinite(p) || !std::isfinite(n) || p < 0 || n < 0)
        throw DomainError("counts must be finite and nonnegative");
    if (p + n <= 0) throw UndefinedFractionError("p = n = 0: fraction undefined");
    return p / (p + n);
}

std::optional<InflectionPoint> inflection_point(const RegressionFit& fit) {
    if (fit.degree != 3)
        throw DomainError("inflection point requires a degree-3 fit");
    const double b2 = fit.coeffs[2];
    const double b3 = fit.coeffs[3];
    const double floor =
        1e-3 * (fit.y_sd > 0 ? fit.y_sd : 1.0) / (fit.x_sd * fit.x_sd * fit.x_sd);
    if (std::fabs(b3) <= floor) return std::nullopt;
    InflectionPoint ip;
    ip.x = -b2 / (3.0 * b3);
    ip.inside_range = ip.x >= fit.x_min && ip.x <= fit.x_max;
    return ip;
}

}  // namespace ratiolab::regression
