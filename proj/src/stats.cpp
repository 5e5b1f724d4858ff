#include "ratiolab/stats.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ratiolab/errors.hpp"

namespace ratiolab::stats {

namespace {

constexpr double kBetaCfTol = 1e-14;
constexpr int kBetaCfMaxIter = 500;
constexpr double kTiny = 1e-300;

// Continued fraction for the incomplete beta (Lentz's method).
double beta_cf(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kBetaCfMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kBetaCfTol) return h;
    }
    return h;  // converged to machine noise before hitting the cap in practice
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v))
        throw DomainError(std::string(what) + " must be finite");
}

}  // namespace

void SummaryStats::validate() const {
    if (!(n1 >= 2) || !(n2 >= 2))
        throw DomainError("group sizes must be at least 2");
    require_finite(mean1, "mean1");
    require_finite(mean2, "mean2");
    require_finite(t_stat, "t_stat");
    if (mean1 < 0 || mean2 < 0)
        throw DomainError("positivity-ratio means must be nonnegative");
}

double normal_cdf(double z) {
    require_finite(z, "z");
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0) || !(b > 0)) throw DomainError("beta parameters must be positive");
    if (x < 0.0 || x > 1.0) throw DomainError("incomplete beta argument outside [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    // Symmetry reduction keeps the continued fraction in its fast region.
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_sf(double t, double df) {
    require_finite(t, "t");
    if (!(df >= 1)) throw DomainError("degrees of freedom must be >= 1");
    if (t == 0.0) return 0.5;
    if (t < 0.0) return 1.0 - student_t_sf(-t, df);
    const double x = df / (df + t * t);
    return 0.5 * incomplete_beta(0.5 * df, 0.5, x);
}

double student_t_sf_two_tailed(double t, double df) {
    return 2.0 * student_t_sf(std::fabs(t), df);
}

double student_t_upper_quantile(double p, double df) {
    if (!(p > 0.0) || !(p < 1.0)) throw DomainError("quantile probability must be in (0,1)");
    if (p == 0.5) return 0.0;
    if (p > 0.5) return -student_t_upper_quantile(1.0 - p, df);
    double lo = 0.0, hi = 1.0;
    while (student_t_sf(hi, df) > p) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-13 * (1.0 + hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (student_t_sf(mid, df) > p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double two_sample_t(const SummaryStats& stats, double pooled_sd) {
    stats.validate();
    if (!(pooled_sd > 0)) throw DomainError("pooled SD must be positive");
    const double se = pooled_sd * std::sqrt(1.0 / stats.n1 + 1.0 / stats.n2);
    return (stats.mean1 - stats.mean2) / se;
}

double pooled_sd_from_t(const SummaryStats& stats) {
    stats.validate();
    if (stats.t_stat == 0.0)
        throw DegenerateStatisticsError(
            "t = 0: the implied pooled SD is unbounded");
    const double diff = stats.mean1 - stats.mean2;
    if (diff == 0.0)
        throw DegenerateStatisticsError(
            "equal means with nonzero t: no finite SD is consistent");
    if ((diff > 0) != (stats.t_stat > 0))
        throw InconsistentSummaryError(
            "reported t and mean difference have opposite signs");
    return diff / (stats.t_stat * std::sqrt(1.0 / stats.n1 + 1.0 / stats.n2));
}

double support_lower_bound(double mu, double sigma) {
    if (!(mu > 0)) throw DomainError("mean must be positive");
    if (!(sigma >= 0) || !std::isfinite(sigma))
        throw DomainError("SD must be finite and nonnegative");
    return mu + sigma * sigma / mu;
}

TailEstimate tail_fraction_above(double mu, double sigma, double threshold) {
    require_finite(mu, "mu");
    require_finite(threshold, "threshold");
    if (!(sigma > 0)) throw DomainError("SD must be positive");
    TailEstimate est;
    est.mu = mu;
    est.sigma = sigma;
    est.threshold = threshold;
    est.fraction_above = 1.0 - normal_cdf((threshold - mu) / sigma);
    return est;
}

}  // namespace ratiolab::stats
