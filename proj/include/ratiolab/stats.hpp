#pragma once

// Special functions and the elementary two-sample statistics everything else
// builds on: normal CDF, Student-t survival function (via the regularized
// incomplete beta), the pooled-variance two-sample t and its inversion,
// the bounded-support variance constraint, and normal tail fractions.

#include <optional>

namespace ratiolab::stats {

// Published group-level statistics of a two-group study.
struct SummaryStats {
    double n1 = 0;      // group 1 size ("flourishing")
    double n2 = 0;      // group 2 size ("nonflourishing")
    double mean1 = 0;   // group 1 sample mean (positivity-ratio units)
    double mean2 = 0;   // group 2 sample mean
    double t_stat = 0;  // reported t-statistic

    // Throws DomainError if n1/n2 < 2 or the means are negative/non-finite.
    void validate() const;
};

struct TailEstimate {
    double mu = 0;
    double sigma = 0;
    double threshold = 0;
    double fraction_above = 0;  // in [0, 1]
};

// Standard normal CDF.  Absolute error below 1e-12.
double normal_cdf(double z);

// One-tailed p-value P(T > t) for Student-t with df degrees of freedom.
// df need not be integral; df >= 1 required.
double student_t_sf(double t, double df);

// Two-tailed convenience: 2 * P(T > |t|).  The one-tailed form is the
// primitive; callers that double it should say so in their reports.
double student_t_sf_two_tailed(double t, double df);

// Upper quantile by bisection on student_t_sf: the t with P(T > t) = p.
double student_t_upper_quantile(double p, double df);

// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

// Pooled-variance two-sample t: (mean1 - mean2) / (s * sqrt(1/n1 + 1/n2)).
double two_sample_t(const SummaryStats& stats, double pooled_sd);

// The same formula solved for s given the reported t.  Throws
// DegenerateStatisticsError when t = 0 and InconsistentSummaryError when
// t and the mean difference disagree in sign.
double pooled_sd_from_t(const SummaryStats& stats);

// Minimal upper support M for a distribution on [0, M] with the given mean
// and SD: sigma^2 <= mu * (M - mu), hence M >= mu + sigma^2 / mu.
double support_lower_bound(double mu, double sigma);

// Fraction above `threshold` for a normal(mu, sigma) population.  The
// normality assumption is an approximation (positivity ratios are
// nonnegative); report layers must label it as such.
TailEstimate tail_fraction_above(double mu, double sigma, double threshold);

}  // namespace ratiolab::stats
