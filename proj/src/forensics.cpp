#include "ratiolab/forensics.hpp"

#include <cmath>

#include "ratiolab/errors.hpp"

namespace ratiolab::forensics {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::consistent: return "consistent-with-tipping";
        case Verdict::inconsistent: return "inconsistent-with-tipping";
        default: return "indeterminate";
    }
}

ForensicsReport audit(const stats::SummaryStats& input,
                      const ForensicsConfig& config) {
    input.validate();
    ForensicsReport report;
    report.input = input;
    report.assumptions = {
        "equal standard deviations in the flourishing and nonflourishing groups",
        "pooled-variance (equal-variance) two-sample t-test",
        "normal approximation for the tail estimate (positivity ratios are "
        "nonnegative, so this is approximate)",
    };

    const double df = input.n1 + input.n2 - 2;
    report.recomputed_p_one_tailed =
        stats::student_t_sf(std::fabs(input.t_stat), df);
    report.recomputed_p_two_tailed =
        stats::student_t_sf_two_tailed(input.t_stat, df);

    double sd;
    try {
        sd = stats::pooled_sd_from_t(input);
    } catch (const Error& e) {
        report.verdict = Verdict::indeterminate;
        report.diagnostic = e.what();
        for (double a : config.allowance_grid)
            report.verdict_by_allowance.emplace_back(a, Verdict::indeterminate);
        return report;
    }
    report.implied_sd = sd;
    report.support_bound = stats::support_lower_bound(input.mean2, sd);
    report.tail = stats::tail_fraction_above(input.mean2, sd, config.threshold);

    auto verdict_at = [&](double allowance) {
        return report.tail->fraction_above > allowance ? Verdict::inconsistent
                                                       : Verdict::consistent;
    };
    report.verdict = verdict_at(config.impurity_allowance);
    for (double a : config.allowance_grid)
        report.verdict_by_allowance.emplace_back(a, verdict_at(a));
    return report;
}

std::vector<SensitivityEntry> equal_variance_sensitivity(
    const stats::SummaryStats& input, const std::vector<double>& ratio_grid,
    const ForensicsConfig& config) {
    input.validate();
    const double pooled = stats::pooled_sd_from_t(input);
    const double df = input.n1 + input.n2 - 2;

    std::vector<SensitivityEntry> out;
    out.reserve(ratio_grid.size());
    for (double ratio : ratio_grid) {
        SensitivityEntry e;
        e.sd_ratio = ratio;
        if (!(ratio > 0) || !std::isfinite(ratio)) {
            out.push_back(e);
            continue;
        }
        // Pooled identity with sd1 = ratio * sd2:
        //   pooled^2 * df = (n1-1) ratio^2 sd2^2 + (n2-1) sd2^2
        const double denom = (input.n1 - 1) * ratio * ratio + (input.n2 - 1);
        const double var2 = pooled * pooled * df / denom;
        if (!(var2 > 0) || !std::isfinite(var2)) {
            out.push_back(e);
            continue;
        }
        e.feasible = true;
        e.sd_nonflourishing = std::sqrt(var2);
        e.sd_flourishing = ratio * e.sd_nonflourishing;
        e.tail = stats::tail_fraction_above(input.mean2, e.sd_nonflourishing,
                                            config.threshold);
        out.push_back(e);
    }
    return out;
}

}  // namespace ratiolab::forensics
