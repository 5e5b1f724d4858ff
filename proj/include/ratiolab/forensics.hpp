#pragma once

// Reverse-engineers published two-group summary statistics into an
// internal-consistency audit of the tipping-point hypothesis: implied pooled
// SD, minimal upper support of the nonflourishing distribution, and the
// estimated fraction of nonflourishers above the claimed critical ratio.

#include <optional>
#include <string>
#include <vector>

#include "ratiolab/stats.hpp"

namespace ratiolab::forensics {

enum class Verdict { consistent, inconsistent, indeterminate };

const char* verdict_name(Verdict v);

struct ForensicsConfig {
    double threshold = 2.9013;       // claimed critical positivity ratio
    double impurity_allowance = 0.10;  // tolerated tail mass above it
    // Extra allowances at which the verdict is also reported.
    std::vector<double> allowance_grid = {0.05, 0.10, 0.20};
};

struct ForensicsReport {
    stats::SummaryStats input;
    std::optional<double> implied_sd;
    std::optional<double> support_bound;  // nonflourishing group
    std::optional<stats::TailEstimate> tail;
    double recomputed_p_one_tailed = 0;
    double recomputed_p_two_tailed = 0;
    Verdict verdict = Verdict::indeterminate;
    std::vector<std::pair<double, Verdict>> verdict_by_allowance;
    // Assumptions baked into the estimate, stamped into every report.
    std::vector<std::string> assumptions;
    std::string diagnostic;  // set when the inversion is ill-posed
};

struct SensitivityEntry {
    double sd_ratio = 0;  // assumed SD(flourishing) / SD(nonflourishing)
    bool feasible = false;
    double sd_flourishing = 0;
    double sd_nonflourishing = 0;
    std::optional<stats::TailEstimate> tail;  // nonflourishing group
};

// pooled_sd_from_t -> support_lower_bound (nonflourishing mean) ->
// tail_fraction_above(threshold) -> recomputed t p-values.  A degenerate t
// produces an indeterminate verdict with a diagnostic, not an error.
ForensicsReport audit(const stats::SummaryStats& input,
                      const ForensicsConfig& config = {});

// Relaxes the equal-SD assumption: for each assumed ratio of group SDs,
// solves the pooled-variance identity for the group SDs and recomputes the
// nonflourishing tail estimate.
std::vector<SensitivityEntry> equal_variance_sensitivity(
    const stats::SummaryStats& input, const std::vector<double>& ratio_grid,
    const ForensicsConfig& config = {});

}  // namespace ratiolab::forensics
