#pragma once

// Evaluates a dataset against the ladder of claims about the positivity
// ratio (1: tipping point exactly at the critical constant ... 6: some
// nonlinearity somewhere) and the two alternative scenarios (7: substantially
// linear positive correlation, 8: no correlation).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ratiolab/regression.hpp"

namespace ratiolab::claims {

struct ClaimsConfig {
    double alpha = 0.05;
    double threshold = 2.9013;      // claimed lower critical ratio
    double claim1_tol = 0.1;        // |best_x - threshold| tolerance for claim 1
    bool claim1_any_location = false;  // claim 1 without the location constraint
    double window_lo = 2.0;         // "somewhere around 3" window
    double window_hi = 4.0;
    int permutations = 999;
    std::uint64_t seed = 12345;
    double steepness_factor = 4.0;   // claim-3 max/median slope ratio
    double sharpness_threshold = 2.0;  // claims 1-2 gap-vs-continuity ratio
};

enum class Decision { supported, not_supported, untestable };

const char* decision_name(Decision d);

struct ClaimVerdict {
    int claim_id = 0;
    std::string description;
    std::string procedure;  // operationalization used for this verdict
    double statistic = 0;
    std::optional<double> p_value;
    Decision decision = Decision::untestable;
    std::string details;
};

// Segmented-line grid search.  improvement_stat compares the best two-line
// (jump) fit against a single line, with a p-value from permuting residuals
// of the single-line fit.  sharpness is what distinguishes a genuine
// discontinuity from a smooth rapid change: the fitted gap at the breakpoint
// divided by the change a continuous function could plausibly produce across
// it (local slope times the empty interval, plus curvature bias and twice
// the standard error of the gap estimate).
struct ChangepointScan {
    std::vector<double> candidate_x;
    double best_x = 0;
    double improvement_stat = 0;
    double p_value = 1;
    double sharpness = 0;
};

// Claim-6 diagnostics under the alternate parameterization (fraction when
// the data came as ratios, and vice versa).
struct AltParamNonlinearity {
    regression::XKind x_kind = regression::XKind::raw;
    double b2 = 0;
    double b2_se = 0;
    std::optional<double> p_value;
    Decision decision = Decision::untestable;
};

struct ClaimReport {
    std::vector<ClaimVerdict> verdicts;  // claims 1..6, scenarios 7..8
    std::optional<ChangepointScan> scan;
    std::optional<AltParamNonlinearity> claim6_alt;
};

// Grid search over interior breakpoints (distinct predictor values in the
// 10-90% quantile band) with permutation p-values.  Requires >= 20 points
// and >= 10 distinct predictor values.
ChangepointScan scan_changepoint(const regression::ScatterData& data,
                                 const ClaimsConfig& config);

// Claim 6 via the quadratic-term test.  Requires >= 10 points.
ClaimVerdict test_nonlinearity(const regression::ScatterData& data,
                               const ClaimsConfig& config);

// Claims 4 and 5 via the cubic-term test and the fitted inflection point.
// Requires >= 15 points.
std::vector<ClaimVerdict> test_inflection(const regression::ScatterData& data,
                                          const ClaimsConfig& config);

// Scenarios 7 and 8 via the Pearson correlation t-test.
std::vector<ClaimVerdict> test_correlation(const regression::ScatterData& data,
                                           const ClaimsConfig& config);

// The whole battery, verdicts ordered 1..8.  Dichotomized data (flagged, or
// reduced to per-group summary points) yields untestable for claims 1-6.
ClaimReport evaluate_all(const regression::ScatterData& data,
                         const ClaimsConfig& config);

}  // namespace ratiolab::claims
