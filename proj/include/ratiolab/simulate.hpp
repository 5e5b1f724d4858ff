#pragma once

// Monte-Carlo demonstration that a dichotomized design destroys the
// information needed to detect nonlinearity: synthetic cohorts under four
// outcome shapes, the group-means t-test replicated on each, and its
// discriminating power compared against full-data regression tests.

#include <cstdint>
#include <string>
#include <vector>

#include "ratiolab/claims.hpp"
#include "ratiolab/regression.hpp"
#include "ratiolab/stats.hpp"

namespace ratiolab::simulate {

enum class Shape { linear, step, logistic, inverted_u };

const char* shape_name(Shape s);

// Predictor distribution: lognormal with the given median and log-scale
// spread, truncated (by resampling) to [0, x_max].
struct XDist {
    double median = 2.5;
    double log_sd = 0.6;
    double x_max = 15.0;
};

struct GeneratorSpec {
    Shape shape = Shape::linear;
    // Shape parameters.  linear: y = a + b*x.  step: lo below `location`,
    // hi at and above it.  logistic: lo + (hi-lo)/(1+exp(-slope*(x-center))).
    // inverted_u: peak_y - curvature*(x - peak_x)^2.
    double a = 1.0;
    double b = 0.5;
    double location = 2.9013;
    double lo = 1.5;
    double hi = 4.5;
    double center = 3.0;
    double slope = 3.0;
    double peak_x = 6.0;
    double peak_y = 4.5;
    double curvature = 0.1;

    double noise_sd = 0.5;
    long n = 100;
    XDist x_dist;
    double y_min = 1.0;  // outcome clipped to [y_min, y_max]
    double y_max = 5.0;
    std::uint64_t seed = 1;

    // Throws DomainError if invariants fail (noise_sd >= 0, n >= 4, ...).
    void validate() const;

    // Noise-free outcome at predictor x, before clipping.
    double mean_function(double x) const;
};

struct DichotomyExperiment {
    double threshold_y = 0;
    long n_flourishing = 0;
    long n_nonflourishing = 0;
    double mean_flourishing = 0;     // mean predictor among y >= threshold
    double mean_nonflourishing = 0;
    double pooled_sd = 0;
    double t_stat = 0;
    double p_one_tailed = 1;
    double p_two_tailed = 1;
};

struct PowerRow {
    Shape shape = Shape::linear;
    long replications = 0;
    long degenerate_splits = 0;  // replicates where one group was empty
    double dichotomized_t_rate = 0;
    double quadratic_rate = 0;
    double changepoint_rate = 0;
};

struct PowerTable {
    std::vector<PowerRow> rows;
    double alpha = 0.05;
    double threshold_y = 0;
    long replications = 0;
    std::uint64_t seed = 0;
};

// Deterministic for a given spec (including seed); y clipped to
// [y_min, y_max].  x_kind of the result is `ratio`.
regression::ScatterData generate(const GeneratorSpec& spec);

// Classifies points by y >= threshold_y and runs the pooled two-sample
// t-test on the group predictor means.  Throws DegenerateSplitError when a
// group is empty.
DichotomyExperiment dichotomize_and_test(const regression::ScatterData& data,
                                         double threshold_y);

// Rejection rates of the dichotomized t-test, the full-data quadratic-term
// test, and the changepoint scan, per shape.  Deterministic given
// master_seed; replicate substreams make sequential and parallel runs agree.
PowerTable power_comparison(const std::vector<GeneratorSpec>& specs,
                            long replications, double threshold_y, double alpha,
                            std::uint64_t master_seed, int scan_permutations = 199,
                            int n_threads = 1);

// Expected predictor means of the two dichotomized groups under a spec,
// computed by quadrature over the (truncated) predictor density and the
// normal noise, with no sampling involved.
std::pair<double, double> expected_group_means(const GeneratorSpec& spec,
                                               double threshold_y);

// Adjusts the linear generator's intercept and slope (by nested bisection on
// quadrature values) until its expected dichotomized group means match the
// targets.  Throws DomainError when no bracketing is possible.
GeneratorSpec calibrate_linear_to_group_means(GeneratorSpec linear_template,
                                              double target_flourishing,
                                              double target_nonflourishing,
                                              double threshold_y);

}  // namespace ratiolab::simulate
