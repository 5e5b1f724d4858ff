#include "ratiolab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <thread>

#include "ratiolab/errors.hpp"
#include "ratiolab/rng.hpp"

namespace ratiolab::simulate {

namespace {

constexpr int kQuadPoints = 4001;  // Simpson grid for the predictor density

double lognormal_pdf(double x, double mu_log, double sd_log) {
    if (x <= 0) return 0.0;
    const double z = (std::log(x) - mu_log) / sd_log;
    return std::exp(-0.5 * z * z) / (x * sd_log * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace

const char* shape_name(Shape s) {
    switch (s) {
        case Shape::linear: return "linear";
        case Shape::step: return "step";
        case Shape::logistic: return "logistic";
        default: return "inverted_u";
    }
}

void GeneratorSpec::validate() const {
    if (!(noise_sd >= 0)) throw DomainError("noise_sd must be nonnegative");
    if (n < 4) throw DomainError("sample size must be at least 4");
    if (!(x_dist.x_max > 0)) throw DomainError("x_max must be positive");
    if (!(x_dist.median > 0) || !(x_dist.median < x_dist.x_max))
        throw DomainError("predictor median must lie in (0, x_max)");
    if (!(x_dist.log_sd > 0)) throw DomainError("predictor spread must be positive");
    if (!(y_min < y_max)) throw DomainError("outcome bounds must be ordered");
    if (shape == Shape::logistic && !(slope > 0))
        throw DomainError("logistic slope must be positive");
    for (double v : {a, b, location, lo, hi, center, peak_x, peak_y, curvature})
        if (!std::isfinite(v)) throw DomainError("shape parameters must be finite");
}

double GeneratorSpec::mean_function(double x) const {
    switch (shape) {
        case Shape::linear: return a + b * x;
        case Shape::step: return x < location ? lo : hi;
        case Shape::logistic:
            return lo + (hi - lo) / (1.0 + std::exp(-slope * (x - center)));
        default: {
            const double d = x - peak_x;
            return peak_y - curvature * d * d;
        }
    }
}

regression::ScatterData generate(const GeneratorSpec& spec) {
    spec.validate();
    auto eng = rng::make_engine(spec.seed, 0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double mu_log = std::log(spec.x_dist.median);

    regression::ScatterData data;
    data.x_kind = regression::XKind::ratio;
    data.points.reserve(spec.n);
    for (long i = 0; i < spec.n; ++i) {
        double x;
        do {
            x = std::exp(mu_log + spec.x_dist.log_sd * gauss(eng));
        } while (x > spec.x_dist.x_max);
        double y = spec.mean_function(x);
        if (spec.noise_sd > 0) y += spec.noise_sd * gauss(eng);
        y = std::clamp(y, spec.y_min, spec.y_max);
        data.points.push_back({x, y});
    }
    return data;
}

DichotomyExperiment dichotomize_and_test(const regression::ScatterData& data,
                                         double threshold_y) {
    data.validate();
    std::vector<double> flourishing, nonflourishing;
    for (const auto& p : data.points)
        (p.y >= threshold_y ? flourishing : nonflourishing).push_back(p.x);
    if (flourishing.size() < 2 || nonflourishing.size() < 2)
        throw DegenerateSplitError(
            "dichotomization left a group with fewer than 2 members");

    DichotomyExperiment exp;
    exp.threshold_y = threshold_y;
    exp.n_flourishing = static_cast<long>(flourishing.size());
    exp.n_nonflourishing = static_cast<long>(nonflourishing.size());

    auto mean_of = [](const std::vector<double>& v) {
        double s = 0;
        for (double x : v) s += x;
        return s / v.size();
    };
    exp.mean_flourishing = mean_of(flourishing);
    exp.mean_nonflourishing = mean_of(nonflourishing);

    double ss = 0;
    for (double x : flourishing) ss += (x - exp.mean_flourishing) * (x - exp.mean_flourishing);
    for (double x : nonflourishing)
        ss += (x - exp.mean_nonflourishing) * (x - exp.mean_nonflourishing);
    const double df = static_cast<double>(exp.n_flourishing + exp.n_nonflourishing - 2);
    exp.pooled_sd = std::sqrt(ss / df);
    if (!(exp.pooled_sd > 0))
        throw DegenerateSplitError("zero within-group predictor variance");

    stats::SummaryStats st;
    st.n1 = static_cast<double>(exp.n_flourishing);
    st.n2 = static_cast<double>(exp.n_nonflourishing);
    st.mean1 = exp.mean_flourishing;
    st.mean2 = exp.mean_nonflourishing;
    exp.t_stat = stats::two_sample_t(st, exp.pooled_sd);
    exp.p_one_tailed = stats::student_t_sf(exp.t_stat, df);
    exp.p_two_tailed = stats::student_t_sf_two_tailed(exp.t_stat, df);
    return exp;
}

PowerTable power_comparison(const std::vector<GeneratorSpec>& specs,
                            long replications, double threshold_y, double alpha,
                            std::uint64_t master_seed, int scan_permutations,
                            int n_threads) {
    if (replications < 100) throw DomainError("need at least 100 replications");
    PowerTable table;
    table.alpha = alpha;
    table.threshold_y = threshold_y;
    table.replications = replications;
    table.seed = master_seed;

    for (size_t si = 0; si < specs.size(); ++si) {
        const GeneratorSpec& base = specs[si];
        base.validate();
        // Per-replicate outcomes, indexed so thread count cannot matter.
        std::vector<unsigned char> dichot(replications, 0), quad(replications, 0),
            cp(replications, 0), degen(replications, 0);

        auto worker = [&](long lo, long hi) {
            for (long r = lo; r < hi; ++r) {
                GeneratorSpec spec = base;
                spec.seed = rng::substream_seed(master_seed, 3 * si + 10, r);
                const auto data = generate(spec);
                try {
                    const auto exp = dichotomize_and_test(data, threshold_y);
                    dichot[r] = exp.p_two_tailed < alpha;
                } catch (const Error&) {
                    degen[r] = 1;
                }
                try {
                    const auto fit = regression::fit_polynomial(data, 2);
                    quad[r] = fit.p_values[2] < alpha;
                } catch (const Error&) {
                }
                try {
                    claims::ClaimsConfig cfg;
                    cfg.alpha = alpha;
                    cfg.permutations = scan_permutations;
                    cfg.seed = rng::substream_seed(master_seed, 3 * si + 11, r);
                    const auto scan = claims::scan_changepoint(data, cfg);
                    cp[r] = scan.p_value < alpha;
                } catch (const Error&) {
                }
            }
        };

        if (n_threads <= 1) {
            worker(0, replications);
        } else {
            std::vector<std::thread> threads;
            const long chunk = (replications + n_threads - 1) / n_threads;
            for (int t = 0; t < n_threads; ++t) {
                const long lo = t * chunk;
                const long hi = std::min(replications, lo + chunk);
                if (lo >= hi) break;
                threads.emplace_back(worker, lo, hi);
            }
            for (auto& t : threads) t.join();
        }

        PowerRow row;
        row.shape = base.shape;
        row.replications = replications;
        for (long r = 0; r < replications; ++r) {
            row.degenerate_splits += degen[r];
            row.dichotomized_t_rate += dichot[r];
            row.quadratic_rate += quad[r];
            row.changepoint_rate += cp[r];
        }
        const double denom = static_cast<double>(replications);
        row.dichotomized_t_rate /= denom;
        row.quadratic_rate /= denom;
        row.changepoint_rate /= denom;
        table.rows.push_back(row);
    }
    return table;
}

std::pair<double, double> expected_group_means(const GeneratorSpec& spec,
                                               double threshold_y) {
    spec.validate();
    const double mu_log = std::log(spec.x_dist.median);
    const double h = spec.x_dist.x_max / (kQuadPoints - 1);
    double wf = 0, wxf = 0, wn = 0, wxn = 0;
    for (int i = 0; i < kQuadPoints; ++i) {
        const double x = i * h;
        // Simpson weights 1,4,2,...,4,1
        const double w = (i == 0 || i == kQuadPoints - 1) ? 1.0
                         : (i % 2 == 1)                   ? 4.0
                                                          : 2.0;
        const double dens = w * lognormal_pdf(x, mu_log, spec.x_dist.log_sd);
        if (dens == 0) continue;
        const double m = spec.mean_function(x);
        // Each tail computed directly so neither underflows to zero while
        // the other is representable.
        double p_fl, p_non;
        if (spec.noise_sd > 0) {
            p_fl = stats::normal_cdf((m - threshold_y) / spec.noise_sd);
            p_non = stats::normal_cdf((threshold_y - m) / spec.noise_sd);
        } else {
            p_fl = m >= threshold_y ? 1.0 : 0.0;
            p_non = 1.0 - p_fl;
        }
        wf += dens * p_fl;
        wxf += dens * p_fl * x;
        wn += dens * p_non;
        wxn += dens * p_non * x;
    }
    if (wf <= 0 || wn <= 0)
        throw DomainError("threshold leaves an expected group empty");
    return {wxf / wf, wxn / wn};
}

GeneratorSpec calibrate_linear_to_group_means(GeneratorSpec tmpl,
                                              double target_flourishing,
                                              double target_nonflourishing,
                                              double threshold_y) {
    tmpl.shape = Shape::linear;
    tmpl.validate();

    // Inner solve: intercept controlling the nonflourishing mean (which is
    // monotone decreasing in the intercept) for a fixed slope.
    auto solve_intercept = [&](double slope) -> std::optional<GeneratorSpec> {
        GeneratorSpec s = tmpl;
        s.b = slope;
        double lo = threshold_y - slope * tmpl.x_dist.x_max - 5.0;
        double hi = threshold_y + 5.0;
        auto mn_at = [&](double a) -> std::optional<double> {
            s.a = a;
            try {
                return expected_group_means(s, threshold_y).second;
            } catch (const Error&) {
                return std::nullopt;
            }
        };
        auto flo = mn_at(lo), fhi = mn_at(hi);
        if (!flo || !fhi) return std::nullopt;
        if ((*flo - target_nonflourishing) * (*fhi - target_nonflourishing) > 0)
            return std::nullopt;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            auto fm = mn_at(mid);
            if (!fm) return std::nullopt;
            if ((*fm - target_nonflourishing) * (*flo - target_nonflourishing) <= 0)
                hi = mid;
            else {
                lo = mid;
                flo = fm;
            }
        }
        s.a = 0.5 * (lo + hi);
        return s;
    };

    auto mf_err = [&](double slope) -> std::optional<double> {
        auto s = solve_intercept(slope);
        if (!s) return std::nullopt;
        return expected_group_means(*s, threshold_y).first - target_flourishing;
    };

    // Bracket the slope on a coarse grid, then bisect.
    double b_lo = 0, b_hi = 0;
    std::optional<double> e_lo;
    for (double b = 0.02; b <= 5.0; b *= 1.6) {
        auto e = mf_err(b);
        if (!e) continue;
        if (e_lo && (*e_lo) * (*e) <= 0) {
            b_hi = b;
            break;
        }
        b_lo = b;
        e_lo = e;
    }
    if (b_hi == 0)
        throw DomainError("could not bracket a slope matching the target group means");
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (b_lo + b_hi);
        auto e = mf_err(mid);
        if (!e) throw DomainError("calibration quadrature failed mid-bisection");
        if ((*e) * (*e_lo) <= 0)
            b_hi = mid;
        else {
            b_lo = mid;
            e_lo = e;
        }
    }
    auto result = solve_intercept(0.5 * (b_lo + b_hi));
    if (!result) throw DomainError("calibration failed at the bracketed slope");
    return *result;
}

}  // namespace ratiolab::simulate
