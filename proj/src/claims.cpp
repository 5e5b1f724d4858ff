#include "ratiolab/claims.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>

#include "ratiolab/errors.hpp"
#include "ratiolab/kernels.hpp"
#include "ratiolab/rng.hpp"
#include "ratiolab/stats.hpp"

namespace ratiolab::claims {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const char* const kClaimText[] = {
    "",
    "Discontinuous phase transition (tipping point) exactly at the critical ratio",
    "Discontinuous phase transition somewhere around 3",
    "Rapid change somewhere around 3",
    "Inflection point (convex to concave) somewhere around 3",
    "Inflection point (convex to concave) somewhere",
    "Some nonlinearity somewhere",
    "Positive but substantially linear correlation",
    "No correlation",
};

struct SortedData {
    std::vector<double> x;  // ascending
    std::vector<double> y;
};

SortedData sort_by_x(const regression::ScatterData& data) {
    std::vector<size_t> idx(data.points.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return data.points[a].x < data.points[b].x;
    });
    SortedData s;
    s.x.reserve(idx.size());
    s.y.reserve(idx.size());
    for (size_t i : idx) {
        s.x.push_back(data.points[i].x);
        s.y.push_back(data.points[i].y);
    }
    return s;
}

// RSS of a least-squares line on a segment described by its moment sums.
double segment_line_rss(double n, double sx, double sy, double sxx, double sxy,
                        double syy) {
    const double cxx = sxx - sx * sx / n;
    const double cxy = sxy - sx * sy / n;
    const double cyy = syy - sy * sy / n;
    if (cxx <= 1e-12 * std::max(sxx, 1.0)) return std::max(cyy, 0.0);
    return std::max(cyy - cxy * cxy / cxx, 0.0);
}

// Candidate breakpoints are expressed as split indices: left = [0, i),
// right = [i, n), with the reported predictor value x[i-1].
struct ScanGrid {
    std::vector<int> splits;
    std::vector<double> values;
};

ScanGrid make_grid(const SortedData& s) {
    const int n = static_cast<int>(s.x.size());
    const double q10 = s.x[static_cast<size_t>(0.1 * (n - 1))];
    const double q90 = s.x[static_cast<size_t>(0.9 * (n - 1))];
    ScanGrid g;
    for (int i = 2; i <= n - 2; ++i) {
        if (s.x[i] <= s.x[i - 1]) continue;  // not a boundary between values
        const double c = s.x[i - 1];
        if (c <= q10 || c >= q90) continue;
        g.splits.push_back(i);
        g.values.push_back(c);
    }
    return g;
}

struct ScanPass {
    double rss_single = 0;
    double rss_jump = kInf;
    int best_jump_split = -1;
    double y_css = 0;  // centered sum of squares of y, for degeneracy guards
};

// One full grid evaluation for a given response vector.  x moments are
// precomputed prefix sums; y moments are rebuilt here in O(n).
class Scanner {
public:
    Scanner(const SortedData& s, const ScanGrid& grid) : x_(s.x), grid_(grid) {
        const size_t n = x_.size();
        px_.resize(n + 1, 0.0);
        pxx_.resize(n + 1, 0.0);
        for (size_t i = 0; i < n; ++i) {
            px_[i + 1] = px_[i] + x_[i];
            pxx_[i + 1] = pxx_[i] + x_[i] * x_[i];
        }
        py_.resize(n + 1);
        pxy_.resize(n + 1);
        pyy_.resize(n + 1);
    }

    ScanPass run(const std::vector<double>& y) {
        const int n = static_cast<int>(x_.size());
        py_[0] = pxy_[0] = pyy_[0] = 0.0;
        for (int i = 0; i < n; ++i) {
            py_[i + 1] = py_[i] + y[i];
            pxy_[i + 1] = pxy_[i] + x_[i] * y[i];
            pyy_[i + 1] = pyy_[i] + y[i] * y[i];
        }
        ScanPass out;
        out.rss_single =
            segment_line_rss(n, px_[n], py_[n], pxx_[n], pxy_[n], pyy_[n]);
        out.y_css = std::max(pyy_[n] - py_[n] * py_[n] / n, 0.0);
        for (size_t k = 0; k < grid_.splits.size(); ++k) {
            const int i = grid_.splits[k];
            const double jump = jump_rss(i);
            if (jump < out.rss_jump) {
                out.rss_jump = jump;
                out.best_jump_split = static_cast<int>(k);
            }
        }
        if (grid_.splits.empty()) out.rss_jump = out.rss_single;
        return out;
    }

    // Fitted values of the whole-data line.
    std::vector<double> single_line_fitted(const std::vector<double>& y) const {
        const int n = static_cast<int>(x_.size());
        const double xm = px_[n] / n;
        double sy = 0.0, cxy = 0.0, cxx = 0.0;
        for (int i = 0; i < n; ++i) sy += y[i];
        const double ym = sy / n;
        for (int i = 0; i < n; ++i) {
            cxy += (x_[i] - xm) * (y[i] - ym);
            cxx += (x_[i] - xm) * (x_[i] - xm);
        }
        const double b = cxx > 0 ? cxy / cxx : 0.0;
        const double a = ym - b * xm;
        std::vector<double> f(n);
        kernels::poly_eval(x_, std::array<double, 2>{a, b}, f);
        return f;
    }

    const ScanGrid& grid() const { return grid_; }

private:
    double jump_rss(int i) const {
        const int n = static_cast<int>(x_.size());
        const double l = segment_line_rss(i, px_[i], py_[i], pxx_[i], pxy_[i], pyy_[i]);
        const double r = segment_line_rss(n - i, px_[n] - px_[i], py_[n] - py_[i],
                                          pxx_[n] - pxx_[i], pxy_[n] - pxy_[i],
                                          pyy_[n] - pyy_[i]);
        return l + r;
    }


    const std::vector<double>& x_;
    const ScanGrid& grid_;
    std::vector<double> px_, pxx_;
    std::vector<double> py_, pxy_, pyy_;
};

struct LocalLine {
    double a = 0, b = 0, rss = 0, xbar = 0, cxx = 0;
    int m = 0;
};

LocalLine local_line(const SortedData& s, int lo, int hi) {
    LocalLine f;
    f.m = hi - lo;
    double sx = 0, sy = 0;
    for (int i = lo; i < hi; ++i) {
        sx += s.x[i];
        sy += s.y[i];
    }
    f.xbar = sx / f.m;
    const double ym = sy / f.m;
    double cxy = 0;
    for (int i = lo; i < hi; ++i) {
        f.cxx += (s.x[i] - f.xbar) * (s.x[i] - f.xbar);
        cxy += (s.x[i] - f.xbar) * (s.y[i] - ym);
    }
    f.b = f.cxx > 0 ? cxy / f.cxx : 0.0;
    f.a = ym - f.b * f.xbar;
    for (int i = lo; i < hi; ++i) {
        const double r = s.y[i] - f.a - f.b * s.x[i];
        f.rss += r * r;
    }
    return f;
}

// Fitted gap at the split boundary over the change a continuous function
// could plausibly produce there: local slope across the empty interval,
// plus the curvature bias of the local linear fits, plus twice the standard
// error of the gap estimate.  >> 1 only for a genuine discontinuity.
double gap_sharpness(const SortedData& s, int i) {
    const int n = static_cast<int>(s.x.size());
    const int m = std::clamp(n / 10, 2, std::min(i, n - i));
    const LocalLine l = local_line(s, i - m, i);
    const LocalLine r = local_line(s, i, i + m);
    const double xm = 0.5 * (s.x[i - 1] + s.x[i]);
    const double gap = std::fabs((r.a + r.b * xm) - (l.a + l.b * xm));
    const double dx = s.x[i] - s.x[i - 1];
    const double half_span = 0.5 * (s.x[i + m - 1] - s.x[i - m]);
    const double allowance = std::max(std::fabs(l.b), std::fabs(r.b)) * dx +
                             std::fabs(r.b - l.b) * half_span;
    const double s2 = (l.rss + r.rss) / std::max(2 * m - 4, 1);
    const auto pred_var = [&](const LocalLine& f) {
        const double lev = f.cxx > 0 ? (xm - f.xbar) * (xm - f.xbar) / f.cxx : 0.0;
        return s2 * (1.0 / f.m + lev);
    };
    const double se_gap = std::sqrt(pred_var(l) + pred_var(r));
    double ym = 0, yss = 0;
    for (double v : s.y) ym += v;
    ym /= n;
    for (double v : s.y) yss += (v - ym) * (v - ym);
    const double y_sd = std::sqrt(yss / std::max(n - 1, 1));
    const double denom =
        allowance + 2.0 * se_gap + 1e-12 * std::max(y_sd, 1.0);
    return gap / denom;
}

double improvement_f(double rss0, double rss1, int n, int extra_params,
                     double scale) {
    if (rss0 <= 1e-15 * std::max(scale, 1e-300)) return 0.0;  // null fit perfect
    const double gain = std::max(rss0 - rss1, 0.0) / extra_params;
    if (rss1 <= 0.0) return gain > 0 ? kInf : 0.0;
    return gain / (rss1 / (n - 4));
}

// Max/median ratio of absolute local-linear slopes over a sliding window.
double steepness_ratio(const SortedData& s, int window) {
    const int n = static_cast<int>(s.x.size());
    window = std::clamp(window, 3, n);
    std::vector<double> slopes;
    slopes.reserve(n - window + 1);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < window; ++i) {
        sx += s.x[i];
        sy += s.y[i];
        sxx += s.x[i] * s.x[i];
        sxy += s.x[i] * s.y[i];
    }
    for (int i = 0;; ++i) {
        const double cxx = sxx - sx * sx / window;
        const double cxy = sxy - sx * sy / window;
        slopes.push_back(cxx > 1e-12 * std::max(sxx, 1.0) ? std::fabs(cxy / cxx)
                                                          : 0.0);
        if (i + window >= n) break;
        sx += s.x[i + window] - s.x[i];
        sy += s.y[i + window] - s.y[i];
        sxx += s.x[i + window] * s.x[i + window] - s.x[i] * s.x[i];
        sxy += s.x[i + window] * s.y[i + window] - s.x[i] * s.y[i];
    }
    std::vector<double> sorted = slopes;
    std::sort(sorted.begin(), sorted.end());
    const double med = sorted[sorted.size() / 2];
    const double mx = sorted.back();
    double ysum = 0, yy = 0;
    for (double v : s.y) {
        ysum += v;
        yy += v * v;
    }
    const int m = static_cast<int>(s.y.size());
    const double y_sd = std::sqrt(std::max(yy - ysum * ysum / m, 0.0) / std::max(m - 1, 1));
    const double x_span = s.x.back() - s.x.front();
    const double slope_floor = 1e-9 * (y_sd > 0 ? y_sd : 1.0) / std::max(x_span, 1e-12);
    if (med <= slope_floor) return mx > slope_floor ? kInf : 1.0;
    return mx / med;
}

long distinct_count(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return std::unique(v.begin(), v.end()) - v.begin();
}

struct PearsonResult {
    double r = 0;
    double t = 0;
    double p = 1;  // two-tailed
    long n = 0;
};

PearsonResult pearson(const regression::ScatterData& data) {
    const long n = static_cast<long>(data.points.size());
    if (n < 4) throw SampleSizeError("correlation needs at least 4 points");
    const auto xs = data.xs();
    const auto ys = data.ys();
    const double xm = kernels::sum(xs) / n;
    const double ym = kernels::sum(ys) / n;
    double cxx = 0, cyy = 0, cxy = 0;
    for (long i = 0; i < n; ++i) {
        cxx += (xs[i] - xm) * (xs[i] - xm);
        cyy += (ys[i] - ym) * (ys[i] - ym);
        cxy += (xs[i] - xm) * (ys[i] - ym);
    }
    if (cxx <= 0 || cyy <= 0)
        throw UndefinedCorrelationError("zero-variance column");
    PearsonResult out;
    out.n = n;
    out.r = cxy / std::sqrt(cxx * cyy);
    const double denom = 1.0 - out.r * out.r;
    if (denom <= 0) {
        out.t = std::copysign(kInf, out.r);
        out.p = 0.0;
    } else {
        out.t = out.r * std::sqrt((n - 2) / denom);
        out.p = stats::student_t_sf_two_tailed(out.t, static_cast<double>(n - 2));
    }
    return out;
}

ClaimVerdict make_untestable(int id, const std::string& why) {
    ClaimVerdict v;
    v.claim_id = id;
    v.description = kClaimText[id];
    v.decision = Decision::untestable;
    v.details = why;
    return v;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

const char* decision_name(Decision d) {
    switch (d) {
        case Decision::supported: return "supported";
        case Decision::not_supported: return "not-supported";
        default: return "untestable-with-this-data";
    }
}

ChangepointScan scan_changepoint(const regression::ScatterData& data,
                                 const ClaimsConfig& config) {
    data.validate();
    const SortedData s = sort_by_x(data);
    const int n = static_cast<int>(s.x.size());
    if (n < 20) throw SampleSizeError("changepoint scan needs at least 20 points");
    if (distinct_count(s.x) < 10)
        throw SampleSizeError("changepoint scan needs at least 10 distinct predictor values");

    const ScanGrid grid = make_grid(s);
    Scanner scanner(s, grid);
    const ScanPass obs = scanner.run(s.y);

    ChangepointScan out;
    out.candidate_x = grid.values;
    out.best_x = obs.best_jump_split >= 0 ? grid.values[obs.best_jump_split]
                                          : 0.5 * (s.x.front() + s.x.back());
    out.improvement_stat =
        improvement_f(obs.rss_single, obs.rss_jump, n, 2, obs.y_css);
    out.sharpness = obs.best_jump_split >= 0
                        ? gap_sharpness(s, grid.splits[obs.best_jump_split])
                        : 0.0;

    // Permutation test: improvement over a single line, permuting its residuals.
    const int B = config.permutations;
    std::vector<double> fitted = scanner.single_line_fitted(s.y);
    std::vector<double> resid(n);
    for (int i = 0; i < n; ++i) resid[i] = s.y[i] - fitted[i];
    auto eng = rng::make_engine(config.seed, 1);
    std::vector<double> ystar(n);
    int ge = 0;
    for (int b = 0; b < B; ++b) {
        std::shuffle(resid.begin(), resid.end(), eng);
        for (int i = 0; i < n; ++i) ystar[i] = fitted[i] + resid[i];
        const ScanPass p = scanner.run(ystar);
        const double st = improvement_f(p.rss_single, p.rss_jump, n, 2, p.y_css);
        if (st >= out.improvement_stat) ++ge;
    }
    out.p_value = (1.0 + ge) / (B + 1.0);
    return out;
}

ClaimVerdict test_nonlinearity(const regression::ScatterData& data,
                               const ClaimsConfig& config) {
    if (data.points.size() < 10)
        throw SampleSizeError("nonlinearity test needs at least 10 points");
    const auto fit = regression::fit_polynomial(data, 2);
    ClaimVerdict v;
    v.claim_id = 6;
    v.description = kClaimText[6];
    v.procedure = "quadratic-term t-test";
    v.statistic = fit.t_stats[2];
    v.p_value = fit.p_values[2];
    v.decision = fit.p_values[2] < config.alpha ? Decision::supported
                                                : Decision::not_supported;
    v.details = "b2 = " + fmt(fit.coeffs[2]) + " +/- " + fmt(fit.std_errors[2]);
    return v;
}

std::vector<ClaimVerdict> test_inflection(const regression::ScatterData& data,
                                          const ClaimsConfig& config) {
    if (data.points.size() < 15)
        throw SampleSizeError("inflection test needs at least 15 points");
    const auto fit = regression::fit_polynomial(data, 3);
    const auto ip = regression::inflection_point(fit);
    const bool b3_sig = fit.p_values[3] < config.alpha;
    const bool claim5 = b3_sig && ip.has_value() && ip->inside_range;
    const bool claim4 =
        claim5 && ip->x >= config.window_lo && ip->x <= config.window_hi;

    ClaimVerdict v5;
    v5.claim_id = 5;
    v5.description = kClaimText[5];
    v5.procedure = "cubic-term t-test + interior inflection of the fitted cubic";
    v5.statistic = fit.t_stats[3];
    v5.p_value = fit.p_values[3];
    v5.decision = claim5 ? Decision::supported : Decision::not_supported;
    v5.details = ip ? "x* = " + fmt(ip->x) +
                          (ip->inside_range ? " (interior)" : " (outside data range)")
                    : "cubic term below numerical floor; no inflection reported";

    ClaimVerdict v4 = v5;
    v4.claim_id = 4;
    v4.description = kClaimText[4];
    v4.procedure = v5.procedure + ", x* within [" + fmt(config.window_lo) + ", " +
                   fmt(config.window_hi) + "]";
    v4.decision = claim4 ? Decision::supported : Decision::not_supported;
    return {v4, v5};
}

namespace {

std::vector<ClaimVerdict> correlation_verdicts(const regression::ScatterData& data,
                                               const ClaimsConfig& config,
                                               bool claim6_supported) {
    const PearsonResult pr = pearson(data);
    ClaimVerdict v7;
    v7.claim_id = 7;
    v7.description = kClaimText[7];
    v7.procedure = "Pearson correlation t-test, nonlinearity not supported";
    v7.statistic = pr.r;
    v7.p_value = pr.p;
    const bool sig = pr.p < config.alpha;
    v7.decision = (sig && pr.r > 0 && !claim6_supported) ? Decision::supported
                                                         : Decision::not_supported;
    v7.details = "r = " + fmt(pr.r) + ", t = " + fmt(pr.t) + ", n = " +
                 std::to_string(pr.n) +
                 (pr.r < 0 && sig ? "; correlation is negative" : "");

    ClaimVerdict v8;
    v8.claim_id = 8;
    v8.description = kClaimText[8];
    v8.procedure = "Pearson correlation t-test";
    v8.statistic = pr.r;
    v8.p_value = pr.p;
    v8.decision = sig ? Decision::not_supported : Decision::supported;
    v8.details = "r = " + fmt(pr.r);
    return {v7, v8};
}

}  // namespace

std::vector<ClaimVerdict> test_correlation(const regression::ScatterData& data,
                                           const ClaimsConfig& config) {
    bool claim6 = false;
    if (data.points.size() >= 10) {
        try {
            claim6 = test_nonlinearity(data, config).decision == Decision::supported;
        } catch (const Error&) {
            claim6 = false;
        }
    }
    return correlation_verdicts(data, config, claim6);
}

ClaimReport evaluate_all(const regression::ScatterData& data,
                         const ClaimsConfig& config) {
    data.validate();
    const long n = static_cast<long>(data.points.size());
    const long nx = distinct_count(data.xs());

    // Group-summary style input: only per-group aggregate points survive a
    // dichotomized design, so claims 1-6 cannot be probed at all.
    const bool dichotomized = data.dichotomized || nx <= 2;

    ClaimReport report;
    report.verdicts.resize(8);

    if (dichotomized) {
        const std::string why =
            "dichotomized data: within-group outcome variation was discarded";
        for (int id = 1; id <= 6; ++id)
            report.verdicts[id - 1] = make_untestable(id, why);
    }

    std::optional<ChangepointScan> scan;
    bool claim1 = false, claim2 = false;
    if (!dichotomized && n >= 20 && nx >= 10) {
        scan = scan_changepoint(data, config);
        const bool disc = scan->p_value < config.alpha &&
                          scan->sharpness > config.sharpness_threshold;
        const bool in_window = scan->best_x >= config.window_lo &&
                               scan->best_x <= config.window_hi;
        claim2 = disc && in_window;
        claim1 = config.claim1_any_location
                     ? disc
                     : (claim2 &&
                        std::fabs(scan->best_x - config.threshold) <= config.claim1_tol);

        ClaimVerdict v1;
        v1.claim_id = 1;
        v1.description = kClaimText[1];
        v1.procedure =
            "segmented-fit permutation test + gap sharpness > " +
            fmt(config.sharpness_threshold) +
            (config.claim1_any_location
                 ? ", any location"
                 : ", best_x within " + fmt(config.claim1_tol) + " of " +
                       fmt(config.threshold));
        v1.statistic = scan->sharpness;
        v1.p_value = scan->p_value;
        v1.decision = claim1 ? Decision::supported : Decision::not_supported;
        v1.details = "best_x = " + fmt(scan->best_x);

        ClaimVerdict v2 = v1;
        v2.claim_id = 2;
        v2.description = kClaimText[2];
        v2.procedure = "segmented-fit permutation test + gap sharpness > " +
                       fmt(config.sharpness_threshold) + ", best_x in [" +
                       fmt(config.window_lo) + ", " + fmt(config.window_hi) + "]";
        v2.decision = claim2 ? Decision::supported : Decision::not_supported;

        report.verdicts[0] = v1;
        report.verdicts[1] = v2;
        report.scan = scan;
    } else if (!dichotomized) {
        const std::string why = "needs >= 20 points with >= 10 distinct predictor values";
        report.verdicts[0] = make_untestable(1, why);
        report.verdicts[1] = make_untestable(2, why);
    }

    if (!dichotomized && n >= 20) {
        const SortedData s = sort_by_x(data);
        const int window = std::max(5, static_cast<int>(n) / 10);
        const double obs_ratio = steepness_ratio(s, window);
        // Permutation diagnostic for the slope-ratio statistic.
        double p = 1.0;
        {
            std::vector<double> xs = s.x, ys = s.y;
            const double xm = kernels::sum(xs) / n;
            const double ym = kernels::sum(ys) / n;
            double cxx = 0, cxy = 0;
            for (long i = 0; i < n; ++i) {
                cxx += (xs[i] - xm) * (xs[i] - xm);
                cxy += (xs[i] - xm) * (ys[i] - ym);
            }
            const double b = cxx > 0 ? cxy / cxx : 0.0;
            const double a = ym - b * xm;
            std::vector<double> resid(n);
            for (long i = 0; i < n; ++i) resid[i] = ys[i] - a - b * xs[i];
            auto eng = rng::make_engine(config.seed, 3);
            SortedData perm = s;
            int ge = 0;
            for (int bi = 0; bi < config.permutations; ++bi) {
                std::shuffle(resid.begin(), resid.end(), eng);
                for (long i = 0; i < n; ++i) perm.y[i] = a + b * xs[i] + resid[i];
                if (steepness_ratio(perm, window) >= obs_ratio) ++ge;
            }
            p = (1.0 + ge) / (config.permutations + 1.0);
        }
        ClaimVerdict v3;
        v3.claim_id = 3;
        v3.description = kClaimText[3];
        v3.procedure = "sliding-window slope ratio exceeding " +
                       fmt(config.steepness_factor) + "x the median slope";
        v3.statistic = obs_ratio;
        v3.p_value = p;
        v3.decision = (obs_ratio > config.steepness_factor || claim1 || claim2)
                          ? Decision::supported
                          : Decision::not_supported;
        v3.details = (claim1 || claim2) && obs_ratio <= config.steepness_factor
                         ? "implied by supported claim 1/2"
                         : "max/median slope ratio = " + fmt(obs_ratio);
        report.verdicts[2] = v3;
    } else if (!dichotomized) {
        report.verdicts[2] = make_untestable(3, "needs >= 20 points");
    }

    bool claim5 = false;
    if (!dichotomized && n >= 15) {
        auto v45 = test_inflection(data, config);
        claim5 = v45[1].decision == Decision::supported;
        report.verdicts[3] = v45[0];
        report.verdicts[4] = v45[1];
    } else if (!dichotomized) {
        report.verdicts[3] = make_untestable(4, "needs >= 15 points");
        report.verdicts[4] = make_untestable(5, "needs >= 15 points");
    }

    bool claim6 = false;
    if (!dichotomized && n >= 10) {
        ClaimVerdict v6 = test_nonlinearity(data, config);
        if (claim5 && v6.decision != Decision::supported) {
            v6.decision = Decision::supported;
            v6.details += "; implied by supported claim 5";
        }
        claim6 = v6.decision == Decision::supported;
        report.verdicts[5] = v6;

        // Same test under the alternate parameterization of the predictor.
        try {
            regression::ScatterData alt = data;
            bool ok = true;
            for (auto& pt : alt.points) {
                if (data.x_kind == regression::XKind::ratio) {
                    if (pt.x < 0) { ok = false; break; }
                    pt.x = regression::ratio_to_fraction(pt.x);
                } else if (data.x_kind == regression::XKind::fraction) {
                    if (pt.x >= 1) { ok = false; break; }
                    pt.x = regression::fraction_to_ratio(pt.x);
                } else {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                alt.x_kind = data.x_kind == regression::XKind::ratio
                                 ? regression::XKind::fraction
                                 : regression::XKind::ratio;
                const auto alt_fit = regression::fit_polynomial(alt, 2);
                AltParamNonlinearity a;
                a.x_kind = alt.x_kind;
                a.b2 = alt_fit.coeffs[2];
                a.b2_se = alt_fit.std_errors[2];
                a.p_value = alt_fit.p_values[2];
                a.decision = alt_fit.p_values[2] < config.alpha
                                 ? Decision::supported
                                 : Decision::not_supported;
                report.claim6_alt = a;
            }
        } catch (const Error&) {
            // alternate parameterization not applicable; report only the primary
        }
    } else if (!dichotomized) {
        report.verdicts[5] = make_untestable(6, "needs >= 10 points");
    }

    try {
        auto v78 = correlation_verdicts(data, config, claim6);
        report.verdicts[6] = v78[0];
        report.verdicts[7] = v78[1];
    } catch (const Error& e) {
        report.verdicts[6] = make_untestable(7, e.what());
        report.verdicts[7] = make_untestable(8, e.what());
    }
    return report;
}

}  // namespace ratiolab::claims
