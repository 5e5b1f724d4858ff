#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ratiolab/claims.hpp"
#include "ratiolab/errors.hpp"
#include "ratiolab/regression.hpp"
#include "ratiolab/simulate.hpp"
#include "ratiolab/stats.hpp"

using namespace ratiolab;
using claims::ClaimsConfig;
using claims::Decision;
using regression::ScatterData;

namespace {

ScatterData from_xy(const std::vector<double>& xs,
                    const std::vector<double>& ys) {
    ScatterData d;
    for (size_t i = 0; i < xs.size(); ++i) d.points.push_back({xs[i], ys[i]});
    return d;
}

std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

// Brute-force two-line RSS at a given split of the x-sorted data.
double two_line_rss(const std::vector<double>& x, const std::vector<double>& y,
                    size_t split) {
    auto seg = [&](size_t lo, size_t hi) {
        const size_t m = hi - lo;
        double sx = 0, sy = 0;
        for (size_t i = lo; i < hi; ++i) {
            sx += x[i];
            sy += y[i];
        }
        const double xm = sx / m, ym = sy / m;
        double cxx = 0, cxy = 0;
        for (size_t i = lo; i < hi; ++i) {
            cxx += (x[i] - xm) * (x[i] - xm);
            cxy += (x[i] - xm) * (y[i] - ym);
        }
        const double b = cxx > 0 ? cxy / cxx : 0.0;
        const double a = ym - b * xm;
        double rss = 0;
        for (size_t i = lo; i < hi; ++i) {
            const double r = y[i] - a - b * x[i];
            rss += r * r;
        }
        return rss;
    };
    return seg(0, split) + seg(split, x.size());
}

bool supported(const claims::ClaimReport& rep, int id) {
    return rep.verdicts[id - 1].decision == Decision::supported;
}

simulate::GeneratorSpec step_spec(double location, double noise,
                                  std::uint64_t seed, long n = 200) {
    simulate::GeneratorSpec s;
    s.shape = simulate::Shape::step;
    s.location = location;
    s.noise_sd = noise;
    s.n = n;
    s.seed = seed;
    return s;
}

simulate::GeneratorSpec logistic_spec(double center, double noise,
                                      std::uint64_t seed, long n = 200) {
    simulate::GeneratorSpec s;
    s.shape = simulate::Shape::logistic;
    s.center = center;
    s.slope = 3.0;
    s.noise_sd = noise;
    s.n = n;
    s.seed = seed;
    s.x_dist.x_max = 8.0;  // keep the S-curve inside the sampled range
    return s;
}

}  // namespace

TEST_CASE("changepoint scan locates a noiseless step, cross-checked by brute force") {
    const auto data = simulate::generate(step_spec(3.0, 0.0, 21));
    ClaimsConfig cfg;
    cfg.permutations = 199;
    const auto scan = claims::scan_changepoint(data, cfg);

    CHECK(scan.p_value < 0.01);
    CHECK(scan.sharpness > 100.0);
    CHECK(std::fabs(scan.best_x - 3.0) < 0.25);

    // Independent oracle: exhaustive two-line RSS over every candidate split
    // of the sorted data must be minimized at the reported breakpoint.
    std::vector<double> x, y;
    for (const auto& p : data.points) x.push_back(p.x);
    std::vector<size_t> idx(x.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](size_t a, size_t b) { return data.points[a].x < data.points[b].x; });
    std::vector<double> xs, ys;
    for (size_t i : idx) {
        xs.push_back(data.points[i].x);
        ys.push_back(data.points[i].y);
    }
    double best_rss = 1e300;
    double best_c = 0;
    for (size_t s = 2; s + 2 <= xs.size(); ++s) {
        if (xs[s] <= xs[s - 1]) continue;
        const double rss = two_line_rss(xs, ys, s);
        if (rss < best_rss) {
            best_rss = rss;
            best_c = xs[s - 1];
        }
    }
    CHECK(best_rss == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(scan.best_x == doctest::Approx(best_c).epsilon(1e-12));
    CHECK(scan.best_x < 3.0);

    // best_x must sit strictly inside the trimmed predictor range.
    std::vector<double> sorted_x = xs;
    const size_t n = sorted_x.size();
    CHECK(scan.best_x > sorted_x[static_cast<size_t>(0.1 * (n - 1))]);
    CHECK(scan.best_x < sorted_x[static_cast<size_t>(0.9 * (n - 1))]);
}

TEST_CASE("exact line: zero improvement, permutation p near 1, no sharpness") {
    std::vector<double> xs = grid(0.5, 9.5, 60);
    std::vector<double> ys;
    for (double x : xs) ys.push_back(1.0 + 0.5 * x);
    const auto data = from_xy(xs, ys);
    ClaimsConfig cfg;
    cfg.permutations = 199;
    const auto scan = claims::scan_changepoint(data, cfg);
    CHECK(scan.improvement_stat == 0.0);
    CHECK(scan.p_value > 0.5);
    CHECK(scan.sharpness < 0.01);
}

TEST_CASE("smooth logistic: strong segmented improvement but no sharp gap") {
    const auto data = simulate::generate(logistic_spec(3.0, 0.0, 5, 250));
    ClaimsConfig cfg;
    cfg.permutations = 199;
    const auto scan = claims::scan_changepoint(data, cfg);
    CHECK(scan.p_value < 0.05);  // two lines genuinely beat one line
    CHECK(scan.sharpness < cfg.sharpness_threshold);
}

TEST_CASE("scan sample-size guards") {
    const auto few = from_xy(grid(0, 1, 19), grid(0, 1, 19));
    CHECK_THROWS_AS(claims::scan_changepoint(few, ClaimsConfig{}),
                    SampleSizeError);
    // 25 points but only 5 distinct predictor values.
    std::vector<double> xs, ys;
    for (int i = 0; i < 25; ++i) {
        xs.push_back(i % 5);
        ys.push_back(i * 0.1);
    }
    CHECK_THROWS_AS(claims::scan_changepoint(from_xy(xs, ys), ClaimsConfig{}),
                    SampleSizeError);
}

TEST_CASE("nonlinearity test: exact line vs strong parabola") {
    const auto xs = grid(0, 10, 40);
    std::vector<double> line, para;
    for (double x : xs) {
        line.push_back(2.0 + 0.3 * x);
        para.push_back(1.0 + 0.5 * x - 0.2 * x * x);
    }
    ClaimsConfig cfg;
    const auto v_line = claims::test_nonlinearity(from_xy(xs, line), cfg);
    CHECK(v_line.decision == Decision::not_supported);
    CHECK(*v_line.p_value == doctest::Approx(1.0));

    const auto v_para = claims::test_nonlinearity(from_xy(xs, para), cfg);
    CHECK(v_para.decision == Decision::supported);
    CHECK(*v_para.p_value == doctest::Approx(0.0));

    CHECK_THROWS_AS(
        claims::test_nonlinearity(from_xy(grid(0, 1, 9), grid(0, 1, 9)), cfg),
        SampleSizeError);
}

TEST_CASE("inflection test: logistic centered at 3 supports claims 4 and 5") {
    const auto data = simulate::generate(logistic_spec(3.0, 0.0, 11, 200));
    const auto v45 = claims::test_inflection(data, ClaimsConfig{});
    REQUIRE(v45.size() == 2);
    CHECK(v45[0].claim_id == 4);
    CHECK(v45[1].claim_id == 5);
    CHECK(v45[0].decision == Decision::supported);
    CHECK(v45[1].decision == Decision::supported);
}

TEST_CASE("inflection test: logistic centered far from 3 supports only claim 5") {
    auto spec = logistic_spec(8.0, 0.0, 11, 200);
    spec.x_dist.median = 8.0;
    spec.x_dist.log_sd = 0.45;
    spec.x_dist.x_max = 16.0;
    const auto data = simulate::generate(spec);
    const auto v45 = claims::test_inflection(data, ClaimsConfig{});
    CHECK(v45[0].decision == Decision::not_supported);
    CHECK(v45[1].decision == Decision::supported);
}

TEST_CASE("inflection test: exact quadratic has no interior cubic inflection") {
    const auto xs = grid(0, 8, 30);
    std::vector<double> ys;
    for (double x : xs) ys.push_back(4.0 - 0.1 * (x - 4.0) * (x - 4.0));
    const auto v45 = claims::test_inflection(from_xy(xs, ys), ClaimsConfig{});
    CHECK(v45[1].decision == Decision::not_supported);
    CHECK(v45[0].decision == Decision::not_supported);

    CHECK_THROWS_AS(
        claims::test_inflection(from_xy(grid(0, 1, 14), grid(0, 1, 14)),
                                ClaimsConfig{}),
        SampleSizeError);
}

TEST_CASE("correlation test: increasing line, decreasing line, tiny sample") {
    const auto xs = grid(0, 10, 30);
    std::vector<double> up, down;
    for (double x : xs) {
        up.push_back(1.0 + 0.2 * x);
        down.push_back(4.0 - 0.2 * x);
    }
    ClaimsConfig cfg;
    const auto v_up = claims::test_correlation(from_xy(xs, up), cfg);
    REQUIRE(v_up.size() == 2);
    CHECK(v_up[0].claim_id == 7);
    CHECK(v_up[0].decision == Decision::supported);
    CHECK(v_up[1].decision == Decision::not_supported);

    const auto v_down = claims::test_correlation(from_xy(xs, down), cfg);
    CHECK(v_down[0].decision == Decision::not_supported);
    CHECK(v_down[1].decision == Decision::not_supported);
    CHECK(v_down[0].details.find("negative") != std::string::npos);

    CHECK_THROWS_AS(
        claims::test_correlation(from_xy({0, 1, 2}, {0, 1, 2}), cfg),
        SampleSizeError);
    std::vector<double> flat(30, 2.0);
    CHECK_THROWS_AS(claims::test_correlation(from_xy(xs, flat), cfg),
                    UndefinedCorrelationError);
}

TEST_CASE("correlation null is calibrated: scenario 8 holds in about 95% of replications") {
    ClaimsConfig cfg;
    std::mt19937_64 eng(2024);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto xs = grid(0.2, 9.8, 50);
    int kept = 0;
    const int reps = 1000;
    for (int r = 0; r < reps; ++r) {
        std::vector<double> ys;
        for (size_t i = 0; i < xs.size(); ++i) ys.push_back(3.0 + 0.5 * gauss(eng));
        const auto v = claims::test_correlation(from_xy(xs, ys), cfg);
        if (v[1].decision == Decision::supported) ++kept;
    }
    const double rate = static_cast<double>(kept) / reps;
    CHECK(rate > 0.92);
    CHECK(rate < 0.98);
}

TEST_CASE("evaluate_all: noiseless step at the critical ratio supports claims 1-3") {
    const auto data = simulate::generate(step_spec(2.9013, 0.0, 1));
    ClaimsConfig cfg;
    cfg.permutations = 199;
    const auto rep = claims::evaluate_all(data, cfg);
    REQUIRE(rep.verdicts.size() == 8);
    CHECK(supported(rep, 1));
    CHECK(supported(rep, 2));
    CHECK(supported(rep, 3));
    REQUIRE(rep.scan.has_value());
    CHECK(std::fabs(rep.scan->best_x - 2.9013) < 0.1);
}

TEST_CASE("evaluate_all: step away from the critical ratio supports claim 2 but not 1") {
    const auto data = simulate::generate(step_spec(3.5, 0.0, 3));
    ClaimsConfig cfg;
    cfg.permutations = 199;
    const auto rep = claims::evaluate_all(data, cfg);
    CHECK(!supported(rep, 1));
    CHECK(supported(rep, 2));

    // The location constraint can be waived by configuration.
    cfg.claim1_any_location = true;
    const auto rep2 = claims::evaluate_all(data, cfg);
    CHECK(supported(rep2, 1));
}

TEST_CASE("evaluate_all: noiseless logistic supports claims 4-6 but not 1-2") {
    const auto data = simulate::generate(logistic_spec(3.0, 0.0, 7, 250));
    ClaimsConfig cfg;
    cfg.permutations = 199;
    const auto rep = claims::evaluate_all(data, cfg);
    CHECK(!supported(rep, 1));
    CHECK(!supported(rep, 2));
    CHECK(supported(rep, 4));
    CHECK(supported(rep, 5));
    CHECK(supported(rep, 6));
}

TEST_CASE("evaluate_all: exact line supports only scenario 7") {
    std::vector<double> xs = grid(0.3, 11.7, 80);
    std::vector<double> ys;
    for (double x : xs) ys.push_back(1.2 + 0.25 * x);
    ClaimsConfig cfg;
    cfg.permutations = 199;
    const auto rep = claims::evaluate_all(from_xy(xs, ys), cfg);
    for (int id = 1; id <= 8; ++id)
        CHECK(supported(rep, id) == (id == 7));
}

TEST_CASE("evaluate_all: dichotomized data leaves claims 1-6 untestable") {
    // Flagged full-resolution data.
    auto data = simulate::generate(step_spec(3.0, 0.2, 9));
    data.dichotomized = true;
    const auto rep = claims::evaluate_all(data, ClaimsConfig{});
    for (int id = 1; id <= 6; ++id)
        CHECK(rep.verdicts[id - 1].decision == Decision::untestable);
    CHECK(rep.verdicts[6].decision != Decision::untestable);
    CHECK(!rep.scan.has_value());

    // Two-group summary points: only two distinct predictor values survive.
    ScatterData summary;
    for (int i = 0; i < 12; ++i)
        summary.points.push_back({i % 2 ? 2.1 : 3.9, i % 2 ? 2.0 + 0.01 * i : 3.5 + 0.01 * i});
    const auto rep2 = claims::evaluate_all(summary, ClaimsConfig{});
    for (int id = 1; id <= 6; ++id)
        CHECK(rep2.verdicts[id - 1].decision == Decision::untestable);
}

TEST_CASE("evaluate_all: alternate-parameterization nonlinearity is reported") {
    // Linear in the fraction parameterization, analyzed as ratios: the
    // primary quadratic term is spurious and the alternate view removes it.
    std::vector<double> fr = grid(0.05, 0.92, 120);
    ScatterData ratios;
    ratios.x_kind = regression::XKind::ratio;
    std::mt19937_64 eng(77);
    std::normal_distribution<double> gauss(0.0, 0.01);
    for (double f : fr)
        ratios.points.push_back({regression::fraction_to_ratio(f),
                                 1.0 + 2.0 * f + gauss(eng)});
    const auto rep = claims::evaluate_all(ratios, ClaimsConfig{});
    CHECK(supported(rep, 6));
    REQUIRE(rep.claim6_alt.has_value());
    CHECK(rep.claim6_alt->x_kind == regression::XKind::fraction);
    CHECK(rep.claim6_alt->decision == Decision::not_supported);
}

TEST_CASE("monotone ladder holds across 200 seeded datasets of all four shapes") {
    ClaimsConfig cfg;
    cfg.permutations = 99;
    for (int shape_i = 0; shape_i < 4; ++shape_i) {
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            simulate::GeneratorSpec spec;
            spec.shape = static_cast<simulate::Shape>(shape_i);
            spec.noise_sd = 0.4;
            spec.n = 120;
            spec.seed = seed;
            const auto rep = claims::evaluate_all(simulate::generate(spec), cfg);
            if (supported(rep, 1)) CHECK(supported(rep, 2));
            if (supported(rep, 2)) CHECK(supported(rep, 3));
            if (supported(rep, 4)) CHECK(supported(rep, 5));
            if (supported(rep, 5)) CHECK(supported(rep, 6));
            for (const auto& v : rep.verdicts) {
                if (v.decision != Decision::untestable && v.p_value) {
                    CHECK(*v.p_value >= 0.0);
                    CHECK(*v.p_value <= 1.0);
                }
            }
        }
    }
}

TEST_CASE("evaluate_all is deterministic for a fixed config") {
    const auto data = simulate::generate(step_spec(3.0, 0.3, 17));
    ClaimsConfig cfg;
    cfg.permutations = 199;
    const auto a = claims::evaluate_all(data, cfg);
    const auto b = claims::evaluate_all(data, cfg);
    REQUIRE(a.verdicts.size() == b.verdicts.size());
    for (size_t i = 0; i < a.verdicts.size(); ++i) {
        CHECK(a.verdicts[i].decision == b.verdicts[i].decision);
        CHECK(a.verdicts[i].statistic == b.verdicts[i].statistic);
        if (a.verdicts[i].p_value)
            CHECK(*a.verdicts[i].p_value == *b.verdicts[i].p_value);
    }
    REQUIRE(a.scan.has_value());
    CHECK(a.scan->best_x == b.scan->best_x);
    CHECK(a.scan->p_value == b.scan->p_value);
    CHECK(a.scan->improvement_stat == b.scan->improvement_stat);
    CHECK(a.scan->sharpness == b.scan->sharpness);
}
