// ratiolab: statistical forensics and nonlinearity analysis for
// positivity-ratio datasets.  CSV in, JSON reports and TSV plot data out.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ratiolab/claims.hpp"
#include "ratiolab/errors.hpp"
#include "ratiolab/forensics.hpp"
#include "ratiolab/io.hpp"
#include "ratiolab/kernels.hpp"
#include "ratiolab/regression.hpp"
#include "ratiolab/report.hpp"
#include "ratiolab/simulate.hpp"

namespace {

using ratiolab::report::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

// Shared option state.  Precedence: CLI flag > config file > default.
struct CommonOpts {
    std::string input;
    std::string config_path;
    std::string output;
    std::uint64_t seed = 12345;
    double alpha = 0.05;
    double threshold = 2.9013;
    double upper_threshold = 11.6346;
    std::string x_var = "ratio";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_input = true) {
    auto* in = cmd->add_option("--input", o.input, "input CSV file");
    if (needs_input) in->required();
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--alpha", o.alpha, "significance level");
    cmd->add_option("--threshold", o.threshold, "claimed lower critical ratio");
    cmd->add_option("--upper-threshold", o.upper_threshold,
                    "claimed upper critical ratio");
    cmd->add_option("--x-var", o.x_var, "predictor parameterization")
        ->check(CLI::IsMember({"ratio", "fraction", "raw"}));
    cmd->add_option("--output", o.output, "output path (default: stdout)");
}

// Fills unset options from the config file.  CLI11 tells us which flags the
// user passed, so file values only apply underneath them.
void apply_config(const CLI::App* cmd, CommonOpts& o) {
    if (o.config_path.empty()) return;
    std::ifstream in(o.config_path);
    if (!in) throw ratiolab::ParseError("cannot open config file: " + o.config_path);
    json cfg = json::parse(in, nullptr, true, true);
    auto take = [&](const char* flag, const char* key, auto& slot) {
        if (cmd->count(flag) == 0 && cfg.contains(key)) slot = cfg.at(key);
    };
    take("--seed", "seed", o.seed);
    take("--alpha", "alpha", o.alpha);
    take("--threshold", "threshold", o.threshold);
    take("--upper-threshold", "upper_threshold", o.upper_threshold);
    take("--x-var", "x_var", o.x_var);
}

ratiolab::regression::XKind parse_x_kind(const std::string& s) {
    if (s == "ratio") return ratiolab::regression::XKind::ratio;
    if (s == "fraction") return ratiolab::regression::XKind::fraction;
    return ratiolab::regression::XKind::raw;
}

void emit(const json& doc, const std::string& output) {
    if (output.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream out(output);
        if (!out)
            throw ratiolab::ParseError("cannot open output file: " + output);
        out << doc.dump(2) << "\n";
    }
}

json common_params(const CommonOpts& o) {
    return {{"seed", o.seed},
            {"alpha", o.alpha},
            {"threshold", o.threshold},
            {"upper_threshold", o.upper_threshold},
            {"x_var", o.x_var},
            {"simd_backend",
             ratiolab::kernels::backend_name(ratiolab::kernels::active_backend())}};
}

int run_forensics(const CLI::App* cmd, CommonOpts& o) {
    apply_config(cmd, o);
    const auto summaries = ratiolab::io::load_summaries(o.input);
    ratiolab::forensics::ForensicsConfig cfg;
    cfg.threshold = o.threshold;

    json results = json::array();
    for (const auto& s : summaries) {
        const auto rep = ratiolab::forensics::audit(s.stats, cfg);
        json j = {{"sample", s.label}, {"audit", ratiolab::report::to_json(rep)}};
        j["equal_variance_sensitivity"] = ratiolab::report::to_json(
            ratiolab::forensics::equal_variance_sensitivity(
                s.stats, {0.5, 1.0, 2.0}, cfg));
        results.push_back(std::move(j));
    }
    json params = common_params(o);
    params["impurity_allowance"] = cfg.impurity_allowance;
    params["allowance_grid"] = cfg.allowance_grid;
    emit(ratiolab::report::envelope("forensics", ratiolab::io::file_digest(o.input),
                                    params, results),
         o.output);
    return kExitOk;
}

// 200 evenly spaced curve samples spanning exactly the observed range.
void write_curve_tsv(const std::string& path,
                     const ratiolab::regression::RegressionFit& linear,
                     const ratiolab::regression::RegressionFit& quadratic) {
    std::ofstream out(path);
    if (!out) throw ratiolab::ParseError("cannot open output file: " + path);
    out << "x\ty_linear\ty_quadratic\n";
    const int samples = 200;
    char buf[128];
    for (int i = 0; i < samples; ++i) {
        const double x = linear.x_min +
                         (linear.x_max - linear.x_min) * i / (samples - 1);
        std::snprintf(buf, sizeof(buf), "%.12g\t%.12g\t%.12g\n", x,
                      ratiolab::regression::predict(linear, x),
                      ratiolab::regression::predict(quadratic, x));
        out << buf;
    }
}

int run_fit(const CLI::App* cmd, CommonOpts& o) {
    apply_config(cmd, o);
    const auto ds = ratiolab::io::load_records(o.input);

    json results = json::object();
    auto fit_param = [&](ratiolab::regression::XKind kind, const char* name) {
        long skipped = 0;
        const auto data = ds.as_scatter(kind, &skipped);
        const auto lin = ratiolab::regression::fit_polynomial(data, 1);
        const auto quad = ratiolab::regression::fit_polynomial(data, 2);
        json j = {{"n", static_cast<long>(data.points.size())},
                  {"rows_skipped", skipped},
                  {"linear", ratiolab::report::to_json(lin)},
                  {"quadratic", ratiolab::report::to_json(quad)}};
        results[name] = std::move(j);
        if (!o.output.empty())
            write_curve_tsv(o.output + "." + name + ".tsv", lin, quad);
    };

    if (ds.schema == ratiolab::io::InputSchema::positivity) {
        // Figure-2 style: the same data under both parameterizations.
        fit_param(ratiolab::regression::XKind::ratio, "ratio");
        fit_param(ratiolab::regression::XKind::fraction, "fraction");
    } else {
        fit_param(parse_x_kind(o.x_var), o.x_var.c_str());
    }
    emit(ratiolab::report::envelope("fit", ratiolab::io::file_digest(o.input),
                                    common_params(o), results),
         o.output.empty() ? "" : o.output);
    return kExitOk;
}

int run_claims(const CLI::App* cmd, CommonOpts& o, int permutations,
               bool dichotomized) {
    apply_config(cmd, o);
    const auto ds = ratiolab::io::load_records(o.input);
    auto data = ds.as_scatter(ds.schema == ratiolab::io::InputSchema::xy
                                  ? parse_x_kind(o.x_var)
                                  : parse_x_kind(o.x_var),
                              nullptr);
    data.dichotomized = dichotomized;

    ratiolab::claims::ClaimsConfig cfg;
    cfg.alpha = o.alpha;
    cfg.threshold = o.threshold;
    cfg.seed = o.seed;
    cfg.permutations = permutations;
    if (cmd->count("--threshold") > 0) {
        // Re-center the "around 3" windows when auditing the upper constant.
        cfg.window_lo = o.threshold - 1.0;
        cfg.window_hi = o.threshold + 1.1;
    }

    const auto rep = ratiolab::claims::evaluate_all(data, cfg);
    json params = common_params(o);
    params["permutations"] = cfg.permutations;
    params["window"] = {cfg.window_lo, cfg.window_hi};
    params["claim1_tolerance"] = cfg.claim1_tol;
    params["dichotomized"] = dichotomized;
    emit(ratiolab::report::envelope("claims", ratiolab::io::file_digest(o.input),
                                    params, ratiolab::report::to_json(rep)),
         o.output);
    return kExitOk;
}

int run_simulate(const CLI::App* cmd, CommonOpts& o, long reps, int threads,
                 double threshold_y, double noise_sd, long n, bool calibrate,
                 int permutations) {
    apply_config(cmd, o);
    namespace sim = ratiolab::simulate;

    sim::GeneratorSpec step;
    step.shape = sim::Shape::step;
    step.location = o.threshold;
    step.noise_sd = noise_sd;
    step.n = n;
    // Keep the two outcome levels close enough to the dichotomization cut
    // that a bounded linear generator can be calibrated to the same expected
    // group means.
    step.lo = threshold_y - 0.5;
    step.hi = threshold_y + 0.5;

    sim::GeneratorSpec linear;
    linear.shape = sim::Shape::linear;
    linear.noise_sd = noise_sd;
    linear.n = n;
    if (calibrate) {
        const auto targets = sim::expected_group_means(step, threshold_y);
        linear = sim::calibrate_linear_to_group_means(linear, targets.first,
                                                      targets.second, threshold_y);
    }

    sim::GeneratorSpec logistic = step;
    logistic.shape = sim::Shape::logistic;
    sim::GeneratorSpec inv_u = step;
    inv_u.shape = sim::Shape::inverted_u;

    const std::vector<sim::GeneratorSpec> specs = {linear, step, logistic, inv_u};
    const auto table = sim::power_comparison(specs, reps, threshold_y, o.alpha,
                                             o.seed, permutations, threads);

    json params = common_params(o);
    params["replications"] = reps;
    params["threshold_y"] = threshold_y;
    params["noise_sd"] = noise_sd;
    params["n_per_replicate"] = n;
    params["calibrated"] = calibrate;
    params["scan_permutations"] = permutations;
    if (calibrate) params["linear_calibrated"] = {{"a", linear.a}, {"b", linear.b}};
    emit(ratiolab::report::envelope("simulate", "", params,
                                    ratiolab::report::to_json(table)),
         o.output);
    return kExitOk;
}

int run_transform(const CLI::App* cmd, CommonOpts& o) {
    apply_config(cmd, o);
    const auto ds = ratiolab::io::load_records(o.input);
    if (ds.schema != ratiolab::io::InputSchema::positivity)
        throw ratiolab::ParseError("transform requires the p,n,outcome schema");
    if (o.output.empty())
        throw ratiolab::ParseError("transform requires --output");
    ratiolab::io::write_transformed(o.output, ds.records);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"positivity-ratio forensics and nonlinearity analysis"};
    app.require_subcommand(1);

    CommonOpts fo, to, co, so, xo;
    auto* forensics = app.add_subcommand(
        "forensics", "audit published two-group summary statistics");
    add_common(forensics, fo);

    auto* fit = app.add_subcommand(
        "fit", "linear + quadratic fits in both parameterizations");
    add_common(fit, to);

    auto* claims = app.add_subcommand("claims", "evaluate the claims ladder");
    add_common(claims, co);
    int claim_perms = 999;
    bool dichotomized = false;
    claims->add_option("--permutations", claim_perms, "permutation count");
    claims->add_flag("--dichotomized", dichotomized,
                     "treat the input as coming from a dichotomized design");

    auto* simulate = app.add_subcommand(
        "simulate", "dichotomization power comparison across outcome shapes");
    add_common(simulate, so, /*needs_input=*/false);
    long reps = 1000, sim_n = 100;
    int threads = 1, sim_perms = 199;
    double threshold_y = 3.0, noise_sd = 0.5;
    bool no_calibrate = false;
    simulate->add_option("--reps", reps, "Monte-Carlo replications");
    simulate->add_option("--threads", threads, "worker threads");
    simulate->add_option("--threshold-y", threshold_y, "outcome dichotomization cut");
    simulate->add_option("--noise", noise_sd, "outcome noise SD");
    simulate->add_option("--n", sim_n, "points per replicate");
    simulate->add_option("--permutations", sim_perms, "changepoint-scan permutations");
    simulate->add_flag("--no-calibrate", no_calibrate,
                       "skip matching the linear generator's expected group means "
                       "to the step generator's");

    auto* transform =
        app.add_subcommand("transform", "append ratio and fraction columns");
    add_common(transform, xo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (forensics->parsed()) return run_forensics(forensics, fo);
        if (fit->parsed()) return run_fit(fit, to);
        if (claims->parsed()) return run_claims(claims, co, claim_perms, dichotomized);
        if (simulate->parsed())
            return run_simulate(simulate, so, reps, threads, threshold_y, noise_sd,
                                sim_n, !no_calibrate, sim_perms);
        if (transform->parsed()) return run_transform(transform, xo);
    } catch (const ratiolab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
