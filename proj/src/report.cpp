#include "ratiolab/report.hpp"

#include <cmath>

namespace ratiolab::report {

namespace {

json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return nullptr;
}

json opt(const std::optional<double>& v) {
    return v ? finite_or_null(*v) : json(nullptr);
}

const char* x_kind_name(regression::XKind k) {
    switch (k) {
        case regression::XKind::ratio: return "ratio";
        case regression::XKind::fraction: return "fraction";
        default: return "raw";
    }
}

}  // namespace

json to_json(const stats::SummaryStats& s) {
    return {{"n1", s.n1},
            {"n2", s.n2},
            {"mean1", s.mean1},
            {"mean2", s.mean2},
            {"t", s.t_stat}};
}

json to_json(const stats::TailEstimate& t) {
    return {{"mu", t.mu},
            {"sigma", t.sigma},
            {"threshold", t.threshold},
            {"fraction_above", t.fraction_above},
            {"note", "normal approximation; positivity ratios are nonnegative"}};
}

json to_json(const regression::RegressionFit& fit) {
    json coeffs = json::array();
    for (size_t i = 0; i < fit.coeffs.size(); ++i) {
        coeffs.push_back({{"power", i},
                          {"estimate", finite_or_null(fit.coeffs[i])},
                          {"std_error", finite_or_null(fit.std_errors[i])},
                          {"t", finite_or_null(fit.t_stats[i])},
                          {"p_two_tailed", finite_or_null(fit.p_values[i])}});
    }
    return {{"degree", fit.degree},
            {"n", fit.n},
            {"coefficients", coeffs},
            {"r_squared", fit.r_squared},
            {"resid_var", fit.resid_var},
            {"x_range", {fit.x_min, fit.x_max}}};
}

json to_json(const forensics::ForensicsReport& r) {
    json by_allowance = json::array();
    for (const auto& [a, v] : r.verdict_by_allowance)
        by_allowance.push_back(
            {{"allowance", a}, {"verdict", forensics::verdict_name(v)}});
    json j = {{"input", to_json(r.input)},
              {"implied_sd", opt(r.implied_sd)},
              {"support_bound", opt(r.support_bound)},
              {"tail", r.tail ? to_json(*r.tail) : json(nullptr)},
              {"recomputed_p_one_tailed", r.recomputed_p_one_tailed},
              {"recomputed_p_two_tailed", r.recomputed_p_two_tailed},
              {"verdict", forensics::verdict_name(r.verdict)},
              {"verdict_by_allowance", by_allowance},
              {"assumptions", r.assumptions}};
    if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
    return j;
}

json to_json(const std::vector<forensics::SensitivityEntry>& entries) {
    json arr = json::array();
    for (const auto& e : entries) {
        json j = {{"sd_ratio", e.sd_ratio}, {"feasible", e.feasible}};
        if (e.feasible) {
            j["sd_flourishing"] = e.sd_flourishing;
            j["sd_nonflourishing"] = e.sd_nonflourishing;
            j["tail"] = e.tail ? to_json(*e.tail) : json(nullptr);
        }
        arr.push_back(j);
    }
    return arr;
}

json to_json(const claims::ClaimVerdict& v) {
    return {{"claim_id", v.claim_id},
            {"description", v.description},
            {"procedure", v.procedure},
            {"statistic", finite_or_null(v.statistic)},
            {"p_value", opt(v.p_value)},
            {"decision", claims::decision_name(v.decision)},
            {"details", v.details}};
}

json to_json(const claims::ChangepointScan& s) {
    return {{"candidates", s.candidate_x.size()},
            {"best_x", s.best_x},
            {"improvement_stat", finite_or_null(s.improvement_stat)},
            {"p_value", s.p_value},
            {"sharpness", finite_or_null(s.sharpness)}};
}

json to_json(const claims::ClaimReport& r) {
    json verdicts = json::array();
    for (const auto& v : r.verdicts) verdicts.push_back(to_json(v));
    json j = {{"verdicts", verdicts}};
    j["changepoint_scan"] = r.scan ? to_json(*r.scan) : json(nullptr);
    if (r.claim6_alt) {
        j["claim6_alternate_parameterization"] = {
            {"x_kind", x_kind_name(r.claim6_alt->x_kind)},
            {"b2", finite_or_null(r.claim6_alt->b2)},
            {"b2_se", finite_or_null(r.claim6_alt->b2_se)},
            {"p_value", opt(r.claim6_alt->p_value)},
            {"decision", claims::decision_name(r.claim6_alt->decision)}};
    } else {
        j["claim6_alternate_parameterization"] = nullptr;
    }
    return j;
}

json to_json(const simulate::PowerTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        rows.push_back({{"shape", simulate::shape_name(r.shape)},
                        {"replications", r.replications},
                        {"degenerate_splits", r.degenerate_splits},
                        {"dichotomized_t_rate", r.dichotomized_t_rate},
                        {"quadratic_rate", r.quadratic_rate},
                        {"changepoint_rate", r.changepoint_rate}});
    }
    return {{"alpha", t.alpha},
            {"threshold_y", t.threshold_y},
            {"replications", t.replications},
            {"seed", t.seed},
            {"rows", rows}};
}

json envelope(const std::string& subcommand, const std::string& input_digest,
              json parameters, json results) {
    return {{"tool", "ratiolab"},
            {"tool_version", kToolVersion},
            {"schema_version", kSchemaVersion},
            {"subcommand", subcommand},
            {"input_digest", input_digest},
            {"parameters", std::move(parameters)},
            {"results", std::move(results)}};
}

}  // namespace ratiolab::report
