#include "fortrend/report.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "fortrend/errors.hpp"

namespace fortrend {

namespace {

std::string fixed(double v, int prec = 4) {
    if (!std::isfinite(v)) return v < 0 ? "-inf" : (std::isnan(v) ? "nan" : "inf");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    return buf;
}

} // namespace

json to_json(const FoRModel& m, const GaugeRecord& gauge) {
    return json{{"log10_k", m.log10_k},
                {"alphas", m.alphas},
                {"gauge",
                 {{"alpha1_target", gauge.gauge_alpha1},
                  {"anchor_year", gauge.anchor_year},
                  {"anchor_value", gauge.anchor_value}}}};
}

json to_json(const TemporalModel& tm) {
    json j;
    j["variant"] = std::string(1, variant_letter(tm.variant()));
    switch (tm.variant()) {
        case Variant::A: {
            const auto& p = tm.as<ExpLaw>();
            j["params"] = {{"slope", p.slope}, {"intercept", p.intercept}};
            break;
        }
        case Variant::B: {
            const auto& p = tm.as<QuadExpLaw>();
            j["params"] = {{"vertex_year", p.vertex_year},
                           {"curvature", p.curvature},
                           {"offset", p.offset}};
            break;
        }
        case Variant::C: {
            const auto& p = tm.as<CubicExpLaw>();
            j["params"] = {{"inflection_year", p.inflection_year},
                           {"coefficient", p.coefficient},
                           {"offset", p.offset}};
            break;
        }
        case Variant::D: {
            const auto& p = tm.as<DoubleExpLaw>();
            j["params"] = {{"offset", p.offset},
                           {"log_amplitude", p.log_amplitude},
                           {"rate", p.rate}};
            break;
        }
        case Variant::E: {
            const auto& p = tm.as<PiecewiseExpLaw>();
            j["params"] = {{"pre_intercept", p.pre_intercept},
                           {"pre_slope", p.pre_slope},
                           {"post_intercept", p.post_intercept},
                           {"post_slope", p.post_slope}};
            j["breakpoint"] = p.breakpoint;
            j["accelerates_after_break"] = p.accelerates_after_break();
            break;
        }
    }
    return j;
}

json to_json(const FitResult& res) {
    json j;
    j["for_model"] = to_json(res.for_model, res.gauge_applied);
    j["temporal"] = to_json(res.temporal);
    j["sse"] = res.sse;
    j["n"] = res.n;
    j["param_count"] = res.param_count;
    j["converged"] = res.converged;
    j["gauge_applied"] = {{"scale", res.gauge_applied.scale},
                          {"anchor_shift", res.gauge_applied.anchor_shift}};
    json rows = json::array();
    for (const auto& r : res.residuals)
        rows.push_back({{"year", r.year},
                        {"observed", r.observed_log10_for},
                        {"predicted", r.predicted_log10_for},
                        {"residual", r.residual}});
    j["residuals"] = rows;
    return j;
}

json to_json(const ScoreReport& s) {
    json j;
    j["r2"] = s.r2;
    j["bic_standard"] = s.bic_standard;
    j["bic_paper"] = s.bic_paper;
    j["bic_gaussian"] = s.bic_gaussian;
    j["mape_insample"] = s.mape_insample;
    if (s.hindcast) {
        json windows = json::array();
        for (const auto& w : s.hindcast->windows)
            windows.push_back({{"train_cutoff", w.train_cutoff},
                               {"eval_lo", w.eval_lo},
                               {"eval_hi", w.eval_hi},
                               {"mape", w.mape},
                               {"n_train", w.n_train},
                               {"n_eval", w.n_eval},
                               {"max_train_year", w.max_train_year}});
        j["mape_hindcast"] = {{"avg", s.hindcast->mape_avg},
                              {"windows", windows}};
    } else if (!s.hindcast_error.empty()) {
        j["mape_hindcast_error"] = s.hindcast_error;
    }
    j["param_count"] = s.param_count;
    j["n"] = s.n;
    j["perfect_fit"] = s.perfect_fit;
    return j;
}

json to_json(const GapReport& g) {
    json incs = json::array();
    for (const auto& inc : g.scenario_increments)
        incs.push_back({{"attribute", inc.attribute},
                        {"multiplier", inc.multiplier},
                        {"increment", inc.increment}});
    return json{{"horizon_year", g.horizon_year},
                {"predicted_log10_for", g.predicted_log10_for},
                {"max_observed_log10_for", g.max_observed_log10_for},
                {"best_record", g.best_record},
                {"gap", g.gap},
                {"scenario_increments", incs},
                {"scenario_total", g.scenario_total},
                {"coverage_ratio", g.coverage_ratio},
                {"extrapolation_warning", g.extrapolation_warning}};
}

namespace {

json config_json(const FitConfig& cfg, BicMode mode) {
    json j;
    j["gauge_alpha1"] = cfg.gauge_alpha1;
    j["anchor_year"] = cfg.anchor_year;
    j["anchor_value"] = cfg.anchor_value;
    j["breakpoint"] = cfg.breakpoint;
    if (cfg.pin_vertex) j["pin_vertex"] = *cfg.pin_vertex;
    j["cubic_inflection_grid"] = {{"lo", cfg.cubic_inflection_grid.lo},
                                  {"hi", cfg.cubic_inflection_grid.hi},
                                  {"steps", cfg.cubic_inflection_grid.steps}};
    j["double_exp_rate_grid"] = {{"lo", cfg.double_exp_rate_grid.lo},
                                 {"hi", cfg.double_exp_rate_grid.hi},
                                 {"steps", cfg.double_exp_rate_grid.steps},
                                 {"log_spaced", true}};
    j["refine_iters"] = cfg.refine_iters;
    j["bic_mode"] = bic_mode_name(mode);
    return j;
}

json counting_ledger(const AttributeSchema& schema) {
    json per_variant;
    for (Variant v : {Variant::A, Variant::B, Variant::C, Variant::D, Variant::E})
        per_variant[std::string(1, variant_letter(v))] =
            joint_param_count(schema.count(), v);
    return json{
        {"shared",
         "(n_attr - 1) free exponents + 1 combined constant; alpha1 is "
         "gauge-fixed, the constant splits into log10_k and the temporal "
         "offset by the anchor convention"},
        {"temporal_shape", {{"A", 1}, {"B", 2}, {"C", 2}, {"D", 2}, {"E", 3}}},
        {"total_per_variant", per_variant}};
}

} // namespace

json run_report(const Dataset& d, const FitConfig& cfg, BicMode mode,
                const std::vector<VariantOutcome>& outcomes,
                const std::vector<std::pair<Variant, ScoreReport>>& scores,
                const std::vector<RankEntry>& ranking) {
    json j;
    j["schema_version"] = report_schema_version;
    j["tool"] = {{"name", tool_name}, {"version", tool_version}};
    j["config"] = config_json(cfg, mode);
    j["dataset"] = {
        {"n", d.size()},
        {"provenance", d.provenance()},
        {"schema", {{"names", d.schema().names}, {"units", d.schema().units}}},
        {"year_min", d.empty() ? json() : json(d.records().front().year)},
        {"year_max", d.empty() ? json() : json(d.records().back().year)}};
    j["parameter_counting"] = counting_ledger(d.schema());

    json variants = json::array();
    for (const auto& o : outcomes) {
        json vj;
        vj["variant"] = std::string(1, variant_letter(o.variant));
        vj["description"] = variant_description(o.variant);
        if (o.result) {
            vj["fit"] = to_json(*o.result);
            for (const auto& [v, s] : scores)
                if (v == o.variant) vj["score"] = to_json(s);
            // fitted exponents reported as-is; flag any negative one
            for (double a : o.result->for_model.alphas)
                if (a < 0.0) vj["warning"] = "fitted exponent is negative";
        } else {
            vj["error"] = o.error;
        }
        variants.push_back(std::move(vj));
    }
    j["variants"] = variants;

    json ranks = json::array();
    for (const auto& e : ranking)
        ranks.push_back({{"variant", std::string(1, variant_letter(e.variant))},
                         {"bic_rank", e.bic_rank},
                         {"r2_rank", e.r2_rank},
                         {"mape_rank", e.mape_rank},
                         {"composite", e.composite}});
    j["ranking"] = ranks;
    j["notes"] = json::array(
        {"No hard winner is forced; the study's final choice of B also used "
         "a domain-plausibility argument (near-zero rate-of-fire exponent "
         "under A judged implausible).",
         "Anchor convention: the fitted curve's log10 value equals "
         "anchor_value at anchor_year; log10_k holds the remainder."});
    return j;
}

std::string residuals_csv(const FitResult& res) {
    std::ostringstream out;
    out << "year,observed,predicted,residual\n";
    for (const auto& r : res.residuals)
        out << format_double(r.year) << ',' << format_double(r.observed_log10_for)
            << ',' << format_double(r.predicted_log10_for) << ','
            << format_double(r.residual) << '\n';
    return out.str();
}

std::string summary_csv(const AttributeSchema& schema,
                        const std::vector<VariantOutcome>& outcomes,
                        const std::vector<std::pair<Variant, ScoreReport>>& scores,
                        BicMode mode) {
    std::ostringstream out;
    out << "variant";
    for (std::size_t j = 0; j < schema.count(); ++j) out << ",alpha" << (j + 1);
    out << ",r2,bic,mape,mape_kind\n";
    for (const auto& o : outcomes) {
        out << variant_letter(o.variant);
        if (!o.result) {
            for (std::size_t j = 0; j < schema.count() + 3; ++j) out << ',';
            out << "error\n";
            continue;
        }
        for (double a : o.result->for_model.alphas) out << ',' << format_double(a);
        const ScoreReport* s = nullptr;
        for (const auto& [v, sr] : scores)
            if (v == o.variant) s = &sr;
        if (s) {
            double b = mode == BicMode::Standard     ? s->bic_standard
                       : mode == BicMode::PaperLiteral ? s->bic_paper
                                                       : s->bic_gaussian;
            out << ',' << format_double(s->r2) << ',' << format_double(b) << ','
                << format_double(s->mape_value()) << ','
                << (s->hindcast ? "hindcast-3-window" : "in-sample");
        } else {
            out << ",,,,";
        }
        out << '\n';
    }
    return out.str();
}

std::string summary_text(const AttributeSchema& schema,
                         const std::vector<VariantOutcome>& outcomes,
                         const std::vector<std::pair<Variant, ScoreReport>>& scores,
                         const std::vector<RankEntry>& ranking, BicMode mode) {
    std::ostringstream out;
    out << "Joint FoR + temporal-law fit summary\n";
    out << "variant      ";
    for (const auto& o : outcomes) out << "  " << variant_letter(o.variant) << "           ";
    out << '\n';
    auto row = [&](const std::string& label,
                   const std::function<std::string(const VariantOutcome&)>& cell) {
        out << label;
        for (std::size_t i = label.size(); i < 13; ++i) out << ' ';
        for (const auto& o : outcomes) {
            std::string c = cell(o);
            out << "  " << c;
            for (std::size_t i = c.size(); i < 11; ++i) out << ' ';
        }
        out << '\n';
    };
    for (std::size_t j = 0; j < schema.count(); ++j) {
        row("alpha" + std::to_string(j + 1), [&](const VariantOutcome& o) {
            return o.result ? fixed(o.result->for_model.alphas[j]) : "-";
        });
    }
    auto find_score = [&](Variant v) -> const ScoreReport* {
        for (const auto& [sv, s] : scores)
            if (sv == v) return &s;
        return nullptr;
    };
    row("R^2", [&](const VariantOutcome& o) {
        auto* s = find_score(o.variant);
        return s ? fixed(s->r2) : "-";
    });
    row("BIC(" + bic_mode_name(mode) + ")", [&](const VariantOutcome& o) {
        auto* s = find_score(o.variant);
        if (!s) return std::string("-");
        double b = mode == BicMode::Standard     ? s->bic_standard
                   : mode == BicMode::PaperLiteral ? s->bic_paper
                                                   : s->bic_gaussian;
        return fixed(b);
    });
    row("MAPE", [&](const VariantOutcome& o) {
        auto* s = find_score(o.variant);
        return s ? fixed(s->mape_value()) : "-";
    });
    row("k (params)", [&](const VariantOutcome& o) {
        return o.result ? std::to_string(o.result->param_count) : "-";
    });
    for (const auto& o : outcomes)
        if (!o.result)
            out << "variant " << variant_letter(o.variant) << ": " << o.error
                << '\n';
    if (!ranking.empty()) {
        out << "composite ranking:";
        for (const auto& e : ranking)
            out << ' ' << variant_letter(e.variant) << "(" << fixed(e.composite, 3)
                << ")";
        out << '\n';
    }
    return out.str();
}

std::string gap_report_text(const GapReport& g) {
    std::ostringstream out;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "predicted log10 FoR at %.0f: %.2f\n"
                  "best observed log10 FoR: %.2f%s%s\n"
                  "gap to close: %.2f\n",
                  g.horizon_year, g.predicted_log10_for,
                  g.max_observed_log10_for, g.best_record.empty() ? "" : " at ",
                  g.best_record.c_str(), g.gap);
    out << buf;
    for (const auto& inc : g.scenario_increments) {
        std::snprintf(buf, sizeof(buf), "  %-14s x%-5.3g -> +%.2f\n",
                      inc.attribute.c_str(), inc.multiplier, inc.increment);
        out << buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "scenario total: %.2f (coverage %.0f%% of the gap)\n",
                  g.scenario_total, 100.0 * g.coverage_ratio);
    out << buf;
    if (g.extrapolation_warning)
        out << "warning: horizon is farther beyond the data than the data "
               "span itself\n";
    return out.str();
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

FoRModel for_model_from_json(const json& j) {
    FoRModel m;
    m.log10_k = j.at("log10_k").get<double>();
    m.alphas = j.at("alphas").get<std::vector<double>>();
    return m;
}

TemporalModel temporal_from_json(const json& j) {
    std::string v = j.at("variant").get<std::string>();
    const json& p = j.at("params");
    switch (variant_from_letter(v.empty() ? '?' : v[0])) {
        case Variant::A:
            return ExpLaw{p.at("slope").get<double>(),
                          p.at("intercept").get<double>()};
        case Variant::B:
            return QuadExpLaw{p.at("vertex_year").get<double>(),
                              p.at("curvature").get<double>(),
                              p.at("offset").get<double>()};
        case Variant::C:
            return CubicExpLaw{p.at("inflection_year").get<double>(),
                               p.at("coefficient").get<double>(),
                               p.at("offset").get<double>()};
        case Variant::D:
            return DoubleExpLaw{p.at("offset").get<double>(),
                                p.at("log_amplitude").get<double>(),
                                p.at("rate").get<double>()};
        case Variant::E:
            return PiecewiseExpLaw{p.at("pre_intercept").get<double>(),
                                   p.at("pre_slope").get<double>(),
                                   p.at("post_intercept").get<double>(),
                                   p.at("post_slope").get<double>(),
                                   j.at("breakpoint").get<double>()};
    }
    throw ParseError("unknown temporal variant in JSON: " + v);
}

} // namespace fortrend
