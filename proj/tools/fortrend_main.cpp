// fortrend: joint fitting of a power-law composite index and its temporal
// growth law, with forecasting, backtesting and plotting subcommands.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fortrend/errors.hpp"
#include "fortrend/fitjoint.hpp"
#include "fortrend/forecast.hpp"
#include "fortrend/formodel.hpp"
#include "fortrend/reference.hpp"
#include "fortrend/report.hpp"
#include "fortrend/scoring.hpp"
#include "fortrend/svgplot.hpp"
#include "fortrend/synthgen.hpp"

namespace ft = fortrend;

namespace {

constexpr int kExitData = 1;
constexpr int kExitDegenerate = 2;

struct CommonOpts {
    std::string data_path;
    std::string models = "A,B,C,D,E";
    double gauge_alpha = 2.0;
    double anchor_year = 1200.0;
    double anchor_value = 1.0;
    double breakpoint = 1832.0;
    std::string bic_mode = "standard";
    std::optional<double> pin_vertex;
    std::string out;
};

void add_fit_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--data", o.data_path,
                    "input CSV (default: the bundled 8-record sample)");
    cmd->add_option("--models", o.models, "comma list of variants, e.g. B or A,B");
    cmd->add_option("--gauge-alpha", o.gauge_alpha, "target alpha1 (default 2.0)");
    cmd->add_option("--anchor-year", o.anchor_year, "anchor year (default 1200)");
    cmd->add_option("--anchor-value", o.anchor_value,
                    "anchored log10 value (default 1.0)");
    cmd->add_option("--breakpoint", o.breakpoint,
                    "model E breakpoint year (default 1832)");
    cmd->add_option("--bic-mode", o.bic_mode,
                    "standard | paper-literal | gaussian");
    double pv = 0.0;
    cmd->add_option_function<double>(
        "--pin-vertex", [&o](double v) { o.pin_vertex = v; },
        "constrain model B's vertex year");
    (void)pv;
    cmd->add_option("--out", o.out, "write the JSON report here (default stdout)");
}

ft::FitConfig make_config(const CommonOpts& o) {
    ft::FitConfig cfg;
    cfg.gauge_alpha1 = o.gauge_alpha;
    cfg.anchor_year = o.anchor_year;
    cfg.anchor_value = o.anchor_value;
    cfg.breakpoint = o.breakpoint;
    cfg.pin_vertex = o.pin_vertex;
    return cfg;
}

ft::Dataset load_data(const CommonOpts& o) {
    if (o.data_path.empty()) return ft::builtin_sample();
    return ft::load_csv(o.data_path, ft::AttributeSchema::small_arms());
}

std::vector<ft::Variant> parse_models(const std::string& s) {
    std::vector<ft::Variant> out;
    for (char c : s) {
        if (c == ',' || c == ' ') continue;
        out.push_back(ft::variant_from_letter(c));
    }
    if (out.empty()) throw ft::ValidationError("--models selected no variant");
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ft::Error("cannot write file: " + path);
    f << content;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file(out_path, content);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ft::ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct ModelSource {
    std::string reference; // "paper-eq4-eq5"
    std::string fit_report;
    std::string fit_variant = "B";
};

void add_model_source_flags(CLI::App* cmd, ModelSource& src) {
    cmd->add_option("--reference-model", src.reference,
                    "use a built-in reference model (paper-eq4-eq5)");
    cmd->add_option("--fit", src.fit_report, "load models from a fit report JSON");
    cmd->add_option("--fit-variant", src.fit_variant,
                    "variant to take from the fit report (default B)");
}

std::pair<ft::FoRModel, ft::TemporalModel> resolve_models(
    const ModelSource& src, const CommonOpts& o, const ft::Dataset& d) {
    if (!src.reference.empty()) {
        if (src.reference != "paper-eq4-eq5")
            throw ft::ValidationError("unknown reference model: " + src.reference);
        return {ft::reference_for_model(), ft::reference_temporal_model()};
    }
    if (!src.fit_report.empty()) {
        ft::json j = ft::json::parse(read_file(src.fit_report));
        for (const auto& vj : j.at("variants")) {
            if (vj.at("variant").get<std::string>() == src.fit_variant &&
                vj.contains("fit")) {
                return {ft::for_model_from_json(vj.at("fit").at("for_model")),
                        ft::temporal_from_json(vj.at("fit").at("temporal"))};
            }
        }
        throw ft::ValidationError("fit report has no successful variant " +
                                  src.fit_variant);
    }
    // refit from the data
    ft::Variant v = parse_models(o.models).front();
    ft::FitResult res = ft::fit(d, v, make_config(o));
    return {res.for_model, res.temporal};
}

int cmd_fit(const CommonOpts& o, const std::string& residuals_csv_path,
            const std::string& table_csv_path, bool ranking_only) {
    ft::Dataset d = load_data(o);
    ft::FitConfig cfg = make_config(o);
    ft::BicMode mode = ft::bic_mode_from_name(o.bic_mode);
    auto wanted = parse_models(o.models);

    std::vector<ft::VariantOutcome> outcomes;
    if (wanted.size() == 5) {
        outcomes = ft::fit_all(d, cfg);
    } else {
        for (ft::Variant v : wanted) {
            ft::VariantOutcome oc;
            oc.variant = v;
            oc.result = ft::fit(d, v, cfg); // single-variant errors are fatal
            outcomes.push_back(std::move(oc));
        }
    }
    auto scores = ft::score_all(d, outcomes, cfg);
    auto ranking = ft::rank(scores, mode);

    std::cerr << ft::summary_text(d.schema(), outcomes, scores, ranking, mode);
    if (!ranking_only) {
        ft::json report = ft::run_report(d, cfg, mode, outcomes, scores, ranking);
        emit(o.out, ft::dump_json(report));
    }
    if (!residuals_csv_path.empty()) {
        for (const auto& oc : outcomes)
            if (oc.result) {
                write_file(residuals_csv_path, ft::residuals_csv(*oc.result));
                break;
            }
    }
    if (!table_csv_path.empty())
        write_file(table_csv_path,
                   ft::summary_csv(d.schema(), outcomes, scores, mode));
    return 0;
}

int cmd_backtest(const CommonOpts& o) {
    ft::Dataset d = load_data(o);
    ft::FitConfig cfg = make_config(o);
    ft::json out;
    out["schema_version"] = ft::report_schema_version;
    ft::json per_variant = ft::json::array();
    for (ft::Variant v : parse_models(o.models)) {
        ft::json vj;
        vj["variant"] = std::string(1, ft::variant_letter(v));
        try {
            ft::HindcastReport hr = ft::hindcast_mape(d, v, cfg);
            ft::json windows = ft::json::array();
            for (const auto& w : hr.windows)
                windows.push_back({{"train_cutoff", w.train_cutoff},
                                   {"eval_lo", w.eval_lo},
                                   {"eval_hi", w.eval_hi},
                                   {"mape", w.mape},
                                   {"n_train", w.n_train},
                                   {"n_eval", w.n_eval}});
            vj["mape_avg"] = hr.mape_avg;
            vj["windows"] = windows;
        } catch (const ft::Error& e) {
            vj["error"] = e.what();
        }
        per_variant.push_back(std::move(vj));
    }
    out["backtest"] = per_variant;
    emit(o.out, ft::dump_json(out));
    return 0;
}

int cmd_forecast(const CommonOpts& o, const ModelSource& src, double horizon,
                 const std::string& scenario_path,
                 std::optional<double> max_observed) {
    ft::Dataset d = load_data(o);
    auto [for_model, temporal] = resolve_models(src, o, d);

    ft::GapReport g;
    if (max_observed) {
        g.horizon_year = horizon;
        g.predicted_log10_for = ft::extrapolate(temporal, horizon);
        g.max_observed_log10_for = *max_observed;
        g.gap = g.predicted_log10_for - g.max_observed_log10_for;
        g.extrapolation_warning = ft::extrapolation_distance_warning(d, horizon);
    } else {
        g = ft::gap_to_best(d, for_model, temporal, horizon);
    }
    if (!scenario_path.empty()) {
        ft::Scenario s = ft::load_scenario(scenario_path, d.schema());
        g.scenario_increments =
            ft::scenario_increments(for_model, d.schema(), s, &g.scenario_total);
        g.coverage_ratio = g.gap != 0.0 ? g.scenario_total / g.gap : 0.0;
    }
    std::cerr << ft::gap_report_text(g);
    emit(o.out, ft::dump_json(ft::to_json(g)));
    return 0;
}

int cmd_portfolio(const CommonOpts& o, const ModelSource& src,
                  const std::string& scenario_path) {
    ft::Dataset d = load_data(o);
    auto [for_model, temporal] = resolve_models(src, o, d);
    (void)temporal;
    if (scenario_path.empty())
        throw ft::ValidationError("portfolio needs --scenario");
    ft::Scenario s = ft::load_scenario(scenario_path, d.schema());
    double total = 0.0;
    auto incs = ft::scenario_increments(for_model, d.schema(), s, &total);
    ft::json out;
    out["schema_version"] = ft::report_schema_version;
    out["scenario"] = s.name;
    ft::json rows = ft::json::array();
    for (const auto& inc : incs)
        rows.push_back({{"attribute", inc.attribute},
                        {"multiplier", inc.multiplier},
                        {"increment", inc.increment}});
    out["increments"] = rows;
    out["total"] = total;
    emit(o.out, ft::dump_json(out));
    return 0;
}

int cmd_synth(int n, double sigma, std::uint64_t seed, const std::string& out) {
    ft::SynthSpec spec = ft::default_synth_spec(n, sigma, seed);
    ft::Dataset d = ft::generate(spec);
    std::string csv = ft::to_csv(d);
    std::string path = out.empty() ? "synthetic.csv" : out;
    write_file(path, csv);
    ft::json truth;
    truth["schema_version"] = ft::report_schema_version;
    truth["seed"] = seed;
    truth["n_points"] = n;
    truth["noise_sigma"] = sigma;
    ft::GaugeRecord g{1.0, 0.0, spec.truth_for.alphas[0], 1200.0, 1.0};
    truth["truth_for"] = ft::to_json(spec.truth_for, g);
    truth["truth_temporal"] = ft::to_json(spec.truth_temporal);
    std::string sidecar = path;
    auto dot = sidecar.rfind(".csv");
    if (dot != std::string::npos) sidecar = sidecar.substr(0, dot);
    write_file(sidecar + ".truth.json", ft::dump_json(truth));
    std::cerr << "wrote " << path << " and " << sidecar << ".truth.json\n";
    return 0;
}

int cmd_plot(const CommonOpts& o, const ModelSource& src, double horizon,
             bool scatter_only, const std::string& out_prefix) {
    ft::Dataset d = load_data(o);
    std::string prefix = out_prefix.empty() ? "plot" : out_prefix;

    // Fig-1 style: muzzle kinetic energy vs year.
    std::vector<ft::XY> energy;
    for (const auto& rec : d.records())
        energy.push_back({rec.year, ft::muzzle_energy(rec)});
    write_file(prefix + "_energy.csv", ft::series_csv("year", "energy_j", energy));
    write_file(prefix + "_energy.svg",
               ft::render_svg("Muzzle kinetic energy over time", "year",
                              "energy (J)", {{energy, false, "#b03a2e", ""}}));

    // Fig-2 style: observed log10 FoR scatter plus the fitted curve.
    std::vector<ft::XY> points, curve;
    if (!scatter_only || !d.empty()) {
        auto [for_model, temporal] = resolve_models(src, o, d);
        for (const auto& rec : d.records())
            points.push_back({rec.year, ft::eval_log10(for_model, rec)});
        if (!scatter_only) {
            double lo = d.empty() ? o.anchor_year : std::floor(d.records().front().year);
            double hi = horizon > 0 ? horizon
                                    : (d.empty() ? lo : d.records().back().year);
            for (double y = lo; y <= hi + 0.5; y += 1.0)
                curve.push_back({y, temporal.eval(y)});
        }
    }
    write_file(prefix + "_for_points.csv",
               ft::series_csv("year", "log10_for", points));
    write_file(prefix + "_for_curve.csv", ft::series_csv("year", "curve", curve));
    std::vector<ft::PlotSeries> series;
    series.push_back({points, false, "#1f6fb4", "observed"});
    if (!curve.empty()) series.push_back({curve, true, "#2e8b57", "fitted"});
    write_file(prefix + "_for.svg",
               ft::render_svg("log10 FoR over time", "year", "log10 FoR", series));
    std::cerr << "wrote " << prefix << "_{for,energy}.{csv,svg}\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fortrend: power-law composite index + temporal growth law "
                 "fitting, forecasting and backtesting"};
    app.require_subcommand(1);
    app.set_version_flag("--version",
                         std::string(ft::tool_name) + " " + ft::tool_version);

    CommonOpts fit_opts, rank_opts, back_opts, fc_opts, pf_opts, plot_opts;
    std::string residuals_csv_path, table_csv_path;
    ModelSource fc_src, pf_src, plot_src;
    double fc_horizon = ft::reference_horizon_year, plot_horizon = 0.0;
    std::string fc_scenario, pf_scenario, synth_out;
    std::optional<double> fc_max_observed;
    int synth_n = 120;
    double synth_sigma = 0.0;
    std::uint64_t synth_seed = 0;
    bool plot_scatter_only = false;

    auto* fit_cmd = app.add_subcommand(
        "fit", "jointly fit the composite index and temporal laws");
    add_fit_flags(fit_cmd, fit_opts);
    fit_cmd->add_option("--residuals-csv", residuals_csv_path,
                        "write the first fitted variant's residual table");
    fit_cmd->add_option("--table-csv", table_csv_path,
                        "write the summary-table CSV");

    auto* rank_cmd =
        app.add_subcommand("rank", "fit all variants and print the ranking");
    add_fit_flags(rank_cmd, rank_opts);

    auto* back_cmd = app.add_subcommand(
        "backtest", "three-window hindcast MAPE protocol");
    add_fit_flags(back_cmd, back_opts);

    auto* fc_cmd = app.add_subcommand("forecast",
                                      "extrapolate and assess the FoR gap");
    add_fit_flags(fc_cmd, fc_opts);
    add_model_source_flags(fc_cmd, fc_src);
    fc_cmd->add_option("--horizon", fc_horizon, "forecast year (default 2050)");
    fc_cmd->add_option("--scenario", fc_scenario, "scenario JSON file");
    double mo = 0.0;
    fc_cmd->add_option_function<double>(
        "--max-observed", [&fc_max_observed](double v) { fc_max_observed = v; },
        "override the best observed log10 FoR");
    (void)mo;

    auto* pf_cmd = app.add_subcommand(
        "portfolio", "scenario increments only (no extrapolation)");
    add_fit_flags(pf_cmd, pf_opts);
    add_model_source_flags(pf_cmd, pf_src);
    pf_cmd->add_option("--scenario", pf_scenario, "scenario JSON file")
        ->required();

    auto* synth_cmd = app.add_subcommand(
        "synth", "generate a synthetic history from the reference truth");
    synth_cmd->add_option("--n", synth_n, "number of points (default 120)");
    synth_cmd->add_option("--sigma", synth_sigma, "log10 noise sigma");
    synth_cmd->add_option("--seed", synth_seed, "RNG seed");
    synth_cmd->add_option("--out", synth_out, "output CSV path");

    auto* plot_cmd =
        app.add_subcommand("plot", "emit SVG charts plus CSV point dumps");
    add_fit_flags(plot_cmd, plot_opts);
    add_model_source_flags(plot_cmd, plot_src);
    plot_cmd->add_option("--horizon", plot_horizon,
                         "extend the fitted curve to this year");
    plot_cmd->add_flag("--scatter-only", plot_scatter_only,
                       "skip the fitted curve overlay");

    CLI11_PARSE(app, argc, argv);

    try {
        if (fit_cmd->parsed())
            return cmd_fit(fit_opts, residuals_csv_path, table_csv_path, false);
        if (rank_cmd->parsed()) return cmd_fit(rank_opts, "", "", true);
        if (back_cmd->parsed()) return cmd_backtest(back_opts);
        if (fc_cmd->parsed())
            return cmd_forecast(fc_opts, fc_src, fc_horizon, fc_scenario,
                                fc_max_observed);
        if (pf_cmd->parsed()) return cmd_portfolio(pf_opts, pf_src, pf_scenario);
        if (synth_cmd->parsed())
            return cmd_synth(synth_n, synth_sigma, synth_seed, synth_out);
        if (plot_cmd->parsed())
            // for plot, --out is the output path prefix
            return cmd_plot(plot_opts, plot_src, plot_horizon,
                            plot_scatter_only, plot_opts.out);
    } catch (const ft::DegenerateFitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const ft::NoFitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const ft::InsufficientDataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const ft::GaugeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const ft::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return 0;
}
