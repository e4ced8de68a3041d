#include "fortrend/forecast.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fortrend/errors.hpp"

namespace fortrend {

double extrapolate(const TemporalModel& tm, double horizon) {
    if (!std::isfinite(horizon))
        throw ValidationError("forecast horizon must be finite");
    return tm.eval(horizon);
}

bool extrapolation_distance_warning(const Dataset& d, double horizon) {
    if (d.empty()) return false;
    double first = d.records().front().year;
    double last = d.records().back().year;
    return horizon > last + (last - first);
}

GapReport gap_to_best(const Dataset& d, const FoRModel& m,
                      const TemporalModel& tm, double horizon) {
    if (d.empty())
        throw ValidationError("gap_to_best needs a non-empty dataset");
    GapReport g;
    g.horizon_year = horizon;
    g.predicted_log10_for = extrapolate(tm, horizon);
    bool first = true;
    for (const auto& rec : d.records()) {
        double v = eval_log10(m, rec);
        if (first || v > g.max_observed_log10_for) {
            g.max_observed_log10_for = v;
            g.best_record = rec.name;
            first = false;
        }
    }
    g.gap = g.predicted_log10_for - g.max_observed_log10_for;
    g.extrapolation_warning = extrapolation_distance_warning(d, horizon);
    return g;
}

std::vector<ScenarioIncrement> scenario_increments(const FoRModel& m,
                                                   const AttributeSchema& schema,
                                                   const Scenario& s,
                                                   double* total) {
    if (s.multipliers.size() != schema.count() ||
        s.multipliers.size() != m.alphas.size())
        throw ValidationError("scenario multiplier count does not match schema");
    std::vector<ScenarioIncrement> out;
    double acc = 0.0;
    for (std::size_t j = 0; j < s.multipliers.size(); ++j) {
        double mult = s.multipliers[j];
        if (!(mult > 0.0))
            throw ValidationError("scenario multiplier for '" + schema.names[j] +
                                  "' must be > 0");
        ScenarioIncrement inc;
        inc.attribute = schema.names[j];
        inc.multiplier = mult;
        inc.increment = m.alphas[j] * std::log10(mult);
        acc += inc.increment;
        out.push_back(std::move(inc));
    }
    if (total) *total = acc;
    return out;
}

Scenario parse_scenario(const std::string& json_text,
                        const AttributeSchema& schema) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("scenario JSON: ") + e.what());
    }
    Scenario s;
    s.name = j.value("name", "");
    s.rationale = j.value("rationale", "");
    if (!j.contains("multipliers") || !j["multipliers"].is_object())
        throw ParseError("scenario JSON needs a 'multipliers' object");
    const auto& mults = j["multipliers"];
    // every key must name a schema attribute (full identifier or its bare
    // stem, "velocity_mps" or "velocity"); unmentioned attributes default to
    // an unchanged x1.0
    for (const auto& name : schema.names) {
        std::string stem = name.substr(0, name.find('_'));
        if (mults.contains(name))
            s.multipliers.push_back(mults[name].get<double>());
        else if (mults.contains(stem))
            s.multipliers.push_back(mults[stem].get<double>());
        else
            s.multipliers.push_back(1.0);
    }
    for (const auto& [key, value] : mults.items()) {
        bool known = false;
        for (const auto& name : schema.names)
            known = known || key == name || key == name.substr(0, name.find('_'));
        if (!known)
            throw ValidationError("scenario multiplier '" + key +
                                  "' matches no attribute");
    }
    return s;
}

Scenario load_scenario(const std::string& path, const AttributeSchema& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), schema);
}

} // namespace fortrend
