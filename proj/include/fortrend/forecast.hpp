#ifndef FORTREND_FORECAST_HPP
#define FORTREND_FORECAST_HPP

#include <string>
#include <vector>

#include "fortrend/dataset.hpp"
#include "fortrend/formodel.hpp"
#include "fortrend/temporal.hpp"

namespace fortrend {

/// An R&D scenario: one multiplicative change per attribute (1.0 = no
/// change). Multiplicative attribute changes add in log10 FoR.
struct Scenario {
    std::string name;
    std::vector<double> multipliers;
    std::string rationale;
};

struct ScenarioIncrement {
    std::string attribute;
    double multiplier = 1.0;
    double increment = 0.0; // alpha_j * log10(multiplier_j)
};

struct GapReport {
    double horizon_year = 0.0;
    double predicted_log10_for = 0.0;
    double max_observed_log10_for = 0.0;
    std::string best_record;
    double gap = 0.0; // predicted - max_observed
    std::vector<ScenarioIncrement> scenario_increments;
    double scenario_total = 0.0;
    double coverage_ratio = 0.0; // scenario_total / gap
    bool extrapolation_warning = false;
};

/// eval(tm, horizon); pure extrapolation, no uncertainty band.
double extrapolate(const TemporalModel& tm, double horizon);

/// True when the horizon exceeds the last data year by more than the data
/// span (a plumbing guard for far extrapolations).
bool extrapolation_distance_warning(const Dataset& d, double horizon);

/// Gap between the extrapolated curve at `horizon` and the best log10 FoR
/// observed in the data under model m. Throws on an empty dataset.
GapReport gap_to_best(const Dataset& d, const FoRModel& m,
                      const TemporalModel& tm, double horizon);

/// Per-attribute log10 FoR increments of a scenario under model m; total is
/// their sum. Throws ValidationError on a non-positive multiplier.
std::vector<ScenarioIncrement> scenario_increments(const FoRModel& m,
                                                   const AttributeSchema& schema,
                                                   const Scenario& s,
                                                   double* total = nullptr);

/// Scenario JSON: {"name", "multipliers": {attr: value, ...}, "rationale"}.
Scenario load_scenario(const std::string& path, const AttributeSchema& schema);
Scenario parse_scenario(const std::string& json_text,
                        const AttributeSchema& schema);

} // namespace fortrend

#endif
