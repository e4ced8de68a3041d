#ifndef FORTREND_REFERENCE_HPP
#define FORTREND_REFERENCE_HPP

#include "fortrend/forecast.hpp"
#include "fortrend/formodel.hpp"
#include "fortrend/temporal.hpp"

namespace fortrend {

// The published small-arms constants ship as a named built-in reference
// model ("paper-eq4-eq5") so the forecasting workflow is reproducible
// without the full external dataset.

/// FoR = 1.1e-6 * V^2.0 * D^2.35 * M^0.61 * R^0.39.
FoRModel reference_for_model();

/// log10 FoR(t) = 1.0 + 8.27e-6 * (t - 1200)^2.
TemporalModel reference_temporal_model();

/// Best log10 FoR among known weapons as reported in the source study
/// (6.18). Derived from the full external dataset; not reproducible from
/// the bundled 8-row sample.
inline constexpr double reference_max_observed_log10_for = 6.18;

/// The study's 2050 R&D scenario: velocity x1.1, range x1.7, mass x1.8,
/// rate unchanged.
Scenario reference_scenario();

inline constexpr double reference_horizon_year = 2050.0;

} // namespace fortrend

#endif
