#ifndef FORTREND_FITJOINT_HPP
#define FORTREND_FITJOINT_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fortrend/dataset.hpp"
#include "fortrend/formodel.hpp"
#include "fortrend/temporal.hpp"

namespace fortrend {

struct ProfileGrid {
    double lo = 0.0;
    double hi = 1.0;
    int steps = 3;
    bool log_spaced = false;
};

struct FitConfig {
    double gauge_alpha1 = 2.0;
    double anchor_year = 1200.0;
    double anchor_value = 1.0; // log10 space
    double breakpoint = 1832.0;
    std::optional<double> pin_vertex; // constrain model B's vertex year

    // Profile grids for the nonlinear variants; bracketed to cover
    // 800-year dynamics.
    ProfileGrid cubic_inflection_grid{-1000.0, 1400.0, 481, false};
    ProfileGrid double_exp_rate_grid{1e-4, 0.031622776601683794, 200, true};
    int refine_iters = 40; // golden-section refinement rounds
};

struct ResidualRow {
    double year = 0.0;
    double observed_log10_for = 0.0;
    double predicted_log10_for = 0.0;
    double residual = 0.0;
};

/// Record of the conventions applied after the raw alpha1 = 1 solve.
struct GaugeRecord {
    double scale = 1.0;        // c = gauge_alpha1 / 1
    double anchor_shift = 0.0; // additive shift moved into log10_k
    double gauge_alpha1 = 2.0;
    double anchor_year = 1200.0;
    double anchor_value = 1.0;
};

struct FitResult {
    FoRModel for_model;
    TemporalModel temporal;
    std::vector<ResidualRow> residuals;
    double sse = 0.0;
    int n = 0;
    int param_count = 0; // shared FoR params + temporal shape params
    bool converged = false;
    GaugeRecord gauge_applied;
};

/// Free parameters of the gauge-fixed joint model:
/// (n_attr - 1) exponents + 1 combined constant + shape params.
int joint_param_count(std::size_t n_attr, Variant v);

/// Jointly fits the FoR exponents and one temporal law by least squares in
/// log10 space, with alpha1 pinned to 1 during the solve, then rescaled to
/// cfg.gauge_alpha1 and anchored per cfg. Nonlinear variants (C, D) use a
/// profile search with golden-section refinement.
FitResult fit(const Dataset& d, Variant variant, const FitConfig& cfg = {});

struct VariantOutcome {
    Variant variant = Variant::A;
    std::optional<FitResult> result;
    std::string error; // empty when result is set
};

/// Fits all five variants; per-variant failures are carried in the outcome
/// list. Throws only if every variant fails.
std::vector<VariantOutcome> fit_all(const Dataset& d, const FitConfig& cfg = {});

} // namespace fortrend

#endif
