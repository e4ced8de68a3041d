#ifndef FORTREND_FORMODEL_HPP
#define FORTREND_FORMODEL_HPP

#include <utility>
#include <vector>

#include "fortrend/dataset.hpp"
#include "fortrend/temporal.hpp"

namespace fortrend {

/// Power-law composite FoR = k * prod_i x_i^alpha_i, stored in log10 space
/// (log10_k keeps k ~ 1e-6 well away from underflow).
struct FoRModel {
    double log10_k = 0.0;
    std::vector<double> alphas;
};

/// log10 f(x) = log10_k + sum_i alpha_i * log10(x_i).
double eval_log10(const FoRModel& m, const TechRecord& r);

/// Multiplies log10_k and every alpha by c = target_alpha1 / alpha1, and
/// applies the same factor to the coupled temporal model. The record
/// ranking by FoR is unchanged for c > 0.
std::pair<FoRModel, TemporalModel> rescale_gauge(const FoRModel& m,
                                                 const TemporalModel& coupled,
                                                 double target_alpha1);

/// FoR = coefficient * (0.5*M*V^2)^energy_exponent
///       * D^range_exp * M^mass_correction_exp * R^rate_exp
/// for the small-arms (V, D, M, R) attribute order.
struct KineticForm {
    double coefficient = 0.0;
    double energy_exponent = 1.0;
    double range_exp = 0.0;
    double mass_correction_exp = 0.0;
    double rate_exp = 0.0;

    double eval(const TechRecord& r) const;
};

/// Rewrites a 4-attribute model with alpha1 == 2 (tolerance 1e-9) so its
/// leading factor is the muzzle kinetic energy: coefficient = 2k,
/// mass_correction_exp = alpha3 - 1. Throws FormUnavailableError otherwise.
KineticForm to_kinetic_energy_form(const FoRModel& m);

/// Muzzle kinetic energy 0.5 * M * V^2 in joules (small-arms schema).
double muzzle_energy(const TechRecord& r);

} // namespace fortrend

#endif
