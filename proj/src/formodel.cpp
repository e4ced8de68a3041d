#include "fortrend/formodel.hpp"

#include <cmath>

#include "fortrend/errors.hpp"

namespace fortrend {

double eval_log10(const FoRModel& m, const TechRecord& r) {
    if (m.alphas.size() != r.attributes.size())
        throw ValidationError("model has " + std::to_string(m.alphas.size()) +
                              " exponents but record '" + r.name + "' has " +
                              std::to_string(r.attributes.size()) +
                              " attributes");
    double acc = m.log10_k;
    for (std::size_t j = 0; j < m.alphas.size(); ++j)
        acc += m.alphas[j] * std::log10(r.attributes[j]);
    return acc;
}

std::pair<FoRModel, TemporalModel> rescale_gauge(const FoRModel& m,
                                                 const TemporalModel& coupled,
                                                 double target_alpha1) {
    if (m.alphas.empty() || m.alphas[0] == 0.0)
        throw GaugeError("gauge-degenerate model: alpha1 is zero");
    if (target_alpha1 == 0.0)
        throw GaugeError("gauge target alpha1 must be nonzero");
    double c = target_alpha1 / m.alphas[0];
    FoRModel out;
    out.log10_k = m.log10_k * c;
    out.alphas.reserve(m.alphas.size());
    for (double a : m.alphas) out.alphas.push_back(a * c);
    return {out, apply_gauge(coupled, c)};
}

double KineticForm::eval(const TechRecord& r) const {
    // small-arms attribute order: V, D, M, R
    double v = r.attributes[0], d = r.attributes[1];
    double mass = r.attributes[2], rate = r.attributes[3];
    double energy = 0.5 * mass * v * v;
    return coefficient * std::pow(energy, energy_exponent) *
           std::pow(d, range_exp) * std::pow(mass, mass_correction_exp) *
           std::pow(rate, rate_exp);
}

KineticForm to_kinetic_energy_form(const FoRModel& m) {
    if (m.alphas.size() != 4)
        throw FormUnavailableError(
            "kinetic-energy form requires the 4-attribute (V, D, M, R) schema");
    if (std::abs(m.alphas[0] - 2.0) > 1e-9)
        throw FormUnavailableError(
            "kinetic-energy form requires alpha1 = 2.0 exactly, got " +
            std::to_string(m.alphas[0]));
    KineticForm f;
    // k V^2 D^a2 M^a3 R^a4 = (2k) (0.5 M V^2) D^a2 M^(a3-1) R^a4
    f.coefficient = 2.0 * std::pow(10.0, m.log10_k);
    f.energy_exponent = 1.0;
    f.range_exp = m.alphas[1];
    f.mass_correction_exp = m.alphas[2] - 1.0;
    f.rate_exp = m.alphas[3];
    return f;
}

double muzzle_energy(const TechRecord& r) {
    return 0.5 * r.attributes[2] * r.attributes[0] * r.attributes[0];
}

} // namespace fortrend
