#include "fortrend/reference.hpp"

#include <cmath>

namespace fortrend {

FoRModel reference_for_model() {
    FoRModel m;
    m.log10_k = std::log10(1.1e-6);
    m.alphas = {2.0, 2.35, 0.61, 0.39};
    return m;
}

TemporalModel reference_temporal_model() {
    return QuadExpLaw{1200.0, 8.27e-6, 1.0};
}

Scenario reference_scenario() {
    Scenario s;
    s.name = "2050 R&D directions";
    s.multipliers = {1.1, 1.7, 1.8, 1.0};
    s.rationale =
        "velocity +10%, effective range +70% (computerized fire control), "
        "projectile mass +80% (heavier round), rate of fire unchanged";
    return s;
}

} // namespace fortrend
