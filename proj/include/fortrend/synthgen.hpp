#ifndef FORTREND_SYNTHGEN_HPP
#define FORTREND_SYNTHGEN_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "fortrend/dataset.hpp"
#include "fortrend/formodel.hpp"
#include "fortrend/temporal.hpp"

namespace fortrend {

/// Ground truth and sampling plan for synthetic technology histories. One
/// attribute is solved (in log space) so every generated record satisfies
/// log10 f(x) = g(t) + eps exactly; the rest are sampled log-uniformly.
struct SynthSpec {
    FoRModel truth_for;
    TemporalModel truth_temporal;
    AttributeSchema schema;
    int n_points = 0;
    double year_lo = 1200.0;
    double year_hi = 2015.0;
    // log10-space (lo, hi) per attribute; the solved attribute's entry is
    // ignored.
    std::vector<std::pair<double, double>> attr_log10_ranges;
    std::size_t solved_attribute = 0;
    double noise_sigma = 0.0; // log10 space
    std::uint64_t seed = 0;
};

/// Spec with the study's reference constants as truth, velocity solved, and
/// ranges loosely bracketing the historical sample magnitudes.
SynthSpec default_synth_spec(int n_points, double noise_sigma,
                             std::uint64_t seed);

/// Deterministic for a fixed seed. Throws ValidationError when the solved
/// attribute's exponent is zero.
Dataset generate(const SynthSpec& spec);

} // namespace fortrend

#endif
