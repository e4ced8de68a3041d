#include "fortrend/synthgen.hpp"

#include <cmath>
#include <random>

#include "fortrend/errors.hpp"
#include "fortrend/reference.hpp"

namespace fortrend {

SynthSpec default_synth_spec(int n_points, double noise_sigma,
                             std::uint64_t seed) {
    SynthSpec spec;
    spec.truth_for = reference_for_model();
    spec.truth_temporal = reference_temporal_model();
    spec.schema = AttributeSchema::small_arms();
    spec.n_points = n_points;
    spec.year_lo = 1200.0;
    spec.year_hi = 2015.0;
    // log10 ranges loosely bracketing the historical sample magnitudes:
    // velocity 10..1e3 m/s (solved), range 10..1e3 m, mass 1e-3..1 kg,
    // rate 0.1..1e3 per minute.
    spec.attr_log10_ranges = {{1.0, 3.0}, {1.0, 3.0}, {-3.0, 0.0}, {-1.0, 3.0}};
    spec.solved_attribute = 0;
    spec.noise_sigma = noise_sigma;
    spec.seed = seed;
    return spec;
}

Dataset generate(const SynthSpec& spec) {
    const std::size_t m = spec.schema.count();
    if (spec.truth_for.alphas.size() != m ||
        spec.attr_log10_ranges.size() != m)
        throw ValidationError("synth spec dimensions do not match the schema");
    if (spec.solved_attribute >= m)
        throw ValidationError("solved_attribute index out of range");
    double alpha_s = spec.truth_for.alphas[spec.solved_attribute];
    if (alpha_s == 0.0)
        throw ValidationError(
            "solved attribute must have a nonzero exponent in the truth model");

    // Two independent streams so the sampled structure (years, free
    // attributes) is identical across noise levels at a fixed seed.
    std::mt19937_64 rng(spec.seed);
    std::mt19937_64 noise_rng(spec.seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> year_dist(spec.year_lo, spec.year_hi);
    std::normal_distribution<double> noise(0.0, 1.0);

    std::vector<TechRecord> records;
    records.reserve(static_cast<std::size_t>(spec.n_points));
    for (int i = 0; i < spec.n_points; ++i) {
        TechRecord rec;
        char buf[32];
        std::snprintf(buf, sizeof(buf), "synthetic-%03d", i + 1);
        rec.name = buf;
        rec.year = year_dist(rng);
        double target = spec.truth_temporal.eval(rec.year);
        if (spec.noise_sigma > 0.0)
            target += spec.noise_sigma * noise(noise_rng);

        // Sample the free attributes log-uniformly, then solve the remaining
        // one in log space so log10 f(x) hits the target exactly.
        std::vector<double> logs(m, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            if (j == spec.solved_attribute) continue;
            auto [lo, hi] = spec.attr_log10_ranges[j];
            std::uniform_real_distribution<double> attr_dist(lo, hi);
            logs[j] = attr_dist(rng);
        }
        double partial = spec.truth_for.log10_k;
        for (std::size_t j = 0; j < m; ++j)
            if (j != spec.solved_attribute)
                partial += spec.truth_for.alphas[j] * logs[j];
        logs[spec.solved_attribute] = (target - partial) / alpha_s;

        rec.attributes.resize(m);
        for (std::size_t j = 0; j < m; ++j)
            rec.attributes[j] = std::pow(10.0, logs[j]);
        records.push_back(std::move(rec));
    }
    return Dataset(spec.schema, std::move(records),
                   "synthetic (seed " + std::to_string(spec.seed) + ")");
}

} // namespace fortrend
