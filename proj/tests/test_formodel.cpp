#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fortrend/errors.hpp"
#include "fortrend/formodel.hpp"
#include "fortrend/reference.hpp"

using namespace fortrend;

namespace {

FoRModel study_model() {
    // the published constants with the rounded intercept used in the text
    return FoRModel{-5.96, {2.0, 2.35, 0.61, 0.39}};
}

double eval_by_hand(const FoRModel& m, const TechRecord& r) {
    double s = m.log10_k;
    for (std::size_t i = 0; i < r.attributes.size(); ++i)
        s += m.alphas[i] * std::log10(r.attributes[i]);
    return s;
}

} // namespace

TEST_CASE("eval_log10 matches independent arithmetic on the study rows") {
    FoRModel m = study_model();
    TechRecord m27{"M27 assault rifle", 2008, {900, 550, 0.0041, 700}};
    TechRecord longbow{"Longbow", 1180, {47, 75, 0.1023, 5}};
    CHECK(eval_log10(m, m27) ==
          doctest::Approx(eval_by_hand(m, m27)).epsilon(1e-15));
    CHECK(eval_log10(m, m27) == doctest::Approx(6.042).epsilon(2e-4));
    CHECK(eval_log10(m, longbow) == doctest::Approx(1.459).epsilon(2e-4));
}

TEST_CASE("all-ones attributes leave only the intercept") {
    TechRecord ones{"unit", 1500, {1, 1, 1, 1}};
    CHECK(eval_log10(study_model(), ones) == doctest::Approx(-5.96));
    CHECK(std::abs(reference_for_model().log10_k - (-5.96)) < 5e-3);
}

TEST_CASE("eval_log10 rejects attribute-count mismatches") {
    CHECK_THROWS_AS(eval_log10(study_model(), {"short", 1500, {1, 2, 3}}),
                    ValidationError);
}

TEST_CASE("rescale_gauge doubles the half-gauge solution exactly") {
    FoRModel half{-2.98, {1.0, 1.175, 0.305, 0.195}};
    TemporalModel coupled{QuadExpLaw{1200.0, 4.135e-6, 0.5}};
    auto [m2, t2] = rescale_gauge(half, coupled, 2.0);
    CHECK(m2.log10_k == doctest::Approx(-5.96));
    CHECK(m2.alphas[0] == doctest::Approx(2.0));
    CHECK(m2.alphas[1] == doctest::Approx(2.35));
    CHECK(m2.alphas[2] == doctest::Approx(0.61));
    CHECK(m2.alphas[3] == doctest::Approx(0.39));
    CHECK(t2.as<QuadExpLaw>().curvature == doctest::Approx(8.27e-6));
    CHECK(t2.as<QuadExpLaw>().offset == doctest::Approx(1.0));
}

TEST_CASE("rescale_gauge scales model values by the same factor everywhere") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    FoRModel m{-4.0, {1.3, 0.8, -0.2, 0.5}};
    TemporalModel coupled{ExpLaw{0.002, -2.0}};
    auto [g, gt] = rescale_gauge(m, coupled, 2.0);
    double c = 2.0 / m.alphas[0];
    for (int i = 0; i < 30; ++i) {
        TechRecord r{"r", 1500, {u(rng), u(rng), u(rng), u(rng)}};
        CHECK(eval_log10(g, r) ==
              doctest::Approx(c * eval_log10(m, r)).epsilon(1e-12));
    }
    CHECK(gt.eval(1900.0) == doctest::Approx(c * coupled.eval(1900.0)));
    CHECK_THROWS_AS(rescale_gauge(FoRModel{0.0, {0.0, 1.0}}, coupled, 2.0),
                    GaugeError);
}

TEST_CASE("kinetic-energy rewrite reproduces the published coefficient") {
    KineticForm k = to_kinetic_energy_form(reference_for_model());
    CHECK(k.coefficient == doctest::Approx(2.2e-6).epsilon(1e-4));
    CHECK(std::abs(k.coefficient - 2.2e-6) < 1e-8);
    CHECK(k.energy_exponent == doctest::Approx(1.0));
    CHECK(k.range_exp == doctest::Approx(2.35));
    CHECK(std::abs(k.mass_correction_exp - (-0.39)) < 1e-9);
    CHECK(k.rate_exp == doctest::Approx(0.39));
}

TEST_CASE("the two model forms agree on every sample record") {
    FoRModel m = reference_for_model();
    KineticForm k = to_kinetic_energy_form(m);
    Dataset sample = builtin_sample();
    for (const auto& r : sample.records()) {
        double direct = std::pow(10.0, eval_log10(m, r));
        double viaKE = k.eval(r);
        CHECK(std::abs(viaKE - direct) <= 1e-12 * std::abs(direct));
    }
}

TEST_CASE("kinetic rewrite collapses a pure-energy model") {
    // alpha = (2, 0, 1, 0) with k = 1 is exactly FoR = M V^2 = 2 * (KE)
    FoRModel pure{0.0, {2.0, 0.0, 1.0, 0.0}};
    KineticForm k = to_kinetic_energy_form(pure);
    CHECK(k.coefficient == doctest::Approx(2.0));
    CHECK(k.mass_correction_exp == doctest::Approx(0.0));
    TechRecord r{"r", 1500, {10.0, 3.0, 0.5, 7.0}};
    CHECK(k.eval(r) == doctest::Approx(0.5 * 10.0 * 10.0 * 2.0 * 0.5));
}

TEST_CASE("kinetic rewrite requires the energy gauge") {
    CHECK_THROWS_AS(to_kinetic_energy_form(FoRModel{0.0, {1.0, 0.0, 0.0, 0.0}}),
                    FormUnavailableError);
    CHECK_THROWS_AS(to_kinetic_energy_form(FoRModel{0.0, {2.0, 0.0}}),
                    FormUnavailableError);
    // tolerance boundary: 1e-10 off is accepted, 1e-6 off is not
    CHECK_NOTHROW(to_kinetic_energy_form(
        FoRModel{0.0, {2.0 + 1e-10, 0.0, 1.0, 0.0}}));
    CHECK_THROWS_AS(
        to_kinetic_energy_form(FoRModel{0.0, {2.0 + 1e-6, 0.0, 1.0, 0.0}}),
        FormUnavailableError);
}

TEST_CASE("muzzle_energy matches the textbook formula") {
    TechRecord longbow{"Longbow", 1180, {47, 75, 0.1023, 5}};
    CHECK(muzzle_energy(longbow) ==
          doctest::Approx(0.5 * 0.1023 * 47.0 * 47.0).epsilon(1e-15));
    CHECK(muzzle_energy(longbow) == doctest::Approx(112.99).epsilon(1e-4));
}

TEST_CASE("eval_log10 ranking is invariant under positive gauge rescaling") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    FoRModel m{-3.0, {0.7, 1.1, 0.4, 0.2}};
    auto [g, gt] = rescale_gauge(m, TemporalModel{ExpLaw{}}, 2.0);
    (void)gt;
    for (int i = 0; i < 40; ++i) {
        TechRecord a{"a", 1500, {u(rng), u(rng), u(rng), u(rng)}};
        TechRecord b{"b", 1500, {u(rng), u(rng), u(rng), u(rng)}};
        CHECK((eval_log10(m, a) < eval_log10(m, b)) ==
              (eval_log10(g, a) < eval_log10(g, b)));
    }
}
