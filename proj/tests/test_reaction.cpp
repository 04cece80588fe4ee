#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heleshaw/reaction.hpp"

using namespace heleshaw;

namespace {

GridPtr grid_dd(int n = 20) {
    return StructuredGrid::make_1d(1.0, n, BoundaryTag::Dirichlet, BoundaryTag::Dirichlet);
}

} // namespace

TEST_CASE("conditions G1-G5: zero reaction with zero divergence passes with zero margins") {
    auto g = grid_dd();
    auto rep = check_conditions(ReactionTerm::zero(), VelocityField::zero(g),
                                SamplingSpec::over_horizon(1.0));
    CHECK(rep.all_passed());
    CHECK(rep.margin_g1 == 0.0);
    CHECK(rep.margin_g2 == doctest::Approx(0.0));
    CHECK(rep.margin_g3 == doctest::Approx(0.0));
    CHECK(rep.margin_g4 == doctest::Approx(0.0));
    CHECK(rep.margin_g5 == doctest::Approx(0.0));
}

TEST_CASE("G2 for a decreasing reaction holds with zero modulus") {
    auto g = grid_dd();
    auto rep = check_conditions(ReactionTerm::linear_decay(1.0, 1.0), VelocityField::zero(g),
                                SamplingSpec::over_horizon(1.0));
    CHECK(rep.g2);
    CHECK(rep.margin_g2 >= 0.0);
}

TEST_CASE("G3 fails with margin -1 for g = 1 against zero divergence") {
    auto g = grid_dd();
    auto rep = check_conditions(ReactionTerm::constant(1.0), VelocityField::zero(g),
                                SamplingSpec::over_horizon(1.0));
    CHECK_FALSE(rep.g3);
    CHECK(rep.margin_g3 == doctest::Approx(-1.0));
    CHECK(rep.g4);   // 1 >= 0
    CHECK(rep.g5);   // g(0) = 1 >= 0
}

TEST_CASE("scale_reaction") {
    auto g1 = scale_reaction(ReactionTerm::linear_decay(1.0, 1.0), 1.0);
    CHECK(g1(0.0, 0, 0.3) == doctest::Approx(0.7));

    auto gh = scale_reaction(ReactionTerm::linear_decay(1.0, 1.0), 0.5);
    CHECK(gh(0.0, 0, 0.25) == doctest::Approx(0.25));   // 0.5 (1 - 0.5)

    auto gc = scale_reaction(ReactionTerm::constant(2.0), 0.25);
    CHECK(gc(0.0, 0, -0.7) == doctest::Approx(0.5));

    CHECK_THROWS_AS(scale_reaction(ReactionTerm::zero(), 0.0), InvalidParameterError);
    CHECK_THROWS_AS(scale_reaction(ReactionTerm::zero(), -1.0), InvalidParameterError);
}

TEST_CASE("scaling preserves the G2 certificate") {
    auto g = grid_dd();
    auto v = VelocityField::zero(g);
    const auto samples = SamplingSpec::over_horizon(1.0, 5, 17);

    // globally one-sided-Lipschitz terms keep the certificate on the full
    // state interval
    auto decay = ReactionTerm::linear_decay(0.7, 0.9);
    CHECK(check_conditions(decay, v, samples).g2);
    for (double alpha : {1.0, 0.5, 0.125}) {
        const auto scaled = scale_reaction(decay, alpha);
        CHECK(scaled.r_modulus(0.0) == doctest::Approx(decay.r_modulus(0.0)));
        CHECK(check_conditions(scaled, v, samples).g2);
    }

    // a term certified only on [-1, 1] keeps the certificate on the range
    // the scaling actually visits, [-alpha, alpha]
    auto base = ReactionTerm::logistic(0.4);
    CHECK(check_conditions(base, v, samples).g2);
    for (double alpha : {0.5, 0.25}) {
        const auto scaled = scale_reaction(base, alpha);
        SamplingSpec restricted = samples;
        restricted.r_min = -alpha;
        restricted.r_max = alpha;
        CHECK(check_conditions(scaled, v, restricted).g2);
    }
}

TEST_CASE("G2 sampling is stable under r-grid refinement") {
    auto g = grid_dd(5);
    auto v = VelocityField::zero(g);
    auto term = ReactionTerm::logistic(0.7);
    bool passed_fine = false;
    for (int r_samples : {33, 17, 9, 5}) {
        SamplingSpec spec = SamplingSpec::over_horizon(1.0, 3, r_samples);
        const auto rep = check_conditions(term, v, spec);
        if (r_samples == 33) passed_fine = rep.g2;
        // passing at a fine resolution implies passing at every coarser one
        if (passed_fine) CHECK(rep.g2);
    }
}

TEST_CASE("envelope check") {
    auto g = grid_dd(5);
    const auto samples = SamplingSpec::over_horizon(1.0, 3, 21);
    CHECK(envelope_check(ReactionTerm::zero(), g, samples));
    CHECK(envelope_check(ReactionTerm::linear_decay(1.0, 1.0), g, samples));

    // adversarial: increasing reaction with a falsely declared zero modulus
    ReactionTerm bad([](double, int, double r) { return 10.0 * r; }, [](double) { return 0.0; },
                     0.0, 10.0);
    CHECK_FALSE(envelope_check(bad, g, samples));
    CHECK_FALSE(check_conditions(bad, VelocityField::zero(g), samples).g2);
}

TEST_CASE("table reaction interpolates and exposes declared modulus") {
    auto term = ReactionTerm::table({-1.0, 0.0, 1.0}, {2.0, 1.0, 0.0}, 0.0);
    CHECK(term(0.0, 0, -0.5) == doctest::Approx(1.5));
    CHECK(term(0.0, 0, 0.5) == doctest::Approx(0.5));
    CHECK(term.r_modulus(0.5) == 0.0);
    CHECK_THROWS_AS(ReactionTerm::table({0.0}, {1.0}, 0.0), InvalidParameterError);
    CHECK_THROWS_AS(ReactionTerm::table({1.0, 0.0}, {0.0, 1.0}, 0.0), InvalidParameterError);
}
