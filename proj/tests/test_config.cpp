#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heleshaw/config.hpp"

using namespace heleshaw;

namespace {

const char* kMinimal = R"(
[grid]
dimension = 1
n_x = 50
left = dirichlet
right = dirichlet
)";

} // namespace

TEST_CASE("minimal config parses with defaults filled") {
    auto cfg = parse_config_text(kMinimal);
    CHECK(cfg.grid.n_x == 50);
    CHECK(cfg.grid.extent_x == 1.0);
    CHECK(cfg.velocity.kind == "zero");
    CHECK(cfg.time.horizon == 1.0);
    CHECK(cfg.solver.tol == 1e-10);
    CHECK(cfg.verify.suite == "all");

    auto prob = build_problem(cfg);
    CHECK(prob.grid->cells(0) == 50);
    CHECK(prob.u0.max_norm() == 0.0);
    CHECK_FALSE(prob.reaction.has_value());
}

TEST_CASE("T not an integer multiple of tau is reported") {
    try {
        parse_config_text(std::string(kMinimal) + "\n[time]\nT = 1.0\ntau = 0.3\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        REQUIRE(e.violations.size() == 1);
        CHECK(e.violations[0].find("integer multiple") != std::string::npos);
    }
}

TEST_CASE("missing [grid] section and unknown keys are all reported at once") {
    try {
        parse_config_text("[solver]\ntol = 1e-8\nbogus = 3\n[nonsense]\nx = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        bool missing_grid = false, unknown_key = false, unknown_section = false;
        for (const auto& v : e.violations) {
            if (v.find("[grid]") != std::string::npos) missing_grid = true;
            if (v.find("bogus") != std::string::npos) unknown_key = true;
            if (v.find("nonsense") != std::string::npos) unknown_section = true;
        }
        CHECK(missing_grid);
        CHECK(unknown_key);
        CHECK(unknown_section);
    }
}

TEST_CASE("parse errors carry line numbers") {
    try {
        parse_config_text("[grid\nn_x = 10\n", "bad.ini");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        REQUIRE_FALSE(e.violations.empty());
        CHECK(e.violations[0].find("bad.ini:1") != std::string::npos);
    }
}

TEST_CASE("write/parse round trip is the identity") {
    auto cfg = parse_config_text(kMinimal);
    cfg.grid.n_x = 123;
    cfg.grid.extent_x = 2.375;
    cfg.velocity.kind = "linear";
    cfg.velocity.slope_x = 0.123456789012345;
    cfg.velocity.center_x = 1.0 / 3.0;
    cfg.initial.kind = "bump";
    cfg.initial.value = 0.85;
    cfg.source.kind = "box";
    cfg.source.value = 0.5;
    cfg.time.horizon = 0.7;
    cfg.time.tau = 0.7 / 64;
    cfg.solver.eps_end = 1e-9;
    cfg.verify.seed = 17;

    const std::string text = write_config(cfg);
    auto back = parse_config_text(text);
    CHECK(back == cfg);
    // and writing again is stable
    CHECK(write_config(back) == text);
}

TEST_CASE("reaction configs build evaluators") {
    auto cfg = parse_config_text(std::string(kMinimal) +
                                 "\n[reaction]\nkind = linear_decay\na = 1.0\nb = 1.0\n");
    auto prob = build_problem(cfg);
    REQUIRE(prob.reaction.has_value());
    CHECK((*prob.reaction)(0.0, 0, 0.25) == doctest::Approx(0.75));
    CHECK(prob.reaction->r_modulus(0.0) == 0.0);
}

TEST_CASE("refinement halves h, tau and the epsilon schedule jointly") {
    auto cfg = parse_config_text(kMinimal);
    auto base = build_problem(cfg, 0);
    auto fine = build_problem(cfg, 2);
    CHECK(fine.grid->cells(0) == 4 * base.grid->cells(0));
    CHECK(fine.tau == doctest::Approx(base.tau / 4));
    CHECK(fine.solver.eps_schedule.back() ==
          doctest::Approx(base.solver.eps_schedule.back() / 4));
}

TEST_CASE("invalid tags, kinds and ranges are rejected") {
    CHECK_THROWS_AS(parse_config_text("[grid]\nn_x = 1\nleft = periodic\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(std::string(kMinimal) + "\n[velocity]\nkind = vortex\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text(std::string(kMinimal) + "\n[initial]\nvalue = 1.5\nkind = constant\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text(std::string(kMinimal) + "\n[verify]\nsuite = everything\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text(std::string(kMinimal) + "\n[grid]\nn_x = ten\n"),
                    ConfigError);
}
