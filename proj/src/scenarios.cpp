#include "heleshaw/scenarios.hpp"

#include <cmath>
#include <numbers>

namespace heleshaw {
namespace scenarios {

namespace {

constexpr double pi = std::numbers::pi;

// C2 bump supported on |x - center| < width, peak value `height`.
double smooth_bump(double x, double center, double width, double height) {
    const double s = (x - center) / width;
    if (std::abs(s) >= 1.0) return 0.0;
    return height * std::exp(1.0 - 1.0 / (1.0 - s * s));
}

std::function<double(double, int)> box_source(const GridPtr& grid, double value, double x_min,
                                              double x_max) {
    return [grid, value, x_min, x_max](double, int c) {
        const double x = grid->cell_center(c)[0];
        return (x >= x_min && x <= x_max) ? value : 0.0;
    };
}

} // namespace

ScalarField random_smooth_field(const GridPtr& grid, std::mt19937& rng, double amplitude,
                                double clip_lo, double clip_hi) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const int modes = 4;
    std::vector<double> a(modes), phase(modes);
    for (int k = 0; k < modes; ++k) {
        a[k] = amplitude * unif(rng) / (k + 1);
        phase[k] = pi * unif(rng);
    }
    const double offset = 0.5 * amplitude * unif(rng);
    ScalarField out(grid);
    for (int c = 0; c < out.size(); ++c) {
        const auto x = grid->cell_center(c);
        double v = offset;
        for (int k = 0; k < modes; ++k)
            v += a[k] * std::sin((k + 1) * pi * x[0] / grid->extent(0) + phase[k]);
        out[c] = std::clamp(v, clip_lo, clip_hi);
    }
    return out;
}

std::vector<ScenarioPair> ordered_pack(unsigned seed, int count, int n_cells, double horizon,
                                       double tau) {
    std::vector<ScenarioPair> pack;
    pack.reserve(count);
    for (int s = 0; s < count; ++s) {
        std::mt19937 rng(seed + 1000003u * static_cast<unsigned>(s));
        std::uniform_real_distribution<double> unif(0.0, 1.0);

        const int family = s % 3;
        GridPtr grid;
        std::optional<VelocityField> vel;
        if (family == 0) {
            grid = StructuredGrid::make_1d(1.0, n_cells, BoundaryTag::Dirichlet,
                                           BoundaryTag::Dirichlet);
            vel = VelocityField::zero(grid);
        } else if (family == 1) {
            // expanding drift a (x - c): outward at both Dirichlet ends
            grid = StructuredGrid::make_1d(1.0, n_cells, BoundaryTag::Dirichlet,
                                           BoundaryTag::Dirichlet);
            const double a = 0.2 + 1.3 * unif(rng);
            const double c0 = 0.3 + 0.4 * unif(rng);
            vel = VelocityField::from_function(
                grid, [a, c0](std::array<double, 2> x) -> std::array<double, 2> {
                    return {a * (x[0] - c0), 0.0};
                });
        } else {
            grid = StructuredGrid::make_1d(1.0, n_cells, BoundaryTag::Neumann,
                                           BoundaryTag::Dirichlet);
            vel = crowd_motion_field(grid, 0.1 + 0.1 * unif(rng));
        }

        ScalarField u_low = random_smooth_field(grid, rng, 0.6, -0.9, 0.85);
        const double shift = 0.12 * unif(rng);
        ScalarField u_high(grid);
        for (int c = 0; c < u_high.size(); ++c)
            u_high[c] = std::min(u_low[c] + shift, 1.0);

        ScalarField f_low = random_smooth_field(grid, rng, 0.3, -0.5, 0.5);
        ScalarField f_gap = random_smooth_field(grid, rng, 0.15, 0.0, 0.3);
        std::vector<double> flow(f_low.values().begin(), f_low.values().end());
        std::vector<double> fhigh(flow);
        for (int c = 0; c < static_cast<int>(fhigh.size()); ++c) fhigh[c] += f_gap[c];

        EvolutionProblem lower{grid, *vel, u_low, horizon, tau};
        lower.source = [flow](double, int c) { return flow[c]; };
        EvolutionProblem upper{grid, *vel, u_high, horizon, tau};
        upper.source = [fhigh](double, int c) { return fhigh[c]; };

        pack.push_back({"ordered_pair_" + std::to_string(s), std::move(lower), std::move(upper)});
    }
    return pack;
}

Scenario zero(int n_cells, double horizon, double tau) {
    GridPtr grid = StructuredGrid::make_1d(1.0, n_cells, BoundaryTag::Dirichlet,
                                           BoundaryTag::Dirichlet);
    EvolutionProblem prob{grid, VelocityField::zero(grid), ScalarField(grid), horizon, tau};
    return {"zero", std::move(prob)};
}

Scenario crowd_congestion(int n_cells, double horizon, double tau) {
    GridPtr grid = StructuredGrid::make_1d(1.0, n_cells, BoundaryTag::Neumann,
                                           BoundaryTag::Dirichlet);
    VelocityField vel = crowd_motion_field(grid, 0.1);
    ScalarField u0(grid);
    for (int c = 0; c < u0.size(); ++c) {
        const double x = grid->cell_center(c)[0];
        u0[c] = (x >= 0.2 && x <= 0.9) ? 0.9 : 0.0;
    }
    EvolutionProblem prob{grid, std::move(vel), std::move(u0), horizon, tau};
    prob.source = box_source(grid, 0.5, 0.7, 1.0);
    return {"crowd_congestion", std::move(prob)};
}

Scenario congestion_free(int level, int base_n, double horizon, double base_tau) {
    const int factor = 1 << level;
    GridPtr grid = StructuredGrid::make_1d(1.0, base_n * factor, BoundaryTag::Dirichlet,
                                           BoundaryTag::Dirichlet);
    VelocityField vel = VelocityField::constant(grid, 1.0);
    ScalarField u0(grid);
    for (int c = 0; c < u0.size(); ++c)
        u0[c] = smooth_bump(grid->cell_center(c)[0], 0.3, 0.2, 0.75);
    EvolutionProblem prob{grid, std::move(vel), std::move(u0), horizon, base_tau / factor};
    prob.solver.enforce_admissibility = false;   // zero-density inflow at the left end
    return {"congestion_free_l" + std::to_string(level), std::move(prob)};
}

Scenario congestion_negative_control(int n_cells, double horizon, double tau) {
    GridPtr grid = StructuredGrid::make_1d(1.0, n_cells, BoundaryTag::Dirichlet,
                                           BoundaryTag::Neumann);
    VelocityField vel = VelocityField::from_function(
        grid, [](std::array<double, 2> x) -> std::array<double, 2> {
            return {0.5 * (1.0 - x[0]), 0.0};
        });
    ScalarField u0(grid);
    for (int c = 0; c < u0.size(); ++c)
        u0[c] = smooth_bump(grid->cell_center(c)[0], 0.55, 0.3, 0.9);
    EvolutionProblem prob{grid, std::move(vel), std::move(u0), horizon, tau};
    prob.solver.enforce_admissibility = false;   // compressive inflow by construction
    return {"congestion_negative_control", std::move(prob)};
}

Scenario reaction_relaxation(int n_cells, double horizon, double tau) {
    GridPtr grid = StructuredGrid::make_1d(1.0, n_cells, BoundaryTag::Dirichlet,
                                           BoundaryTag::Dirichlet);
    EvolutionProblem prob{grid, VelocityField::zero(grid), ScalarField(grid), horizon, tau};
    prob.reaction = ReactionTerm::linear_decay(1.0, 1.0);
    return {"reaction_relaxation", std::move(prob)};
}

Scenario smooth_transport(int n_cells, double horizon, double tau) {
    GridPtr grid = StructuredGrid::make_1d(1.0, n_cells, BoundaryTag::Dirichlet,
                                           BoundaryTag::Dirichlet);
    VelocityField vel = VelocityField::from_function(
        grid, [](std::array<double, 2> x) -> std::array<double, 2> {
            return {0.8 * (x[0] - 0.4), 0.0};
        });
    ScalarField u0(grid);
    for (int c = 0; c < u0.size(); ++c)
        u0[c] = 0.7 * std::sin(2.0 * pi * grid->cell_center(c)[0]);
    EvolutionProblem prob{grid, std::move(vel), std::move(u0), horizon, tau};
    prob.source = [grid](double, int c) {
        return 0.1 * std::cos(2.0 * pi * grid->cell_center(c)[0]);
    };
    return {"smooth_transport", std::move(prob)};
}

} // namespace scenarios
} // namespace heleshaw
