#ifndef HELESHAW_SCENARIOS_HPP
#define HELESHAW_SCENARIOS_HPP

#include <random>
#include <string>

#include "heleshaw/evolution.hpp"

namespace heleshaw {
namespace scenarios {

struct Scenario {
    std::string id;
    EvolutionProblem problem;
};

/// Pair of problems with ordered data (u0 and sources) on a shared grid,
/// drift and time step; used by the contraction and comparison suites.
struct ScenarioPair {
    std::string id;
    EvolutionProblem lower;
    EvolutionProblem upper;
};

/// Seeded pack of ordered 1D scenario pairs rotating through zero, linear
/// expanding and crowd-motion drifts.
std::vector<ScenarioPair> ordered_pack(unsigned seed, int count, int n_cells = 100,
                                       double horizon = 1.0, double tau = 0.01);

Scenario zero(int n_cells = 50, double horizon = 0.2, double tau = 0.02);

/// Crowd corridor with an inflow strip near the escape door; congests.
Scenario crowd_congestion(int n_cells = 200, double horizon = 0.5, double tau = 0.01);

/// Divergence-free transport: V = 1 with both ends Dirichlet. The left end
/// is a zero-density inflow (u V . nu = 0 there), so the admissibility
/// check is relaxed for this scenario; `level` halves (h, tau) jointly.
Scenario congestion_free(int level = 0, int base_n = 64, double horizon = 0.4,
                         double base_tau = 0.01);

/// Compressive drift (div V = -0.5): violates G3 and must congest.
Scenario congestion_negative_control(int n_cells = 100, double horizon = 0.8,
                                     double tau = 0.01);

/// Spatially uniform relaxation g(r) = 1 - r from u0 = 0; tracks the
/// scalar ODE 1 - e^{-t}.
Scenario reaction_relaxation(int n_cells = 50, double horizon = 1.0, double tau = 0.01);

/// Smooth two-sign transport run for the entropy pack.
Scenario smooth_transport(int n_cells = 100, double horizon = 0.5, double tau = 0.01);

/// Smooth random field on cell centers: a few low Fourier modes, clipped.
ScalarField random_smooth_field(const GridPtr& grid, std::mt19937& rng, double amplitude,
                                double clip_lo, double clip_hi);

} // namespace scenarios
} // namespace heleshaw

#endif
