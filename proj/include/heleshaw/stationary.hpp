#ifndef HELESHAW_STATIONARY_HPP
#define HELESHAW_STATIONARY_HPP

#include <optional>
#include <span>
#include <vector>

#include "heleshaw/graphs.hpp"
#include "heleshaw/velocity.hpp"

namespace heleshaw {

/// Default geometric schedule 1e-2 -> 1e-8, factor 10.
std::vector<double> default_eps_schedule();

struct SolverParams {
    double tol = 1e-10;             // nonlinear residual, volume-weighted l1
    int max_iter = 50;
    std::vector<double> eps_schedule;   // empty = default_eps_schedule()
    double comp_tol = 1e-8;         // complementarity gate of the graph limit
    GraphKind graph_kind = GraphKind::TwoPhase;
    double admissibility_tol = 1e-9;
    // The paper's outward-pointing hypothesis. Scenarios that model inflow
    // of vacuum through a Dirichlet end (zero upwind ghost state) may relax
    // the check; the discrete scheme stays well posed.
    bool enforce_admissibility = true;

    std::span<const double> schedule() const;
};

/// Data of one resolvent-type solve: u - tau Lap p + tau div(u V) = rhs
/// with u = H_eps(p), p = 0 on the Dirichlet part, zero total flux on the
/// Neumann part. tau = 1 recovers the plain stationary problem.
struct StationaryProblem {
    GridPtr grid;
    VelocityField velocity;
    ScalarField rhs;
    double tau = 1.0;
    GraphRegularization reg{1e-8};
};

struct StationarySolution {
    ScalarField u;
    ScalarField p;
    int newton_iterations = 0;
    double residual_norm = 0.0;
    double complementarity = 0.0;     // integral of (|u|-1)^- |p| + (u p)^-
    double energy_ratio = 0.0;        // grad-energy over data energy
    double eps_final = 0.0;
    std::vector<double> cauchy_increments;   // ||u_k - u_{k+1}||_1 along the schedule
};

/// Damped semismooth Newton on p with Picard (chord) fallback. Throws
/// SolverFailureError when max_iter is exhausted above tol.
StationarySolution solve_regularized(const StationaryProblem& prob, double tol, int max_iter,
                                     const ScalarField* warm_start = nullptr);

/// Runs solve_regularized along a decreasing epsilon schedule with warm
/// starts and returns the final pair; throws LimitNotReachedError when the
/// complementarity gate fails at the end of the schedule.
StationarySolution solve_graph_limit(const StationaryProblem& prob,
                                     std::span<const double> eps_schedule,
                                     const SolverParams& params);

/// Resolvent of the accretive operator: (I + tau A)^{-1}(z + tau f).
/// Requires |z| <= 1 everywhere.
StationarySolution resolvent_A(const ScalarField& z, const ScalarField& f, double tau,
                               const VelocityField& velocity, const SolverParams& params);

/// Discrete H1_D seminorm of p through the same two-point fluxes as the
/// diffusion operator (Dirichlet ghost closure included).
double gradient_energy(const ScalarField& p);

/// 1/sqrt(lambda_min) of the mixed-BC discrete Laplacian, by inverse power
/// iteration.
double discrete_poincare_constant(const GridPtr& grid);

struct EnergyReport {
    double ratio;          // grad energy of p over (|V|^2 + |rhs|^2) integrals
    double c_grid;         // 2 (1 + C_poincare^2)
    double c_poincare;
    bool within_bound;
};

EnergyReport energy_estimate_check(const StationarySolution& sol, const StationaryProblem& prob);

/// Outward flux of the solution through the Dirichlet part:
/// sum of (-grad p + u V) . nu over Dirichlet faces.
double dirichlet_outflux(const ScalarField& u, const ScalarField& p, const VelocityField& v);

} // namespace heleshaw

#endif
