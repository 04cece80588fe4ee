#ifndef HELESHAW_EVOLUTION_HPP
#define HELESHAW_EVOLUTION_HPP

#include <functional>
#include <optional>

#include "heleshaw/reaction.hpp"
#include "heleshaw/stationary.hpp"

namespace heleshaw {

/// Implicit Euler marching data. The source is either a fixed f(t, x) or a
/// reaction term g(t, x, u) coupled through a per-step fixed point; at most
/// one of the two may be set.
struct EvolutionProblem {
    GridPtr grid;
    VelocityField velocity;
    ScalarField u0;
    double horizon = 1.0;
    double tau = 0.01;
    std::function<double(double t, int cell)> source;   // null = zero source
    std::optional<ReactionTerm> reaction;
    SolverParams solver;
    double fixed_point_tol = 1e-12;
    int fixed_point_max_iter = 100;
};

struct StepReport {
    int newton_iterations = 0;
    double residual_norm = 0.0;
    double complementarity = 0.0;
    int fixed_point_iterations = 0;
    double outflux = 0.0;          // through the Dirichlet part, at the new state
    double mass_residual = 0.0;    // defect of the discrete mass ledger
};

/// Time-indexed states of one run, including the per-step effective
/// sources and solver reports. Immutable once returned.
class Trajectory {
public:
    Trajectory(GridPtr grid, VelocityField velocity, std::vector<double> times,
               std::vector<ScalarField> u, std::vector<ScalarField> p,
               std::vector<ScalarField> sources, std::vector<StepReport> reports,
               double eps_final);

    int steps() const { return static_cast<int>(reports_.size()); }
    double tau() const { return times_.size() > 1 ? times_[1] - times_[0] : 0.0; }
    double horizon() const { return times_.back(); }
    double time(int i) const { return times_[i]; }
    const ScalarField& u(int i) const { return u_[i]; }
    const ScalarField& p(int i) const { return p_[i]; }
    const ScalarField& source(int i) const { return sources_[i]; }
    const StepReport& report(int i) const { return reports_[i]; }
    double eps_final() const { return eps_final_; }
    const GridPtr& grid_ptr() const { return grid_; }
    const VelocityField& velocity() const { return velocity_; }

    /// Piecewise-constant interpolant (u_i on [t_i, t_{i+1})).
    const ScalarField& state_at(double t) const;
    /// Piecewise-linear interpolant; matches the node values exactly.
    ScalarField interpolate_linear(double t) const;

private:
    GridPtr grid_;
    VelocityField velocity_;
    std::vector<double> times_;
    std::vector<ScalarField> u_, p_, sources_;
    std::vector<StepReport> reports_;
    double eps_final_;
};

/// Average of f over [i tau, (i+1) tau] per cell, 3-point Gauss quadrature.
ScalarField time_average_source(const std::function<double(double, int)>& f,
                                const GridPtr& grid, int step_index, double tau);

struct EulerStepResult {
    ScalarField u;
    ScalarField p;
    StepReport report;
};

/// One resolvent step u_next = (I + tau A)^{-1}(u_prev + tau f_i).
EulerStepResult euler_step(const ScalarField& u_prev, const ScalarField& f_i, double tau,
                           const VelocityField& velocity, const SolverParams& params);

Trajectory run_evolution(const EvolutionProblem& prob);

struct MassLedgerEntry {
    double mass_prev;
    double mass_next;
    double source_integral;   // tau * integral of f_i
    double outflux;           // tau * Dirichlet outflux
    double residual;
};

std::vector<MassLedgerEntry> mass_ledger(const Trajectory& traj);

/// Scalar sub/supersolution barriers integrated with the trajectory's own
/// implicit steps; margins are min over steps and cells of (u - omega1)
/// and (omega2 - u).
struct BarrierReport {
    std::vector<double> omega1;
    std::vector<double> omega2;
    double worst_lower_margin;
    double worst_upper_margin;
    double tolerance;
    bool passed;
};

BarrierReport check_sub_supersolutions(const Trajectory& traj, double omega1_0, double omega2_0,
                                       const ReactionTerm& g, double tolerance = 1e-6);

} // namespace heleshaw

#endif
