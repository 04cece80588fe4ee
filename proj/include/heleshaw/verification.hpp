#ifndef HELESHAW_VERIFICATION_HPP
#define HELESHAW_VERIFICATION_HPP

#include <span>
#include <string>

#include "heleshaw/evolution.hpp"

namespace heleshaw {

/// Uniform verdict carrier: a signed worst margin (>= -tolerance means the
/// property holds) plus the per-step or per-check margin series.
struct PropertyReport {
    std::string property;
    std::string scenario_id;
    double worst_margin = 0.0;
    double tolerance = 0.0;
    std::vector<double> margins;
    bool passed = false;
};

/// Integrated L1 contraction: at every step the accumulated source distance
/// plus the initial distance dominates the state distance.
PropertyReport check_contraction(const Trajectory& a, const Trajectory& b, double tol_c = 1e-8);

/// Cellwise ordering of two runs with ordered initial data and sources.
/// Throws InvalidComparisonError when the data are not ordered.
PropertyReport check_comparison(const Trajectory& lower, const Trajectory& upper,
                                double tol_c = 1e-8);

/// One-phase positivity and complementarity: min u, min p and the defect
/// max |p (1 - u)| against the clamp regularization bound eps/4.
/// `g5_certified` waives the nonnegative-source precondition (reaction runs
/// certified through G5); `enforce_preconditions=false` runs the check on
/// hypothesis-violating data (negative controls).
PropertyReport check_one_phase(const Trajectory& traj, double tol_c = 1e-8,
                               bool g5_certified = false, bool enforce_preconditions = true);

/// Independent reference for the congestion-free regime: implicit upwind
/// finite-volume transport with the same per-step reaction fixed point and
/// no pressure term. Shares only grid/field types (and third-party linear
/// algebra) with the main solver.
Trajectory transport_oracle(const EvolutionProblem& prob);

struct CongestionFreeReport {
    PropertyReport pressure;         // max_t ||p||_inf against tol_p
    PropertyReport oracle_distance;  // max_t L1 distance against c_cmp * h
    bool passed = false;
};

/// Runs the full scheme and the transport oracle under the G3/G4
/// conditions. c_cmp <= 0 selects the default 10 T ||V||_inf.
CongestionFreeReport check_congestion_free(const EvolutionProblem& prob, double tol_p,
                                           double c_cmp = 0.0, bool require_conditions = true);

struct OrderStudy {
    std::vector<double> h;              // per level
    std::vector<double> same_level_distance;
    std::vector<double> error_vs_reference;   // full run vs finest-level oracle
    std::vector<double> orders;
    double min_order = 0.0;
};

/// Joint (h, tau) refinement of the congestion-free comparison; the oracle
/// at one level finer than the last serves as the reference solution.
OrderStudy congestion_free_order_study(const std::function<EvolutionProblem(int)>& make_level,
                                       int levels);

/// L1 stability under seeded data perturbations of size delta: deviations
/// must stay within delta (1 + T) + slack.
PropertyReport check_stability(const EvolutionProblem& prob, std::span<const double> deltas,
                               unsigned seed, double slack = 1e-7);

/// Interior residuals of the localized entropy inequalities for levels k in
/// (-1, 1), tested against nonnegative interior bumps; the pass threshold
/// is c_e (h + tau). The mirrored inequality is checked through the
/// (-u, -p, -f) symmetry.
PropertyReport entropy_residual(const Trajectory& traj, std::span<const double> k_grid,
                                double c_e = 10.0);

/// Non-gated diagnostic: the smallest value over time steps of the discrete
/// pairing of grad p+ (and grad p-) with grad xi_h near the boundary.
struct BoundaryFluxDiagnostic {
    double min_pairing_plus;
    double min_pairing_minus;
};
BoundaryFluxDiagnostic boundary_flux_diagnostic(const Trajectory& traj, double h);

/// Restriction of a fine field to a coarser grid of the same extent whose
/// cell counts divide the fine ones (block averaging).
ScalarField restrict_to(const ScalarField& fine, const GridPtr& coarse);

} // namespace heleshaw

#endif
