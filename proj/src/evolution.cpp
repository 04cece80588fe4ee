#include "heleshaw/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace heleshaw {

Trajectory::Trajectory(GridPtr grid, VelocityField velocity, std::vector<double> times,
                       std::vector<ScalarField> u, std::vector<ScalarField> p,
                       std::vector<ScalarField> sources, std::vector<StepReport> reports,
                       double eps_final)
    : grid_(std::move(grid)),
      velocity_(std::move(velocity)),
      times_(std::move(times)),
      u_(std::move(u)),
      p_(std::move(p)),
      sources_(std::move(sources)),
      reports_(std::move(reports)),
      eps_final_(eps_final) {
    if (times_.size() != u_.size() || u_.size() != p_.size() ||
        sources_.size() != reports_.size() || times_.size() != reports_.size() + 1)
        throw InvalidParameterError("trajectory arrays are inconsistent");
}

const ScalarField& Trajectory::state_at(double t) const {
    const double tau = this->tau();
    const int n = steps();
    const int i = std::clamp(static_cast<int>(std::floor(t / tau)), 0, n);
    return u_[i];
}

ScalarField Trajectory::interpolate_linear(double t) const {
    const double tau = this->tau();
    const int n = steps();
    const int i = std::clamp(static_cast<int>(std::floor(t / tau)), 0, n - 1);
    const double theta = std::clamp((t - times_[i]) / tau, 0.0, 1.0);
    ScalarField out(grid_);
    for (int c = 0; c < out.size(); ++c)
        out[c] = (1.0 - theta) * u_[i][c] + theta * u_[i + 1][c];
    return out;
}

ScalarField time_average_source(const std::function<double(double, int)>& f,
                                const GridPtr& grid, int step_index, double tau) {
    ScalarField out(grid);
    if (!f) return out;
    const double a = step_index * tau;
    // 3-point Gauss-Legendre, exact through degree 5
    static const double node = std::sqrt(3.0 / 5.0);
    const double ts[3] = {a + tau * 0.5 * (1.0 - node), a + tau * 0.5, a + tau * 0.5 * (1.0 + node)};
    const double ws[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    for (int c = 0; c < out.size(); ++c)
        out[c] = ws[0] * f(ts[0], c) + ws[1] * f(ts[1], c) + ws[2] * f(ts[2], c);
    return out;
}

EulerStepResult euler_step(const ScalarField& u_prev, const ScalarField& f_i, double tau,
                           const VelocityField& velocity, const SolverParams& params) {
    if (u_prev.max_norm() > 1.0 + 1e-12)
        throw InvalidParameterError("euler step requires |u_prev| <= 1");
    StationarySolution sol = resolvent_A(u_prev, f_i, tau, velocity, params);
    StepReport rep;
    rep.newton_iterations = sol.newton_iterations;
    rep.residual_norm = sol.residual_norm;
    rep.complementarity = sol.complementarity;
    rep.outflux = dirichlet_outflux(sol.u, sol.p, velocity);
    rep.mass_residual =
        sol.u.integral() - u_prev.integral() - tau * f_i.integral() + tau * rep.outflux;
    return {std::move(sol.u), std::move(sol.p), rep};
}

namespace {

int step_count(double horizon, double tau) {
    if (!(tau > 0.0) || !(horizon > 0.0))
        throw InvalidParameterError("horizon and tau must be positive");
    const double ratio = horizon / tau;
    const int n = static_cast<int>(std::llround(ratio));
    if (n < 1 || std::abs(n * tau - horizon) > 1e-9 * std::max(horizon, 1.0))
        throw InvalidParameterError("horizon T is not an integer multiple of tau");
    return n;
}

} // namespace

Trajectory run_evolution(const EvolutionProblem& prob) {
    const int n = step_count(prob.horizon, prob.tau);
    if (prob.u0.max_norm() > 1.0 + 1e-12)
        throw InvalidParameterError("initial state must satisfy |u0| <= 1");
    if (prob.source && prob.reaction)
        throw InvalidParameterError("set either a fixed source or a reaction term, not both");
    if (prob.solver.enforce_admissibility &&
        !check_admissibility(prob.velocity, prob.solver.admissibility_tol).passed)
        throw InvalidParameterError("velocity field fails the outward-pointing admissibility check");

    if (prob.reaction) {
        const double sup_mod = prob.reaction->sup_r_modulus(0.0, prob.horizon);
        if (prob.tau * sup_mod >= 1.0)
            throw InvalidStepError("tau * sup R >= 1: reaction fixed point not certified contractive");
        const auto cond = check_conditions(*prob.reaction, prob.velocity,
                                           SamplingSpec::over_horizon(prob.horizon));
        if (!cond.g1 || !cond.g2)
            throw InvalidScenarioError("reaction term fails the G1/G2 structural conditions");
    }

    const double tau = prob.tau;
    std::vector<double> times(n + 1);
    for (int i = 0; i <= n; ++i) times[i] = i * tau;

    std::vector<ScalarField> u, p, sources;
    std::vector<StepReport> reports;
    u.reserve(n + 1);
    p.reserve(n + 1);
    sources.reserve(n);
    reports.reserve(n);
    u.push_back(prob.u0);
    p.emplace_back(prob.grid);

    double eps_final = prob.solver.schedule().back();
    for (int i = 0; i < n; ++i) {
        const double t_mid = (i + 0.5) * tau;
        try {
            if (prob.reaction) {
                // semi-implicit coupling: freeze g at the midpoint time and
                // iterate the resolvent until the state is self-consistent
                const ReactionTerm& g = *prob.reaction;
                ScalarField guess = u.back();
                ScalarField f(prob.grid);
                std::optional<EulerStepResult> step;
                int k = 0;
                for (; k < prob.fixed_point_max_iter; ++k) {
                    for (int c = 0; c < f.size(); ++c) f[c] = g(t_mid, c, guess[c]);
                    step = euler_step(u.back(), f, tau, prob.velocity, prob.solver);
                    const double delta = (step->u - guess).l1_norm();
                    guess = step->u;
                    if (delta <= prob.fixed_point_tol) break;
                }
                if (k == prob.fixed_point_max_iter)
                    throw SolverFailureError("reaction fixed point did not converge", 0.0, k);
                step->report.fixed_point_iterations = k + 1;
                sources.push_back(std::move(f));
                reports.push_back(step->report);
                u.push_back(std::move(step->u));
                p.push_back(std::move(step->p));
            } else {
                ScalarField f = time_average_source(prob.source, prob.grid, i, tau);
                EulerStepResult step = euler_step(u.back(), f, tau, prob.velocity, prob.solver);
                sources.push_back(std::move(f));
                reports.push_back(step.report);
                u.push_back(std::move(step.u));
                p.push_back(std::move(step.p));
            }
        } catch (const SolverFailureError& e) {
            throw SolverFailureError("step " + std::to_string(i) + ": " + e.what(),
                                     e.last_residual, e.iterations);
        }
    }

    return Trajectory(prob.grid, prob.velocity, std::move(times), std::move(u), std::move(p),
                      std::move(sources), std::move(reports), eps_final);
}

std::vector<MassLedgerEntry> mass_ledger(const Trajectory& traj) {
    std::vector<MassLedgerEntry> ledger;
    ledger.reserve(traj.steps());
    const double tau = traj.tau();
    for (int i = 0; i < traj.steps(); ++i) {
        MassLedgerEntry e;
        e.mass_prev = traj.u(i).integral();
        e.mass_next = traj.u(i + 1).integral();
        e.source_integral = tau * traj.source(i).integral();
        e.outflux = tau * traj.report(i).outflux;
        e.residual = e.mass_next - e.mass_prev - e.source_integral + e.outflux;
        ledger.push_back(e);
    }
    return ledger;
}

namespace {

// Solves w = base + tau * ext(w) for one implicit barrier step by bracketed
// bisection; ext is the cellwise sup or inf of g(t, c, w) - w div V.
double implicit_barrier_step(double base, double tau,
                             const std::function<double(double)>& ext) {
    auto F = [&](double w) { return w - tau * ext(w) - base; };
    double radius = tau * (std::abs(ext(base)) + 1.0);
    double lo = base - radius, hi = base + radius;
    for (int k = 0; k < 60 && F(lo) > 0.0; ++k) lo -= radius *= 2.0;
    radius = tau * (std::abs(ext(base)) + 1.0);
    for (int k = 0; k < 60 && F(hi) < 0.0; ++k) hi += radius *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(base)); ++it) {
        const double mid = 0.5 * (lo + hi);
        (F(mid) <= 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

BarrierReport check_sub_supersolutions(const Trajectory& traj, double omega1_0, double omega2_0,
                                       const ReactionTerm& g, double tolerance) {
    if (omega1_0 > traj.u(0).min_value() + 1e-12 || traj.u(0).max_value() > omega2_0 + 1e-12)
        throw InvalidParameterError("barriers must bracket the initial state");

    const ScalarField& div = traj.velocity().divergence();
    const int ncells = div.size();
    const double tau = traj.tau();

    BarrierReport rep;
    rep.tolerance = tolerance;
    rep.omega1 = {omega1_0};
    rep.omega2 = {omega2_0};
    rep.worst_lower_margin = std::numeric_limits<double>::infinity();
    rep.worst_upper_margin = std::numeric_limits<double>::infinity();

    for (int i = 0; i < traj.steps(); ++i) {
        const double t_mid = traj.time(i) + 0.5 * tau;
        auto sup = [&](double w) {
            double s = -std::numeric_limits<double>::infinity();
            for (int c = 0; c < ncells; ++c) s = std::max(s, g(t_mid, c, w) - w * div[c]);
            return s;
        };
        auto inf = [&](double w) {
            double s = std::numeric_limits<double>::infinity();
            for (int c = 0; c < ncells; ++c) s = std::min(s, g(t_mid, c, w) - w * div[c]);
            return s;
        };
        rep.omega2.push_back(implicit_barrier_step(rep.omega2.back(), tau, sup));
        rep.omega1.push_back(implicit_barrier_step(rep.omega1.back(), tau, inf));

        const ScalarField& ui = traj.u(i + 1);
        rep.worst_upper_margin = std::min(rep.worst_upper_margin, rep.omega2.back() - ui.max_value());
        rep.worst_lower_margin = std::min(rep.worst_lower_margin, ui.min_value() - rep.omega1.back());
    }
    rep.passed = rep.worst_lower_margin >= -tolerance && rep.worst_upper_margin >= -tolerance;
    return rep;
}

} // namespace heleshaw
