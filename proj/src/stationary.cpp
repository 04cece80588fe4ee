#include "heleshaw/stationary.hpp"

#include <cmath>
#include <limits>

#include "heleshaw/linalg.hpp"

namespace heleshaw {

std::vector<double> default_eps_schedule() {
    std::vector<double> s;
    for (double e = 1e-2; e >= 0.99e-8; e /= 10.0) s.push_back(e);
    return s;
}

std::span<const double> SolverParams::schedule() const {
    static const std::vector<double> fallback = default_eps_schedule();
    return eps_schedule.empty() ? std::span<const double>(fallback)
                                : std::span<const double>(eps_schedule);
}

namespace {

BoundaryTag face_tag(const StructuredGrid& g, int axis, int side, int index) {
    for (const auto& f : g.boundary_faces())
        if (f.axis == axis && f.side == side && f.index == index) return f.tag;
    throw InvalidGeometryError("boundary face lookup failed");
}

// Discrete operators of the mixed-BC finite volume scheme, per unit cell
// volume: L is minus the Laplacian with two-point fluxes (Dirichlet ghost
// closure, no flux through the Neumann part), T the upwind divergence of
// (u V) with outflow through Dirichlet faces and zero ghost inflow.
struct FvOperators {
    int n;
    bool banded;   // 1D: tridiagonal band storage + Thomas solves
    std::vector<double> L_sub, L_diag, L_sup;
    std::vector<double> T_sub, T_diag, T_sup;
    Eigen::SparseMatrix<double> L2, T2;
    std::vector<Eigen::Triplet<double>> L_trip, T_trip;

    FvOperators(const StructuredGrid& g, const VelocityField& v) : n(g.cell_count()) {
        banded = g.dimension() == 1;
        if (banded)
            assemble_1d(g, v);
        else
            assemble_2d(g, v);
    }

    void assemble_1d(const StructuredGrid& g, const VelocityField& v) {
        const int nx = g.cells(0);
        const double h = g.spacing(0);
        const double ih2 = 1.0 / (h * h);
        L_sub.assign(nx, 0.0);
        L_diag.assign(nx, 0.0);
        L_sup.assign(nx, 0.0);
        T_sub.assign(nx, 0.0);
        T_diag.assign(nx, 0.0);
        T_sup.assign(nx, 0.0);

        for (int i = 0; i + 1 < nx; ++i) {
            L_diag[i] += ih2;
            L_sup[i] -= ih2;
            L_diag[i + 1] += ih2;
            L_sub[i + 1] -= ih2;
            const double vf = v.face_value_x(i + 1);
            const double vp = std::max(vf, 0.0), vm = std::min(vf, 0.0);
            T_diag[i] += vp / h;
            T_sup[i] += vm / h;
            T_sub[i + 1] -= vp / h;
            T_diag[i + 1] -= vm / h;
        }
        if (face_tag(g, 0, 0, 0) == BoundaryTag::Dirichlet) {
            L_diag[0] += 2.0 * ih2;
            T_diag[0] -= std::min(v.face_value_x(0), 0.0) / h;
        }
        if (face_tag(g, 0, 1, 0) == BoundaryTag::Dirichlet) {
            L_diag[nx - 1] += 2.0 * ih2;
            T_diag[nx - 1] += std::max(v.face_value_x(nx), 0.0) / h;
        }
    }

    void assemble_2d(const StructuredGrid& g, const VelocityField& v) {
        const int nx = g.cells(0), ny = g.cells(1);
        const double hx = g.spacing(0), hy = g.spacing(1);
        auto idx = [&](int i, int j) { return j * nx + i; };

        // x-direction fluxes
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i + 1 < nx; ++i) {
                const int a = idx(i, j), b = idx(i + 1, j);
                const double c = 1.0 / (hx * hx);
                L_trip.emplace_back(a, a, c);
                L_trip.emplace_back(a, b, -c);
                L_trip.emplace_back(b, b, c);
                L_trip.emplace_back(b, a, -c);
                const double vf = v.face_value_x(i + 1, j);
                const double vp = std::max(vf, 0.0), vm = std::min(vf, 0.0);
                T_trip.emplace_back(a, a, vp / hx);
                T_trip.emplace_back(a, b, vm / hx);
                T_trip.emplace_back(b, a, -vp / hx);
                T_trip.emplace_back(b, b, -vm / hx);
            }
            if (face_tag(g, 0, 0, j) == BoundaryTag::Dirichlet) {
                const int a = idx(0, j);
                L_trip.emplace_back(a, a, 2.0 / (hx * hx));
                T_trip.emplace_back(a, a, -std::min(v.face_value_x(0, j), 0.0) / hx);
            }
            if (face_tag(g, 0, 1, j) == BoundaryTag::Dirichlet) {
                const int a = idx(nx - 1, j);
                L_trip.emplace_back(a, a, 2.0 / (hx * hx));
                T_trip.emplace_back(a, a, std::max(v.face_value_x(nx, j), 0.0) / hx);
            }
        }
        // y-direction fluxes
        for (int i = 0; i < nx; ++i) {
            for (int j = 0; j + 1 < ny; ++j) {
                const int a = idx(i, j), b = idx(i, j + 1);
                const double c = 1.0 / (hy * hy);
                L_trip.emplace_back(a, a, c);
                L_trip.emplace_back(a, b, -c);
                L_trip.emplace_back(b, b, c);
                L_trip.emplace_back(b, a, -c);
                const double vf = v.face_value_y(i, j + 1);
                const double vp = std::max(vf, 0.0), vm = std::min(vf, 0.0);
                T_trip.emplace_back(a, a, vp / hy);
                T_trip.emplace_back(a, b, vm / hy);
                T_trip.emplace_back(b, a, -vp / hy);
                T_trip.emplace_back(b, b, -vm / hy);
            }
            if (face_tag(g, 1, 0, i) == BoundaryTag::Dirichlet) {
                const int a = idx(i, 0);
                L_trip.emplace_back(a, a, 2.0 / (hy * hy));
                T_trip.emplace_back(a, a, -std::min(v.face_value_y(i, 0), 0.0) / hy);
            }
            if (face_tag(g, 1, 1, i) == BoundaryTag::Dirichlet) {
                const int a = idx(i, ny - 1);
                L_trip.emplace_back(a, a, 2.0 / (hy * hy));
                T_trip.emplace_back(a, a, std::max(v.face_value_y(i, ny), 0.0) / hy);
            }
        }
        L2.resize(n, n);
        L2.setFromTriplets(L_trip.begin(), L_trip.end());
        T2.resize(n, n);
        T2.setFromTriplets(T_trip.begin(), T_trip.end());
    }

    void apply_L(std::span<const double> x, std::vector<double>& out) const {
        if (banded) {
            for (int i = 0; i < n; ++i) {
                double s = L_diag[i] * x[i];
                if (i > 0) s += L_sub[i] * x[i - 1];
                if (i + 1 < n) s += L_sup[i] * x[i + 1];
                out[i] = s;
            }
            return;
        }
        Eigen::Map<const Eigen::VectorXd> xv(x.data(), n);
        Eigen::VectorXd y = L2 * xv;
        for (int i = 0; i < n; ++i) out[i] = y[i];
    }

    void apply_T(std::span<const double> x, std::vector<double>& out) const {
        if (banded) {
            for (int i = 0; i < n; ++i) {
                double s = T_diag[i] * x[i];
                if (i > 0) s += T_sub[i] * x[i - 1];
                if (i + 1 < n) s += T_sup[i] * x[i + 1];
                out[i] = s;
            }
            return;
        }
        Eigen::Map<const Eigen::VectorXd> xv(x.data(), n);
        Eigen::VectorXd y = T2 * xv;
        for (int i = 0; i < n; ++i) out[i] = y[i];
    }

    // Solves (diag(D) + tau L + tau T diag(D)) dp = rhs.
    std::vector<double> newton_solve(const std::vector<double>& D, double tau,
                                     std::span<const double> rhs) const {
        if (banded) {
            std::vector<double> js(n), jd(n), ju(n);
            for (int i = 0; i < n; ++i) {
                jd[i] = D[i] + tau * (L_diag[i] + T_diag[i] * D[i]);
                js[i] = i > 0 ? tau * (L_sub[i] + T_sub[i] * D[i - 1]) : 0.0;
                ju[i] = i + 1 < n ? tau * (L_sup[i] + T_sup[i] * D[i + 1]) : 0.0;
            }
            return TridiagonalSolver(std::move(js), std::move(jd), std::move(ju)).solve(rhs);
        }
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(L_trip.size() + T_trip.size() + n);
        for (int i = 0; i < n; ++i) trip.emplace_back(i, i, D[i]);
        for (const auto& t : L_trip) trip.emplace_back(t.row(), t.col(), tau * t.value());
        for (const auto& t : T_trip)
            trip.emplace_back(t.row(), t.col(), tau * t.value() * D[t.col()]);
        Eigen::SparseMatrix<double> J(n, n);
        J.setFromTriplets(trip.begin(), trip.end());
        return SparseDirectSolver(J).solve(rhs);
    }
};

double weighted_l1(std::span<const double> r, double vol) {
    double s = 0.0;
    for (double v : r) s += std::abs(v);
    return s * vol;
}

double complementarity_integral(const ScalarField& u, const ScalarField& p) {
    double s = 0.0;
    for (int c = 0; c < u.size(); ++c) {
        s += std::max(1.0 - std::abs(u[c]), 0.0) * std::abs(p[c]);
        s += std::max(-u[c] * p[c], 0.0);
    }
    return s * u.grid().cell_volume();
}

double data_energy(const StationaryProblem& prob) {
    const StructuredGrid& g = *prob.grid;
    const VelocityField& v = prob.velocity;
    double s = 0.0;
    const int nx = g.cells(0);
    for (int c = 0; c < g.cell_count(); ++c) {
        const int i = c % nx, j = c / nx;
        const double vx = 0.5 * (v.face_value_x(i, j) + v.face_value_x(i + 1, j));
        double vsq = vx * vx;
        if (g.dimension() == 2) {
            const double vy = 0.5 * (v.face_value_y(i, j) + v.face_value_y(i, j + 1));
            vsq += vy * vy;
        }
        s += vsq + prob.rhs[c] * prob.rhs[c];
    }
    return s * g.cell_volume();
}

} // namespace

StationarySolution solve_regularized(const StationaryProblem& prob, double tol, int max_iter,
                                     const ScalarField* warm_start) {
    const StructuredGrid& g = *prob.grid;
    const int n = g.cell_count();
    const double vol = g.cell_volume();
    const double tau = prob.tau;
    if (!(tau > 0.0)) throw InvalidParameterError("operator weight tau must be positive");
    const GraphRegularization& reg = prob.reg;

    FvOperators ops(g, prob.velocity);

    std::vector<double> p(n, 0.0);
    if (warm_start != nullptr)
        p.assign(warm_start->values().begin(), warm_start->values().end());

    std::vector<double> u(n), Lp(n), Tu(n), res(n);
    auto residual = [&](const std::vector<double>& pv, std::vector<double>& uv,
                        std::vector<double>& rv) {
        for (int c = 0; c < n; ++c) uv[c] = h_eps(reg, pv[c]);
        ops.apply_L(pv, Lp);
        ops.apply_T(uv, Tu);
        for (int c = 0; c < n; ++c)
            rv[c] = uv[c] + tau * Lp[c] + tau * Tu[c] - prob.rhs[c];
        return weighted_l1(rv, vol);
    };

    double res_norm = residual(p, u, res);
    int iters = 0;
    int stalled = 0;
    double best_res = res_norm;
    std::vector<double> D(n), dp, neg_res(n);

    const double eps = reg.epsilon;
    const double lower_kink = reg.kind == GraphKind::TwoPhase ? -eps : 0.0;

    // Active-set semismooth Newton with full steps: the clamp pattern
    // settles in finitely many changes (M-matrix linearizations), after
    // which one step solves the system exactly. A cell may not leap from
    // one saturated branch to the other within a single update; it lands
    // on the opposite kink instead, so the linearization always sees the
    // linear zone once before switching branches. A half-step with the
    // chord slope breaks residual plateaus.
    while (res_norm > tol && iters < max_iter) {
        const bool cycle_breaker = stalled > 0 && stalled % 3 == 0;
        if (cycle_breaker) {
            for (int c = 0; c < n; ++c)
                D[c] = std::abs(p[c]) > 1e-300 ? h_eps(reg, p[c]) / p[c] : 1.0 / eps;
        } else {
            for (int c = 0; c < n; ++c) D[c] = h_eps_slope(reg, p[c]);
        }
        for (int c = 0; c < n; ++c) neg_res[c] = -res[c];
        dp = ops.newton_solve(D, tau, neg_res);
        const double alpha = cycle_breaker ? 0.5 : 1.0;
        for (int c = 0; c < n; ++c) {
            double pn = p[c] + alpha * dp[c];
            if (p[c] > eps && pn < lower_kink)
                pn = lower_kink;
            else if (p[c] < lower_kink && pn > eps)
                pn = eps;
            p[c] = pn;
        }
        res_norm = residual(p, u, res);
        ++iters;
        if (res_norm < 0.9 * best_res)
            stalled = 0;
        else
            ++stalled;
        best_res = std::min(best_res, res_norm);
    }
    if (res_norm > tol)
        throw SolverFailureError("stationary solve did not converge", res_norm, iters);

    StationarySolution sol{ScalarField(prob.grid, std::move(u)),
                           ScalarField(prob.grid, std::move(p))};
    sol.newton_iterations = iters;
    sol.residual_norm = res_norm;
    sol.complementarity = complementarity_integral(sol.u, sol.p);
    const double denom = data_energy(prob);
    sol.energy_ratio = denom > 0.0 ? gradient_energy(sol.p) / denom : 0.0;
    sol.eps_final = reg.epsilon;
    return sol;
}

StationarySolution solve_graph_limit(const StationaryProblem& prob,
                                     std::span<const double> eps_schedule,
                                     const SolverParams& params) {
    if (eps_schedule.empty())
        throw InvalidParameterError("epsilon schedule must be nonempty");
    for (size_t k = 1; k < eps_schedule.size(); ++k)
        if (!(eps_schedule[k] < eps_schedule[k - 1]))
            throw InvalidParameterError("epsilon schedule must be decreasing");

    std::optional<StationarySolution> sol;
    std::vector<double> cauchy;
    for (double eps : eps_schedule) {
        StationaryProblem step = prob;
        step.reg = GraphRegularization(eps, params.graph_kind);
        StationarySolution next =
            solve_regularized(step, params.tol, params.max_iter, sol ? &sol->p : nullptr);
        if (sol) cauchy.push_back((next.u - sol->u).l1_norm());
        sol = std::move(next);
    }
    sol->cauchy_increments = std::move(cauchy);
    if (sol->complementarity > params.comp_tol) {
        throw LimitNotReachedError(
            "graph limit not reached: complementarity " + std::to_string(sol->complementarity) +
                " above gate " + std::to_string(params.comp_tol),
            sol->complementarity);
    }
    return *sol;
}

StationarySolution resolvent_A(const ScalarField& z, const ScalarField& f, double tau,
                               const VelocityField& velocity, const SolverParams& params) {
    if (z.max_norm() > 1.0 + 1e-12)
        throw InvalidParameterError("resolvent input must satisfy |z| <= 1");
    if (params.enforce_admissibility &&
        !check_admissibility(velocity, params.admissibility_tol).passed)
        throw InvalidParameterError("velocity field fails the outward-pointing admissibility check");
    StationaryProblem prob{z.grid_ptr(), velocity, ScalarField(z.grid_ptr()), tau,
                           GraphRegularization(params.schedule().back(), params.graph_kind)};
    for (int c = 0; c < z.size(); ++c) prob.rhs[c] = z[c] + tau * f[c];
    return solve_graph_limit(prob, params.schedule(), params);
}

double gradient_energy(const ScalarField& p) {
    const StructuredGrid& g = p.grid();
    const int nx = g.cells(0);
    const double hx = g.spacing(0);
    double s = 0.0;
    if (g.dimension() == 1) {
        for (int i = 0; i + 1 < nx; ++i) {
            const double d = p[i + 1] - p[i];
            s += d * d / hx;
        }
        if (face_tag(g, 0, 0, 0) == BoundaryTag::Dirichlet) s += p[0] * p[0] * 2.0 / hx;
        if (face_tag(g, 0, 1, 0) == BoundaryTag::Dirichlet)
            s += p[nx - 1] * p[nx - 1] * 2.0 / hx;
        return s;
    }
    const int ny = g.cells(1);
    const double hy = g.spacing(1);
    auto idx = [&](int i, int j) { return j * nx + i; };
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            const double d = p[idx(i + 1, j)] - p[idx(i, j)];
            s += d * d * hy / hx;
        }
        if (face_tag(g, 0, 0, j) == BoundaryTag::Dirichlet)
            s += p[idx(0, j)] * p[idx(0, j)] * 2.0 * hy / hx;
        if (face_tag(g, 0, 1, j) == BoundaryTag::Dirichlet)
            s += p[idx(nx - 1, j)] * p[idx(nx - 1, j)] * 2.0 * hy / hx;
    }
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j + 1 < ny; ++j) {
            const double d = p[idx(i, j + 1)] - p[idx(i, j)];
            s += d * d * hx / hy;
        }
        if (face_tag(g, 1, 0, i) == BoundaryTag::Dirichlet)
            s += p[idx(i, 0)] * p[idx(i, 0)] * 2.0 * hx / hy;
        if (face_tag(g, 1, 1, i) == BoundaryTag::Dirichlet)
            s += p[idx(i, ny - 1)] * p[idx(i, ny - 1)] * 2.0 * hx / hy;
    }
    return s;
}

double discrete_poincare_constant(const GridPtr& grid) {
    const VelocityField zero = VelocityField::zero(grid);
    FvOperators ops(*grid, zero);
    const int n = grid->cell_count();

    std::unique_ptr<TridiagonalSolver> tri;
    std::unique_ptr<SparseDirectSolver> sparse;
    if (ops.banded)
        tri = std::make_unique<TridiagonalSolver>(ops.L_sub, ops.L_diag, ops.L_sup);
    else
        sparse = std::make_unique<SparseDirectSolver>(ops.L2);

    std::vector<double> x(n), Lx(n);
    for (int c = 0; c < n; ++c) x[c] = 1.0 + 0.3 * std::sin(1.0 + c);
    double lambda = 0.0;
    for (int it = 0; it < 200; ++it) {
        std::vector<double> y = ops.banded ? tri->solve(x) : sparse->solve(x);
        double norm = 0.0;
        for (double v : y) norm += v * v;
        norm = std::sqrt(norm);
        for (double& v : y) v /= norm;
        ops.apply_L(y, Lx);
        double num = 0.0;
        for (int c = 0; c < n; ++c) num += y[c] * Lx[c];
        if (it > 4 && std::abs(num - lambda) <= 1e-12 * std::abs(num)) {
            lambda = num;
            break;
        }
        lambda = num;
        x = std::move(y);
    }
    return 1.0 / std::sqrt(lambda);
}

EnergyReport energy_estimate_check(const StationarySolution& sol, const StationaryProblem& prob) {
    EnergyReport rep{};
    rep.c_poincare = discrete_poincare_constant(prob.grid);
    rep.c_grid = 2.0 * (1.0 + rep.c_poincare * rep.c_poincare);
    const double denom = data_energy(prob);
    rep.ratio = denom > 0.0 ? gradient_energy(sol.p) / denom : 0.0;
    rep.within_bound = rep.ratio <= rep.c_grid;
    return rep;
}

double dirichlet_outflux(const ScalarField& u, const ScalarField& p, const VelocityField& v) {
    const StructuredGrid& g = u.grid();
    double flux = 0.0;
    for (const auto& f : g.boundary_faces()) {
        if (f.tag != BoundaryTag::Dirichlet) continue;
        int cell;
        if (g.dimension() == 1) {
            cell = f.side == 0 ? 0 : g.cells(0) - 1;
        } else if (f.axis == 0) {
            cell = g.cell_index(f.side == 0 ? 0 : g.cells(0) - 1, f.index);
        } else {
            cell = g.cell_index(f.index, f.side == 0 ? 0 : g.cells(1) - 1);
        }
        const double h = g.spacing(f.axis);
        const double vn = v.boundary_normal_velocity(f);
        flux += g.face_area(f) * (2.0 * p[cell] / h + std::max(vn, 0.0) * u[cell]);
    }
    return flux;
}

} // namespace heleshaw
