#include "heleshaw/reaction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace heleshaw {

ReactionTerm::ReactionTerm(Evaluator evaluator, Modulus r_modulus,
                           double bound_plus_at_minus_one, double bound_minus_at_plus_one)
    : evaluator_(std::move(evaluator)),
      r_modulus_(std::move(r_modulus)),
      bound_plus_minus1_(bound_plus_at_minus_one),
      bound_minus_plus1_(bound_minus_at_plus_one) {}

ReactionTerm ReactionTerm::zero() {
    return ReactionTerm([](double, int, double) { return 0.0; },
                        [](double) { return 0.0; }, 0.0, 0.0);
}

ReactionTerm ReactionTerm::constant(double c) {
    return ReactionTerm([c](double, int, double) { return c; },
                        [](double) { return 0.0; },
                        std::max(c, 0.0), std::max(-c, 0.0));
}

ReactionTerm ReactionTerm::linear_decay(double a, double b) {
    // dg/dr = -b, so the one-sided modulus is max(-b, 0) = (-b)+.
    const double mod = std::max(-b, 0.0);
    return ReactionTerm([a, b](double, int, double r) { return a - b * r; },
                        [mod](double) { return mod; },
                        std::max(a + b, 0.0), std::max(-(a - b), 0.0));
}

ReactionTerm ReactionTerm::logistic(double rate) {
    // dg/dr = rate (1 - 2r) peaks at 3|rate| on [-1, 1].
    const double mod = 3.0 * std::abs(rate);
    return ReactionTerm([rate](double, int, double r) { return rate * r * (1.0 - r); },
                        [mod](double) { return mod; },
                        std::max(-2.0 * rate, 0.0), 0.0);
}

ReactionTerm ReactionTerm::table(std::vector<double> r_values, std::vector<double> g_values,
                                 double r_modulus) {
    if (r_values.size() != g_values.size() || r_values.size() < 2)
        throw InvalidParameterError("reaction table needs matching r and g columns of length >= 2");
    if (!std::is_sorted(r_values.begin(), r_values.end()))
        throw InvalidParameterError("reaction table r column must be increasing");
    auto eval = [r = std::move(r_values), g = std::move(g_values)](double, int, double x) {
        if (x <= r.front()) return g.front();
        if (x >= r.back()) return g.back();
        const auto it = std::upper_bound(r.begin(), r.end(), x);
        const size_t k = static_cast<size_t>(it - r.begin());
        const double w = (x - r[k - 1]) / (r[k] - r[k - 1]);
        return (1.0 - w) * g[k - 1] + w * g[k];
    };
    const double gm1 = eval(0.0, 0, -1.0);
    const double gp1 = eval(0.0, 0, 1.0);
    return ReactionTerm(std::move(eval), [r_modulus](double) { return r_modulus; },
                        std::max(gm1, 0.0), std::max(-gp1, 0.0));
}

double ReactionTerm::sup_r_modulus(double t0, double t1, int samples) const {
    double s = 0.0;
    for (int k = 0; k <= samples; ++k) {
        const double t = t0 + (t1 - t0) * k / std::max(samples, 1);
        s = std::max(s, r_modulus_(t));
    }
    return s;
}

SamplingSpec SamplingSpec::over_horizon(double horizon, int time_samples,
                                        int r_samples, int cell_stride) {
    SamplingSpec spec;
    spec.times.clear();
    for (int k = 0; k < time_samples; ++k)
        spec.times.push_back(horizon * k / std::max(time_samples - 1, 1));
    spec.r_samples = r_samples;
    spec.cell_stride = cell_stride;
    return spec;
}

std::vector<double> SamplingSpec::r_grid() const {
    std::vector<double> r(r_samples);
    for (int k = 0; k < r_samples; ++k)
        r[k] = r_min + (r_max - r_min) * k / std::max(r_samples - 1, 1);
    return r;
}

ConditionReport check_conditions(const ReactionTerm& g, const VelocityField& v,
                                 const SamplingSpec& samples) {
    const auto r_grid = samples.r_grid();
    const ScalarField& div = v.divergence();
    const int n = div.size();

    ConditionReport rep{};
    rep.tolerance = 1e-9;
    rep.margin_g1 = 0.0;
    rep.margin_g2 = std::numeric_limits<double>::infinity();
    rep.margin_g3 = std::numeric_limits<double>::infinity();
    rep.margin_g4 = std::numeric_limits<double>::infinity();
    rep.margin_g5 = std::numeric_limits<double>::infinity();

    bool finite = true;
    for (double t : samples.times) {
        const double mod = g.r_modulus(t);
        if (!std::isfinite(mod)) finite = false;
        for (int c = 0; c < n; c += samples.cell_stride) {
            const double g_at_1 = g(t, c, 1.0);
            const double g_at_m1 = g(t, c, -1.0);
            const double g_at_0 = g(t, c, 0.0);
            if (!std::isfinite(std::max(g_at_1, 0.0)) || !std::isfinite(std::max(-g_at_m1, 0.0)) ||
                !std::isfinite(g_at_0))
                finite = false;
            rep.margin_g3 = std::min(rep.margin_g3, div[c] - g_at_1);
            rep.margin_g4 = std::min(rep.margin_g4, g_at_m1 - div[c]);
            rep.margin_g5 = std::min(rep.margin_g5, g_at_0);
            for (size_t ia = 0; ia < r_grid.size(); ++ia) {
                const double ga = g(t, c, r_grid[ia]);
                if (!std::isfinite(ga)) finite = false;
                for (size_t ib = ia + 1; ib < r_grid.size(); ++ib) {
                    const double gb = g(t, c, r_grid[ib]);
                    rep.margin_g2 = std::min(
                        rep.margin_g2, mod * (r_grid[ib] - r_grid[ia]) - (gb - ga));
                }
            }
        }
    }
    if (!finite) rep.margin_g1 = -std::numeric_limits<double>::infinity();
    rep.g1 = finite;
    rep.g2 = rep.margin_g2 >= -rep.tolerance;
    rep.g3 = rep.margin_g3 >= -rep.tolerance;
    rep.g4 = rep.margin_g4 >= -rep.tolerance;
    rep.g5 = rep.margin_g5 >= -rep.tolerance;
    return rep;
}

ReactionTerm scale_reaction(const ReactionTerm& g, double alpha) {
    if (!(alpha > 0.0)) throw InvalidParameterError("reaction scaling alpha must be positive");
    ReactionTerm base = g;
    return ReactionTerm(
        [base, alpha](double t, int c, double r) { return alpha * base(t, c, r / alpha); },
        [base](double t) { return base.r_modulus(t); },
        alpha * g.bound_plus_at_minus_one(), alpha * g.bound_minus_at_plus_one());
}

bool envelope_check(const ReactionTerm& g, const GridPtr& grid, const SamplingSpec& samples) {
    const auto r_grid = samples.r_grid();
    const int n = grid->cell_count();
    for (double t : samples.times) {
        const double mod = g.r_modulus(t);
        for (int c = 0; c < n; c += samples.cell_stride) {
            const double upper_base = std::max(g(t, c, -1.0), 0.0);
            const double lower_base = std::max(-g(t, c, 1.0), 0.0);
            for (double r : r_grid) {
                const double val = g(t, c, r);
                if (val > upper_base + mod * (1.0 + r) + 1e-9) return false;
                if (val < -lower_base - mod * (1.0 - r) - 1e-9) return false;
            }
        }
    }
    return true;
}

} // namespace heleshaw
