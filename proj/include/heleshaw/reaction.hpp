#ifndef HELESHAW_REACTION_HPP
#define HELESHAW_REACTION_HPP

#include <functional>
#include <string>
#include <vector>

#include "heleshaw/velocity.hpp"

namespace heleshaw {

/// Caratheodory reaction term g(t, x, r) with a declared one-sided
/// Lipschitz modulus R(t) and sup-norm surrogates for the envelope bounds
/// g+(.,-1) and g-(.,1). Evaluators must be pure; the checks treat them as
/// black boxes and certify the conditions by finite sampling.
class ReactionTerm {
public:
    using Evaluator = std::function<double(double t, int cell, double r)>;
    using Modulus = std::function<double(double t)>;

    ReactionTerm(Evaluator evaluator, Modulus r_modulus,
                 double bound_plus_at_minus_one, double bound_minus_at_plus_one);

    static ReactionTerm zero();
    static ReactionTerm constant(double c);
    /// g(r) = a - b r.
    static ReactionTerm linear_decay(double a, double b);
    /// g(r) = rate * r * (1 - r).
    static ReactionTerm logistic(double rate);
    /// Autonomous g interpolated piecewise-linearly from (r, g) samples;
    /// the one-sided Lipschitz modulus must be declared by the caller.
    static ReactionTerm table(std::vector<double> r_values, std::vector<double> g_values,
                              double r_modulus);

    double operator()(double t, int cell, double r) const { return evaluator_(t, cell, r); }
    double r_modulus(double t) const { return r_modulus_(t); }
    double bound_plus_at_minus_one() const { return bound_plus_minus1_; }
    double bound_minus_at_plus_one() const { return bound_minus_plus1_; }

    /// Sampled sup of R over [t0, t1], used to certify tau * R < 1.
    double sup_r_modulus(double t0, double t1, int samples = 64) const;

private:
    Evaluator evaluator_;
    Modulus r_modulus_;
    double bound_plus_minus1_;
    double bound_minus_plus1_;
};

/// Sample lattice for the condition checks: times x cells x r-grid on
/// [r_min, r_max] (the state interval [-1, 1] by default).
struct SamplingSpec {
    std::vector<double> times{0.0};
    int r_samples = 9;
    int cell_stride = 1;
    double r_min = -1.0;
    double r_max = 1.0;

    static SamplingSpec over_horizon(double horizon, int time_samples = 5,
                                     int r_samples = 9, int cell_stride = 1);
    std::vector<double> r_grid() const;
};

/// Verdicts and worst-case margins for the structural conditions on g;
/// a margin >= -tolerance means the condition holds on the sample lattice.
struct ConditionReport {
    bool g1, g2, g3, g4, g5;
    double margin_g1;   // 0 when all samples are finite
    double margin_g2;   // min of R(t)(b-a) - (g(b) - g(a)) over sampled a < b
    double margin_g3;   // min of div V - g(., 1)
    double margin_g4;   // min of g(., -1) - div V
    double margin_g5;   // min of g(., 0)
    double tolerance;

    bool all_passed() const { return g1 && g2 && g3 && g4 && g5; }
};

ConditionReport check_conditions(const ReactionTerm& g, const VelocityField& v,
                                 const SamplingSpec& samples);

/// g_alpha(., r) = alpha g(., r / alpha); preserves the one-sided Lipschitz
/// modulus.
ReactionTerm scale_reaction(const ReactionTerm& g, double alpha);

/// Two-sided envelope -g-(.,1) - R(1-r) <= g(.,r) <= g+(.,-1) + R(1+r)
/// evaluated pointwise on the sample lattice within 1e-9.
bool envelope_check(const ReactionTerm& g, const GridPtr& grid, const SamplingSpec& samples);

} // namespace heleshaw

#endif
