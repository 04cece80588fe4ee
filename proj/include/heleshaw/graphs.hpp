#ifndef HELESHAW_GRAPHS_HPP
#define HELESHAW_GRAPHS_HPP

#include "heleshaw/errors.hpp"

namespace heleshaw {

enum class GraphKind { TwoPhase, OnePhase };

/// Lipschitz regularization of the sign graph (two phase) or of its
/// nonnegative branch (one phase). The induced map is nondecreasing,
/// bounded by 1 in absolute value, 1/epsilon-Lipschitz, and vanishes at 0.
struct GraphRegularization {
    double epsilon;
    GraphKind kind = GraphKind::TwoPhase;

    GraphRegularization(double eps, GraphKind k = GraphKind::TwoPhase)
        : epsilon(eps), kind(k) {
        if (!(eps > 0.0)) throw InvalidParameterError("graph epsilon must be positive");
    }
};

/// Regularized graph value: clamp(r/eps, -1, 1) for the two-phase kind,
/// clamp(r/eps, 0, 1) for the one-phase kind.
double h_eps(const GraphRegularization& reg, double r);

/// Slope of h_eps usable as a semismooth derivative: 1/eps on the closure
/// of the linear zone, 0 on the saturated branches.
double h_eps_slope(const GraphRegularization& reg, double r);

/// min(r+/eps, 1).
double h_eps_plus(double eps, double r);

/// C1 primitive of h_eps_plus: (r+)^2/(2 eps) for r <= eps, r - eps/2 above.
double tilde_h_eps(double eps, double r);

/// Resolvent of the sign graph, (I + lambda sign)^{-1}: the soft threshold
/// at level lambda.
double resolvent_sign(double lambda, double r);

/// Resolvent of the regularized graph: solves x + lambda h_eps(x) = r by
/// bisection to 1e-12.
double resolvent_h_eps(const GraphRegularization& reg, double lambda, double r);

struct StepValues {
    double sign0;
    double sign0_plus;
    double sign0_minus;
};

/// Pointwise step selections sign0, sign0+, sign0- (all vanish at 0).
StepValues step_functions(double r);

} // namespace heleshaw

#endif
