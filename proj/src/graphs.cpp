#include "heleshaw/graphs.hpp"

#include <algorithm>
#include <cmath>

namespace heleshaw {

double h_eps(const GraphRegularization& reg, double r) {
    const double lo = reg.kind == GraphKind::TwoPhase ? -1.0 : 0.0;
    return std::clamp(r / reg.epsilon, lo, 1.0);
}

double h_eps_slope(const GraphRegularization& reg, double r) {
    const double lo = reg.kind == GraphKind::TwoPhase ? -reg.epsilon : 0.0;
    return (r >= lo && r <= reg.epsilon) ? 1.0 / reg.epsilon : 0.0;
}

double h_eps_plus(double eps, double r) {
    return std::min(std::max(r, 0.0) / eps, 1.0);
}

double tilde_h_eps(double eps, double r) {
    if (r <= eps) {
        const double rp = std::max(r, 0.0);
        return rp * rp / (2.0 * eps);
    }
    return r - eps / 2.0;
}

double resolvent_sign(double lambda, double r) {
    if (r > lambda) return r - lambda;
    if (r < -lambda) return r + lambda;
    return 0.0;
}

double resolvent_h_eps(const GraphRegularization& reg, double lambda, double r) {
    if (!(lambda > 0.0)) throw InvalidParameterError("resolvent parameter lambda must be positive");
    // x + lambda h_eps(x) is strictly increasing with slope in [1, 1 + lambda/eps];
    // bracket the root and bisect.
    double lo = r - lambda, hi = r + lambda;
    auto g = [&](double x) { return x + lambda * h_eps(reg, x) - r; };
    if (g(lo) > 0.0) lo = r - 2.0 * lambda - 1.0;
    if (g(hi) < 0.0) hi = r + 2.0 * lambda + 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) <= 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

StepValues step_functions(double r) {
    StepValues s{0.0, 0.0, 0.0};
    if (r > 0.0) {
        s.sign0 = 1.0;
        s.sign0_plus = 1.0;
    } else if (r < 0.0) {
        s.sign0 = -1.0;
        s.sign0_minus = 1.0;
    }
    return s;
}

} // namespace heleshaw
