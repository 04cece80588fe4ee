#ifndef HELESHAW_ERRORS_HPP
#define HELESHAW_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace heleshaw {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Grid or boundary-tag construction is inconsistent (no Dirichlet part,
/// empty selection, nonpositive spacing, ...).
class InvalidGeometryError : public Error {
public:
    using Error::Error;
};

/// A scalar argument is outside its admissible range.
class InvalidParameterError : public Error {
public:
    using Error::Error;
};

/// Nonlinear solve did not reach the requested residual.
class SolverFailureError : public Error {
public:
    SolverFailureError(const std::string& what, double last_residual, int iterations)
        : Error(what), last_residual(last_residual), iterations(iterations) {}
    double last_residual;
    int iterations;
};

/// Graph-limit extraction did not produce a complementary pair.
class LimitNotReachedError : public Error {
public:
    LimitNotReachedError(const std::string& what, double complementarity)
        : Error(what), complementarity(complementarity) {}
    double complementarity;
};

/// Time step violates the certified contraction condition of the
/// reaction fixed point.
class InvalidStepError : public Error {
public:
    using Error::Error;
};

/// Two trajectories cannot be compared (different grids, steps, horizons).
class InvalidComparisonError : public Error {
public:
    using Error::Error;
};

/// Scenario data violate the hypotheses of the property being checked.
class InvalidScenarioError : public Error {
public:
    using Error::Error;
};

/// Run-configuration file could not be parsed or validated.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what, std::vector<std::string> violations = {})
        : Error(what), violations(std::move(violations)) {}
    std::vector<std::string> violations;
};

} // namespace heleshaw

#endif
