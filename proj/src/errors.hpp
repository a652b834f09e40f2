#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sphns {

/// Raised when a configuration file is malformed or violates the schema.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Runtime breakdown of a solver kernel or of the time integration.
/// Carries the kind of failure and, once the stepper has attached it,
/// the simulation time at which the step failed.
class SolverError : public std::runtime_error {
public:
    enum class Kind {
        cfl,                 // advective CFL number exceeded
        positivity,          // a positive field was driven to <= 0
        non_contraction,     // Picard residual grew three iterations in a row
        singular_matrix,     // tridiagonal solve hit a vanishing pivot
        characteristic_exit  // a backward characteristic left the domain
    };

    SolverError(Kind kind, const std::string& what,
                double time = std::numeric_limits<double>::quiet_NaN())
        : std::runtime_error(what), kind_(kind), time_(time) {}

    Kind kind() const { return kind_; }
    double time() const { return time_; }
    bool has_time() const { return !std::isnan(time_); }

    SolverError at_time(double t) const { return SolverError(kind_, what(), t); }

private:
    Kind kind_;
    double time_;
};

}  // namespace sphns
