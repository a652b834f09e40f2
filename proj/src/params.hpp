#pragma once

#include <string>
#include <utility>

namespace sphns {

/// Physical constants of the model. Pressure is P(rho) = rho^gamma and the
/// shear viscosity is mu(rho) = rho^delta; the bulk viscosity is tied to mu
/// through lambda = 2(mu' rho - mu) = 2(delta-1) rho^delta, which is why
/// delta is restricted to [2/3, 1): below 2/3 the combination 2mu + 3lambda
/// turns negative.
struct PhysParams {
    double gamma = 1.2;  // adiabatic exponent, >= 1
    double delta = 0.8;  // viscosity exponent, in [2/3, 1)
    double a = 1.0;      // inner radius of the domain, > 0
    double eta = 0.0;    // constant density shift removing the far-field vacuum, >= 0
    double alpha = 0.0;  // weighted-moment exponent, in (1,2) when gamma == 1, else 0

    static constexpr double pressure_coeff = 1.0;
    static constexpr double viscosity_coeff = 1.0;

    /// Throws std::invalid_argument when any invariant is violated.
    void validate() const;
};

/// Everything the delta-admissibility check computes, kept around so callers
/// can distinguish "the viscosity law is valid" from "the solvability
/// condition holds".
struct AdmissibilityReport {
    double gamma = 0.0;
    double delta = 0.0;
    double k = 0.0;       // K(delta) = 2 delta (2 delta - 1) / (1 - delta)^2
    double p_star = 0.0;  // (4 - 2 delta) / (1 - delta)
    double p_min = 0.0;   // lower root of p^2 - K p + K = 0
    double p_max = 0.0;   // upper root of p^2 - K p + K = 0
    bool delta_in_law_range = false;  // 2/3 <= delta < 1
    bool admissible = false;          // delta_in_law_range && p_star <= p_max
    std::string reason;               // empty when admissible
};

/// K(delta) = 2 delta (2 delta - 1) / (1 - delta)^2.  Requires 0 < delta < 1.
double k_of_delta(double delta);

/// Roots (p_min, p_max) of p^2 - K(delta) p + K(delta) = 0.  Requires
/// K(delta) >= 4, i.e. delta >= 2/3.  The discriminant is evaluated as
/// K*(K-4) so that it stays accurate when K blows up as delta -> 1.
std::pair<double, double> p_range(double delta);

/// The exponent (4 - 2 delta) / (1 - delta) used to close the weighted
/// velocity estimate.  Requires 0 <= delta < 1.
double p_star(double delta);

/// Verdict of the solvability condition: 2/3 <= delta < 1 and
/// p_star(delta) <= p_max(delta).  Never throws; an out-of-range delta
/// yields admissible = false with a reason.
AdmissibilityReport check_admissibility(double gamma, double delta);
AdmissibilityReport check_admissibility(const PhysParams& params);

/// Root delta* of p_star(delta) - p_max(delta) = 0 on (2/3, 1), located by
/// bisection to within tol.  Admissibility holds above the root and fails
/// below it.  Deterministic: identical tol gives bit-identical results.
double find_delta_star(double tol);

/// The one-dimensional exponent condition gamma - delta - 1/p >= 0 that this
/// solver does not require; exposed for comparison sweeps.
bool exponent_condition(double gamma, double delta, double p);

}  // namespace sphns
