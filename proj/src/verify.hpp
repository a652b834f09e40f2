#pragma once

#include "grid.hpp"
#include "params.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace sphns {

/// Closed-form field descriptor f(r, t) carrying its analytic derivatives,
/// so oracles never touch the solver's difference stencils.
struct ScalarField {
    std::function<double(double, double)> value;
    std::function<double(double, double)> d_r;
    std::function<double(double, double)> d_rr;
    std::function<double(double, double)> d_t;
};

/// Exact residuals of the primitive system under the manufactured pair
/// (rho_m, u_m), evaluated at the grid nodes at time t:
///   source_rho = rho_t + rho_r u + rho u_r + 2 rho u / r
///   source_u   = u_t + u u_r + gamma rho^(gamma-2) rho_r - V(rho,u)/rho
/// with V the full viscous operator.  A solver fed these sources reproduces
/// (rho_m, u_m).
std::pair<std::vector<double>, std::vector<double>> mms_sources(
    const ScalarField& rho_m, const ScalarField& u_m, const RadialGrid& grid,
    const PhysParams& params, double t);

/// rho(r_query, t) for transport under a prescribed smooth velocity, by
/// integrating backward characteristics dr/ds = u together with the
/// along-path stretching integral with an adaptive Runge-Kutta-Fehlberg
/// scheme (tolerance tol).  Throws SolverError(characteristic_exit) when a
/// path leaves [a, r_max].
std::vector<double> characteristics_oracle(
    const std::function<double(double)>& rho0, const ScalarField& u, double t,
    std::span<const double> r_query, double a, double r_max, double tol = 1e-10);

/// Least-squares slope of log(error) against log(spacing); needs at least 3
/// strictly positive pairs with strictly decreasing spacings.
double convergence_order(std::span<const double> errors,
                         std::span<const double> spacings);

struct MmsStudyResult {
    std::vector<int> ns;
    std::vector<double> errors;
    double slope = 0.0;
};

/// Manufactured transport study: the continuity kernel with analytic face
/// velocities and source, refined over the given ladder.  First-order upwind
/// puts the expected slope near 1.
MmsStudyResult mms_transport_study(const PhysParams& params,
                                   std::span<const int> ladder, double r_max,
                                   double t_end, double cfl);

/// Manufactured diffusion study: the momentum kernel in diffusion-only mode
/// with constant h, theta-weighted in time.  theta = 1/2 puts the expected
/// slope near 2.
MmsStudyResult mms_diffusion_study(const PhysParams& params, double theta,
                                   std::span<const int> ladder, double r_max,
                                   double t_end);

/// Manufactured study of the coupled primitive system: rho by the
/// conservative kernel, u by the full momentum kernel with (h, phi, v)
/// derived from the current rho each step.  Upwind transport limits the
/// expected slope to first order.  The reported error combines both fields.
MmsStudyResult mms_coupled_study(const PhysParams& params,
                                 std::span<const int> ladder, double r_max,
                                 double t_end, double cfl);

}  // namespace sphns
