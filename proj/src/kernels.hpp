#pragma once

#include "grid.hpp"
#include "params.hpp"

#include <span>
#include <vector>

namespace sphns {

enum class OuterBc { dirichlet_zero, zero_gradient };

/// Face reconstruction of the conservative density kernel.  The rho equation
/// always runs in conservative finite-volume form; h and phi always run in
/// upwind advective form.
enum class Limiter { none, minmod };

struct MomentumSolveConfig {
    double theta = 0.5;  // implicitness weight of the diffusion term, in [1/2, 1]
    OuterBc outer = OuterBc::dirichlet_zero;
    bool diffusion_only = false;  // drop advection and the (v-u) sources (verification mode)
};

/// Throws SolverError(cfl) when max_speed * dt / min(dr) exceeds 0.9.
void enforce_cfl(const RadialGrid& grid, double max_speed, double dt);

/// Node velocities interpolated to faces.  The inner face always carries
/// u(a) = 0; the outer face carries 0 (dirichlet) or the last node value
/// (zero gradient).
std::vector<double> face_velocities(const RadialGrid& grid,
                                    std::span<const double> u_node,
                                    OuterBc outer);

/// One conservative finite-volume step of
///   rho_t + (1/r^2) (r^2 rho u)_r = source,
/// with upwind (optionally minmod-reconstructed) face densities and fluxes
/// F = r_f^2 rho_up u_f on cell measures V_i = r_i^2 dr_i.  The discrete
/// mass sum_i rho_i r_i^2 dr_i changes only through the two boundary fluxes.
std::vector<double> step_continuity(const RadialGrid& grid,
                                    std::span<const double> rho,
                                    std::span<const double> u_face, double dt,
                                    Limiter limiter = Limiter::none,
                                    std::span<const double> source = {});

/// One upwind step of the advected-scalar equation
///   q_t + q_r u + coeff * q * (u_r + 2u/r) = 0
/// (coeff = delta-1 for h, gamma-delta for phi).  The stretching factor is
/// applied explicitly; the step refuses to run when
/// dt * |coeff| * max|u_r + 2u/r| >= 1, which is the positivity bound.
std::vector<double> step_advected_scalar(const RadialGrid& grid,
                                         std::span<const double> q,
                                         std::span<const double> u_node,
                                         double coeff, double dt);

/// One step of  v_t + u v_r + (gamma/(2 delta)) phi (v - u) = 0:
/// upwind advection followed by exact exponential relaxation toward u,
///   v <- u + (v_adv - u) * exp(-(gamma/(2 delta)) phi dt).
std::vector<double> step_effective_velocity(const RadialGrid& grid,
                                            std::span<const double> v,
                                            std::span<const double> u_node,
                                            std::span<const double> phi,
                                            double dt, const PhysParams& params);

/// Volumetric expansion rate u_r + 2u/r = r^-2 (r^2 u)_r evaluated at faces
/// from node values (boundary faces use the ghost construction of the
/// momentum solve).
std::vector<double> expansion_rate_faces(const RadialGrid& grid,
                                         std::span<const double> u_node,
                                         OuterBc outer);

/// The degenerate diffusion operator  L u = delta * h * (u_r + 2u/r)_r
/// applied explicitly at nodes.
std::vector<double> momentum_diffusion(const RadialGrid& grid,
                                       std::span<const double> h,
                                       std::span<const double> u,
                                       double delta, OuterBc outer);

/// One theta-implicit step of the momentum equation
///   u_t + u u_r + (gamma/(2 delta)) phi (v-u)
///     = delta h (u_r + 2u/r)_r + delta (v-u) u_r + (delta-1)(v-u)(2/r) u.
/// Advection and the (v-u) sources are evaluated explicitly at u_coef (the
/// frozen Picard iterate); the diffusion acts theta-implicitly between
/// u_start (the time level) and the new iterate, with coefficient h frozen.
/// One tridiagonal solve per call.  The inner boundary u(a) = 0 and the
/// outer condition are built into the operator through mirror ghosts, so
/// the face values satisfy them exactly.
std::vector<double> step_momentum(const RadialGrid& grid,
                                  std::span<const double> h,
                                  std::span<const double> phi,
                                  std::span<const double> v,
                                  std::span<const double> u_start,
                                  std::span<const double> u_coef, double dt,
                                  const PhysParams& params,
                                  const MomentumSolveConfig& cfg,
                                  std::span<const double> source = {});

/// In-place Thomas solve of a tridiagonal system; rhs becomes the solution.
/// lower[0] and upper[n-1] are ignored.  Throws SolverError(singular_matrix)
/// on a vanishing pivot.
void solve_tridiagonal(std::span<double> lower, std::span<double> diag,
                       std::span<double> upper, std::span<double> rhs);

}  // namespace sphns
