#pragma once

#include "grid.hpp"
#include "params.hpp"
#include "state.hpp"

#include <span>
#include <vector>

namespace sphns {

/// base^expo through exp/log so that powers of near-floor densities
/// (rho ~ 1e-300) neither underflow nor lose the round-trip property.
double positive_pow(double base, double expo);

/// Derived variables from (rho, u):
///   h = 2 rho^(delta-1),  phi = rho^(gamma-delta),
///   v = u + (delta/(delta-1)) * d_r h.
/// The v formula via h_r is used because h keeps a bounded gradient near
/// vacuum; the rho_r route is exposed separately as a cross-check.
ReformState to_reformulated(const PrimitiveState& s, const PhysParams& params,
                            const RadialGrid& grid);

/// The other algebraic route, v = u + 2 delta rho^(delta-2) d_r rho.
/// Agrees with to_reformulated's v up to one derivative's discretization
/// error.
std::vector<double> effective_velocity_from_rho(const RadialGrid& grid,
                                                const PhysParams& params,
                                                std::span<const double> rho,
                                                std::span<const double> u);

/// rho = (h/2)^(1/(delta-1)), u copied.
PrimitiveState to_primitive(const ReformState& s, const PhysParams& params);

/// max over nodes of |d_r(rho^gamma) - (gamma/(2 delta)) rho^(gamma+1-delta) (v-u)|.
/// Vanishes identically for constant rho and decays at second order under
/// refinement when v was built by to_reformulated.
double pressure_gradient_identity_residual(const ReformState& s,
                                           const PhysParams& params,
                                           const RadialGrid& grid);

/// Relative gap between the two groupings of the momentum source terms,
///   delta (v-u) u_r + (delta-1)(v-u)(2/r) u     and
///   (v-u) u_r + (delta-1)(v-u)(u_r + 2u/r),
/// which coincide identically.  Returns max_i |A_i - B_i| normalized by the
/// larger grouping magnitude (0 when both vanish).
double momentum_forms_agree(const ReformState& s, const RadialGrid& grid,
                            const PhysParams& params);

}  // namespace sphns
