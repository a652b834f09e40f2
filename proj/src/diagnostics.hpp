#pragma once

#include "grid.hpp"
#include "params.hpp"
#include "state.hpp"

#include <tuple>
#include <utility>

namespace sphns {

/// Every monitored functional evaluated on one state.  Sign-definite fields
/// (mass, the dissipation terms, the moments) are nonnegative by
/// construction; the gamma = 1 energies may be negative because they carry
/// the rho*ln(rho) part.
struct DiagnosticsReport {
    double mass = 0.0;             // integral r^2 rho
    double energy = 0.0;           // integral r^2 (rho u^2 / 2 + pressure part)
    double bd_energy = 0.0;        // same with v in place of u
    double diss_expansion = 0.0;   // integral rho^delta (2 delta - 4/3) r^2 (u_r + 2u/r)^2
    double diss_shear = 0.0;       // integral rho^delta (4/3) r^2 (u_r - u/r)^2
    double rho_sup = 0.0;
    double r_field_sup = 0.0;      // sup rho^(delta - 1/2)
    double wlp_u = 0.0;            // || r^(2/p) rho^(1/p) u ||_p at p = p_star(delta)
    double wlp_v = 0.0;
    double moment_alpha = 0.0;     // integral r^(2+alpha) rho
    double log_entropy = 0.0;      // -integral r^2 rho ln rho (gamma = 1 only, else 0)
    double ru_l2 = 0.0;
    double rv_l2 = 0.0;
    double v_sup = 0.0;
    // extra monitors, not part of the snapshot format
    double ru_r_l2 = 0.0;
    double u_sup = 0.0;
};

/// Discrete mass functional, identical quadrature to
/// weighted_lp_norm(p=1, r_pow=2, rho_pow=1, field=1).
double mass(const ReformState& s, const RadialGrid& grid);
double mass(std::span<const double> rho, const RadialGrid& grid);

/// (energy, bd_energy, diss_expansion, diss_shear) for gamma > 1.
/// Throws std::domain_error at gamma == 1 (that path is gamma1_entropy).
std::tuple<double, double, double, double> energy_and_bd(const ReformState& s,
                                                         const RadialGrid& grid,
                                                         const PhysParams& params);

/// Pointwise identity between the quadratic form of the viscous work and its
/// expansion/shear split:
///   lhs = 2 delta (r u_r)^2 + (8 delta - 4) u^2 + (8 delta - 8) r u u_r
///   rhs = (2 delta - 4/3) r^2 (u_r + 2u/r)^2 + (4/3) r^2 (u_r - u/r)^2.
std::pair<double, double> dissipation_split_identity(double delta, double r,
                                                     double u, double u_r);

/// (-integral r^2 rho ln rho, integral r^(2+alpha) rho) for gamma == 1.
std::pair<double, double> gamma1_entropy(const ReformState& s,
                                         const RadialGrid& grid,
                                         const PhysParams& params);

/// (sup rho^(delta-1/2), || d_r rho^(delta-1/2) ||_2) — the two quantities
/// whose boundedness yields the uniform density bound.
std::pair<double, double> density_bound_functionals(const ReformState& s,
                                                    const RadialGrid& grid,
                                                    const PhysParams& params);

/// C^1 cutoff used for the weighted-moment bookkeeping: 1 on [0,1/2], a cubic
/// bridge on [1/2,1], e^(-s) beyond.  Satisfies |zeta'(s)| <= C zeta(s).
double cutoff_weight(double s);
double cutoff_weight_derivative(double s);

/// All functionals on one state; p for the weighted norms is p_star(delta).
DiagnosticsReport full_report(const ReformState& s, const RadialGrid& grid,
                              const PhysParams& params);

}  // namespace sphns
