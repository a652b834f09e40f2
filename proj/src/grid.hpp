#pragma once

#include <span>
#include <vector>

namespace sphns {

/// Cell-centered finite-volume mesh on the truncated radial interval
/// [a, r_max].  Face radii are stored explicitly because mass bookkeeping
/// runs through r^2-weighted face fluxes.
struct RadialGrid {
    double a = 0.0;
    double r_max = 0.0;
    int n = 0;
    std::vector<double> nodes;  // cell centers, size n
    std::vector<double> faces;  // cell faces, size n+1, faces[0] == a
    std::vector<double> dr;     // cell widths, size n

    double min_dr() const;
};

/// stretch == 1 gives a uniform partition; stretch > 1 widens cells
/// geometrically toward r_max with width ratio stretch^(1/n).
RadialGrid make_grid(double a, double r_max, int n, double stretch = 1.0);

/// Midpoint-quadrature weighted norm
///   ( sum_i  r_i^(p*r_pow) * rho_i^(p*rho_pow) * |field_i|^p * dr_i )^(1/p).
/// rho may be empty when rho_pow == 0.
double weighted_lp_norm(const RadialGrid& grid, std::span<const double> field,
                        std::span<const double> rho, double p, double r_pow,
                        double rho_pow);

/// max_i |field_i|; the discrete stand-in for the L-infinity norm.
double sup_norm(std::span<const double> field);

/// Three-point Lagrange differentiation: second order at interior nodes,
/// one-sided second order at the two ends.  Exact for quadratics on any
/// (also nonuniform) grid.
std::vector<double> radial_derivative(const RadialGrid& grid,
                                      std::span<const double> field);

}  // namespace sphns
