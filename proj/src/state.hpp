#pragma once

#include "grid.hpp"

#include <stdexcept>
#include <vector>

namespace sphns {

/// (rho, u) on the grid nodes at one time instant.  The boundary condition
/// u(a) = 0 lives at the inner face, not at a node; kernels enforce it via
/// ghost values.
struct PrimitiveState {
    double t = 0.0;
    std::vector<double> rho;
    std::vector<double> u;
};

/// The five-field state (rho, h, phi, v, u) of the reformulated system,
/// with h = 2 rho^(delta-1), phi = rho^(gamma-delta) and v the effective
/// velocity.  Construction through the transform module keeps h and phi
/// consistent with rho to round-off; time evolution lets them drift apart
/// by discretization error.
struct ReformState {
    double t = 0.0;
    std::vector<double> rho;
    std::vector<double> h;
    std::vector<double> phi;
    std::vector<double> v;
    std::vector<double> u;
};

inline void check_sizes(const RadialGrid& grid, const PrimitiveState& s) {
    const auto n = static_cast<size_t>(grid.n);
    if (s.rho.size() != n || s.u.size() != n)
        throw std::invalid_argument("state arrays must have exactly grid.n entries");
}

inline void check_sizes(const RadialGrid& grid, const ReformState& s) {
    const auto n = static_cast<size_t>(grid.n);
    if (s.rho.size() != n || s.h.size() != n || s.phi.size() != n ||
        s.v.size() != n || s.u.size() != n)
        throw std::invalid_argument("state arrays must have exactly grid.n entries");
}

}  // namespace sphns
