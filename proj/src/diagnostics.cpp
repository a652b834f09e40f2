#include "diagnostics.hpp"

#include "transform.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace sphns {

double mass(std::span<const double> rho, const RadialGrid& grid) {
    std::vector<double> ones(grid.n, 1.0);
    return weighted_lp_norm(grid, ones, rho, 1.0, 2.0, 1.0);
}

double mass(const ReformState& s, const RadialGrid& grid) {
    return mass(s.rho, grid);
}

namespace {

// Midpoint quadrature of a per-node integrand.
template <typename F>
double integrate(const RadialGrid& grid, F f) {
    double sum = 0.0;
    for (int i = 0; i < grid.n; ++i)
        sum += f(i) * grid.dr[i];
    return sum;
}

double pressure_part(const ReformState& s, const RadialGrid& grid,
                     const PhysParams& params) {
    if (params.gamma > 1.0) {
        return integrate(grid, [&](int i) {
            const double r = grid.nodes[i];
            return r * r * positive_pow(s.rho[i], params.gamma) / (params.gamma - 1.0);
        });
    }
    // gamma = 1: the role of the pressure part is played by r^2 rho ln rho.
    return integrate(grid, [&](int i) {
        const double r = grid.nodes[i];
        return r * r * s.rho[i] * std::log(s.rho[i]);
    });
}

std::pair<double, double> dissipation_quadratures(const ReformState& s,
                                                  const RadialGrid& grid,
                                                  const PhysParams& params) {
    const auto u_r = radial_derivative(grid, s.u);
    const double ce = 2.0 * params.delta - 4.0 / 3.0;
    double expansion = 0.0, shear = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const double r = grid.nodes[i];
        const double mu = positive_pow(s.rho[i], params.delta);
        const double div = u_r[i] + 2.0 * s.u[i] / r;
        const double sh = u_r[i] - s.u[i] / r;
        expansion += mu * ce * r * r * div * div * grid.dr[i];
        shear += mu * (4.0 / 3.0) * r * r * sh * sh * grid.dr[i];
    }
    return {expansion, shear};
}

}  // namespace

std::tuple<double, double, double, double> energy_and_bd(const ReformState& s,
                                                         const RadialGrid& grid,
                                                         const PhysParams& params) {
    if (params.gamma == 1.0)
        throw std::domain_error("energy_and_bd requires gamma > 1");
    check_sizes(grid, s);

    const double press = pressure_part(s, grid, params);
    const double kin_u = integrate(grid, [&](int i) {
        const double r = grid.nodes[i];
        return 0.5 * r * r * s.rho[i] * s.u[i] * s.u[i];
    });
    const double kin_v = integrate(grid, [&](int i) {
        const double r = grid.nodes[i];
        return 0.5 * r * r * s.rho[i] * s.v[i] * s.v[i];
    });
    const auto [expansion, shear] = dissipation_quadratures(s, grid, params);
    return {kin_u + press, kin_v + press, expansion, shear};
}

std::pair<double, double> dissipation_split_identity(double delta, double r,
                                                     double u, double u_r) {
    if (!(r > 0.0))
        throw std::invalid_argument("dissipation_split_identity: r must be positive");
    const double lhs = 2.0 * delta * (r * u_r) * (r * u_r) +
                       (8.0 * delta - 4.0) * u * u +
                       (8.0 * delta - 8.0) * r * u * u_r;
    const double div = u_r + 2.0 * u / r;
    const double sh = u_r - u / r;
    const double rhs = (2.0 * delta - 4.0 / 3.0) * r * r * div * div +
                       (4.0 / 3.0) * r * r * sh * sh;
    return {lhs, rhs};
}

std::pair<double, double> gamma1_entropy(const ReformState& s,
                                         const RadialGrid& grid,
                                         const PhysParams& params) {
    if (params.gamma != 1.0)
        throw std::domain_error("gamma1_entropy requires gamma == 1");
    check_sizes(grid, s);
    for (double r : s.rho)
        if (!(r > 0.0))
            throw std::domain_error("gamma1_entropy: rho must be strictly positive");

    const double log_entropy = -integrate(grid, [&](int i) {
        const double r = grid.nodes[i];
        return r * r * s.rho[i] * std::log(s.rho[i]);
    });
    const double moment = integrate(grid, [&](int i) {
        return std::pow(grid.nodes[i], 2.0 + params.alpha) * s.rho[i];
    });
    return {log_entropy, moment};
}

std::pair<double, double> density_bound_functionals(const ReformState& s,
                                                    const RadialGrid& grid,
                                                    const PhysParams& params) {
    check_sizes(grid, s);
    std::vector<double> R(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        if (!(s.rho[i] > 0.0))
            throw std::domain_error("density_bound_functionals: rho must be positive");
        R[i] = positive_pow(s.rho[i], params.delta - 0.5);
    }
    const auto R_r = radial_derivative(grid, R);
    std::vector<double> empty;
    const double grad_l2 = weighted_lp_norm(grid, R_r, empty, 2.0, 0.0, 0.0);
    return {sup_norm(R), grad_l2};
}

namespace {

// Cubic bridge coefficients on [1/2, 1]; the sums a+b+c+d = 1/e and
// 3a+2b+c = -1/e make the junction with e^{-s} C^1, and the values at 1/2
// reduce to (1, 0) against the flat piece.
constexpr double kInvE = 0.36787944117144233;
constexpr double kCubicA = 16.0 - 20.0 * kInvE;
constexpr double kCubicB = 44.0 * kInvE - 36.0;
constexpr double kCubicC = 24.0 - 29.0 * kInvE;
constexpr double kCubicD = 6.0 * kInvE - 4.0;

}  // namespace

double cutoff_weight(double s) {
    if (s < 0.0)
        throw std::domain_error("cutoff_weight: s must be nonnegative");
    if (s <= 0.5) return 1.0;
    if (s <= 1.0) return ((kCubicA * s + kCubicB) * s + kCubicC) * s + kCubicD;
    return std::exp(-s);
}

double cutoff_weight_derivative(double s) {
    if (s < 0.0)
        throw std::domain_error("cutoff_weight_derivative: s must be nonnegative");
    if (s <= 0.5) return 0.0;
    if (s <= 1.0) return (3.0 * kCubicA * s + 2.0 * kCubicB) * s + kCubicC;
    return -std::exp(-s);
}

DiagnosticsReport full_report(const ReformState& s, const RadialGrid& grid,
                              const PhysParams& params) {
    check_sizes(grid, s);
    DiagnosticsReport rep;
    rep.mass = mass(s, grid);

    if (params.gamma > 1.0) {
        std::tie(rep.energy, rep.bd_energy, rep.diss_expansion, rep.diss_shear) =
            energy_and_bd(s, grid, params);
        rep.log_entropy = 0.0;
    } else {
        const double press = pressure_part(s, grid, params);
        rep.energy = press + integrate(grid, [&](int i) {
                         const double r = grid.nodes[i];
                         return 0.5 * r * r * s.rho[i] * s.u[i] * s.u[i];
                     });
        rep.bd_energy = press + integrate(grid, [&](int i) {
                            const double r = grid.nodes[i];
                            return 0.5 * r * r * s.rho[i] * s.v[i] * s.v[i];
                        });
        std::tie(rep.diss_expansion, rep.diss_shear) =
            dissipation_quadratures(s, grid, params);
        rep.log_entropy = -press;
    }

    rep.rho_sup = sup_norm(s.rho);
    rep.r_field_sup = density_bound_functionals(s, grid, params).first;
    rep.v_sup = sup_norm(s.v);
    rep.u_sup = sup_norm(s.u);

    const double p = p_star(params.delta);
    rep.wlp_u = weighted_lp_norm(grid, s.u, s.rho, p, 2.0 / p, 1.0 / p);
    rep.wlp_v = weighted_lp_norm(grid, s.v, s.rho, p, 2.0 / p, 1.0 / p);

    rep.moment_alpha = integrate(grid, [&](int i) {
        return std::pow(grid.nodes[i], 2.0 + params.alpha) * s.rho[i];
    });

    std::vector<double> empty;
    rep.ru_l2 = weighted_lp_norm(grid, s.u, empty, 2.0, 1.0, 0.0);
    rep.rv_l2 = weighted_lp_norm(grid, s.v, empty, 2.0, 1.0, 0.0);
    const auto u_r = radial_derivative(grid, s.u);
    rep.ru_r_l2 = weighted_lp_norm(grid, u_r, empty, 2.0, 1.0, 0.0);
    return rep;
}

}  // namespace sphns
