#include "transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sphns {

double positive_pow(double base, double expo) {
    return std::exp(expo * std::log(base));
}

namespace {

void require_positive(std::span<const double> field, const char* what) {
    for (double x : field)
        if (!(x > 0.0))
            throw std::domain_error(std::string(what) + " must be strictly positive");
}

}  // namespace

ReformState to_reformulated(const PrimitiveState& s, const PhysParams& params,
                            const RadialGrid& grid) {
    check_sizes(grid, s);
    require_positive(s.rho, "rho");

    const double delta = params.delta;
    const double gamma = params.gamma;

    ReformState out;
    out.t = s.t;
    out.rho = s.rho;
    out.u = s.u;
    out.h.resize(grid.n);
    out.phi.resize(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        out.h[i] = 2.0 * positive_pow(s.rho[i], delta - 1.0);
        out.phi[i] = positive_pow(s.rho[i], gamma - delta);
    }

    const auto h_r = radial_derivative(grid, out.h);
    out.v.resize(grid.n);
    const double c = delta / (delta - 1.0);
    for (int i = 0; i < grid.n; ++i)
        out.v[i] = s.u[i] + c * h_r[i];
    return out;
}

std::vector<double> effective_velocity_from_rho(const RadialGrid& grid,
                                                const PhysParams& params,
                                                std::span<const double> rho,
                                                std::span<const double> u) {
    require_positive(rho, "rho");
    const auto rho_r = radial_derivative(grid, rho);
    std::vector<double> v(grid.n);
    for (int i = 0; i < grid.n; ++i)
        v[i] = u[i] + 2.0 * params.delta * positive_pow(rho[i], params.delta - 2.0) * rho_r[i];
    return v;
}

PrimitiveState to_primitive(const ReformState& s, const PhysParams& params) {
    require_positive(s.h, "h");
    PrimitiveState out;
    out.t = s.t;
    out.u = s.u;
    out.rho.resize(s.h.size());
    const double inv = 1.0 / (params.delta - 1.0);
    for (size_t i = 0; i < s.h.size(); ++i)
        out.rho[i] = positive_pow(0.5 * s.h[i], inv);
    return out;
}

double pressure_gradient_identity_residual(const ReformState& s,
                                           const PhysParams& params,
                                           const RadialGrid& grid) {
    check_sizes(grid, s);
    require_positive(s.rho, "rho");

    const double gamma = params.gamma;
    const double delta = params.delta;

    std::vector<double> p(grid.n);
    for (int i = 0; i < grid.n; ++i)
        p[i] = positive_pow(s.rho[i], gamma);
    const auto p_r = radial_derivative(grid, p);

    double res = 0.0;
    const double c = gamma / (2.0 * delta);
    for (int i = 0; i < grid.n; ++i) {
        const double rhs = c * positive_pow(s.rho[i], gamma + 1.0 - delta) * (s.v[i] - s.u[i]);
        res = std::max(res, std::fabs(p_r[i] - rhs));
    }
    return res;
}

double momentum_forms_agree(const ReformState& s, const RadialGrid& grid,
                            const PhysParams& params) {
    check_sizes(grid, s);
    const double delta = params.delta;
    const auto u_r = radial_derivative(grid, s.u);

    double gap = 0.0;
    double scale = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const double w = s.v[i] - s.u[i];
        const double two_u_over_r = 2.0 * s.u[i] / grid.nodes[i];
        const double lhs = delta * w * u_r[i] + (delta - 1.0) * w * two_u_over_r;
        const double rhs = w * u_r[i] + (delta - 1.0) * w * (u_r[i] + two_u_over_r);
        gap = std::max(gap, std::fabs(lhs - rhs));
        scale = std::max({scale, std::fabs(lhs), std::fabs(rhs)});
    }
    return scale > 0.0 ? gap / scale : 0.0;
}

}  // namespace sphns
