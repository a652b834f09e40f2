#include "verify.hpp"

#include "errors.hpp"
#include "kernels.hpp"
#include "transform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace sphns {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::pair<std::vector<double>, std::vector<double>> mms_sources(
    const ScalarField& rho_m, const ScalarField& u_m, const RadialGrid& grid,
    const PhysParams& params, double t) {
    const double gamma = params.gamma;
    const double delta = params.delta;

    std::vector<double> src_rho(grid.n), src_u(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        const double r = grid.nodes[i];
        const double rho = rho_m.value(r, t);
        if (!(rho > 0.0))
            throw std::domain_error("mms_sources: manufactured rho must stay positive");
        const double rho_r = rho_m.d_r(r, t);
        const double rho_t = rho_m.d_t(r, t);
        const double u = u_m.value(r, t);
        const double u_r = u_m.d_r(r, t);
        const double u_rr = u_m.d_rr(r, t);
        const double u_t = u_m.d_t(r, t);

        src_rho[i] = rho_t + rho_r * u + rho * u_r + 2.0 * rho * u / r;

        const double div = u_r + 2.0 * u / r;
        const double div_r = u_rr + 2.0 * u_r / r - 2.0 * u / (r * r);
        const double visc = 2.0 * delta * positive_pow(rho, delta) * div_r +
                            2.0 * delta * positive_pow(rho, delta - 1.0) * rho_r * u_r +
                            2.0 * delta * (delta - 1.0) *
                                positive_pow(rho, delta - 1.0) * rho_r * div;
        src_u[i] = u_t + u * u_r + gamma * positive_pow(rho, gamma - 2.0) * rho_r -
                   visc / rho;
    }
    return {std::move(src_rho), std::move(src_u)};
}

namespace {

// Adaptive Runge-Kutta-Fehlberg 4(5) for a 2-component system, integrating
// from s0 to s1 in either direction.
template <typename F>
std::array<double, 2> rkf45(F f, std::array<double, 2> y, double s0, double s1,
                            double tol) {
    static constexpr double a2 = 0.25, a3 = 3.0 / 8.0, a4 = 12.0 / 13.0, a5 = 1.0,
                            a6 = 0.5;
    static constexpr double b21 = 0.25;
    static constexpr double b31 = 3.0 / 32.0, b32 = 9.0 / 32.0;
    static constexpr double b41 = 1932.0 / 2197.0, b42 = -7200.0 / 2197.0,
                            b43 = 7296.0 / 2197.0;
    static constexpr double b51 = 439.0 / 216.0, b52 = -8.0, b53 = 3680.0 / 513.0,
                            b54 = -845.0 / 4104.0;
    static constexpr double b61 = -8.0 / 27.0, b62 = 2.0, b63 = -3544.0 / 2565.0,
                            b64 = 1859.0 / 4104.0, b65 = -11.0 / 40.0;
    static constexpr double c1 = 25.0 / 216.0, c3 = 1408.0 / 2565.0,
                            c4 = 2197.0 / 4104.0, c5 = -1.0 / 5.0;
    static constexpr double d1 = 16.0 / 135.0, d3 = 6656.0 / 12825.0,
                            d4 = 28561.0 / 56430.0, d5 = -9.0 / 50.0,
                            d6 = 2.0 / 55.0;

    const double dir = (s1 >= s0) ? 1.0 : -1.0;
    double s = s0;
    double hstep = dir * std::max(1e-8, std::fabs(s1 - s0) / 64.0);

    auto add = [](std::array<double, 2> base, double w,
                  const std::array<double, 2>& k) {
        return std::array<double, 2>{base[0] + w * k[0], base[1] + w * k[1]};
    };

    int guard = 0;
    while (dir * (s1 - s) > 1e-15 * std::max(1.0, std::fabs(s1))) {
        if (++guard > 2000000)
            throw std::runtime_error("rkf45: step count exploded");
        if (dir * (s + hstep - s1) > 0.0)
            hstep = s1 - s;

        const auto k1 = f(s, y);
        const auto k2 = f(s + a2 * hstep, add(y, hstep * b21, k1));
        auto y3 = add(add(y, hstep * b31, k1), hstep * b32, k2);
        const auto k3 = f(s + a3 * hstep, y3);
        auto y4 = add(add(add(y, hstep * b41, k1), hstep * b42, k2), hstep * b43, k3);
        const auto k4 = f(s + a4 * hstep, y4);
        auto y5 = add(add(add(add(y, hstep * b51, k1), hstep * b52, k2),
                          hstep * b53, k3),
                      hstep * b54, k4);
        const auto k5 = f(s + a5 * hstep, y5);
        auto y6 = add(add(add(add(add(y, hstep * b61, k1), hstep * b62, k2),
                              hstep * b63, k3),
                          hstep * b64, k4),
                      hstep * b65, k5);
        const auto k6 = f(s + a6 * hstep, y6);

        std::array<double, 2> y_lo{}, y_hi{};
        for (int c = 0; c < 2; ++c) {
            y_lo[c] = y[c] + hstep * (c1 * k1[c] + c3 * k3[c] + c4 * k4[c] + c5 * k5[c]);
            y_hi[c] = y[c] + hstep * (d1 * k1[c] + d3 * k3[c] + d4 * k4[c] +
                                      d5 * k5[c] + d6 * k6[c]);
        }
        const double err = std::max(std::fabs(y_hi[0] - y_lo[0]),
                                    std::fabs(y_hi[1] - y_lo[1]));
        const double limit = tol * std::max({1.0, std::fabs(y[0]), std::fabs(y[1])});
        if (err <= limit) {
            s += hstep;
            y = y_hi;
        }
        const double shrink = (err > 0.0)
                                  ? 0.9 * std::pow(limit / err, 0.2)
                                  : 4.0;
        hstep *= std::clamp(shrink, 0.2, 4.0);
    }
    return y;
}

}  // namespace

std::vector<double> characteristics_oracle(
    const std::function<double(double)>& rho0, const ScalarField& u, double t,
    std::span<const double> r_query, double a, double r_max, double tol) {
    const double slack = 1e-9 * (r_max - a);

    std::vector<double> out(r_query.size());
    for (size_t q = 0; q < r_query.size(); ++q) {
        // y = (r, I) with I' = div(r(s), s); integrating s: t -> 0 gives
        // I(0) = -int_0^t div ds, so rho = rho0(r(0)) * exp(I(0)).
        auto f = [&](double s, const std::array<double, 2>& y) {
            const double r = y[0];
            if (r < a - slack || r > r_max + slack)
                throw SolverError(SolverError::Kind::characteristic_exit,
                                  "characteristic left the domain");
            return std::array<double, 2>{u.value(r, s),
                                         u.d_r(r, s) + 2.0 * u.value(r, s) / r};
        };
        const auto y = rkf45(f, {r_query[q], 0.0}, t, 0.0, tol);
        if (y[0] < a - slack || y[0] > r_max + slack)
            throw SolverError(SolverError::Kind::characteristic_exit,
                              "characteristic foot point left the domain");
        out[q] = rho0(y[0]) * std::exp(y[1]);
    }
    return out;
}

double convergence_order(std::span<const double> errors,
                         std::span<const double> spacings) {
    if (errors.size() < 3 || errors.size() != spacings.size())
        throw std::invalid_argument("convergence_order: need >= 3 (error, spacing) pairs");
    for (size_t i = 0; i < errors.size(); ++i) {
        if (!(errors[i] > 0.0) || !(spacings[i] > 0.0))
            throw std::invalid_argument("convergence_order: entries must be positive");
        if (i > 0 && !(spacings[i] < spacings[i - 1]))
            throw std::invalid_argument("convergence_order: spacings must strictly decrease");
    }

    const size_t n = errors.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double x = std::log(spacings[i]);
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

// Manufactured fields shared by the studies.  Both velocities vanish at the
// domain ends, so the boundary treatment does not pollute the order.
ScalarField transport_density(double /*a*/) {
    return ScalarField{
        [](double r, double t) { return 1.0 + 0.5 * std::exp(-0.2 * r) * (1.0 + 0.1 * std::sin(t)); },
        [](double r, double t) { return -0.1 * std::exp(-0.2 * r) * (1.0 + 0.1 * std::sin(t)); },
        [](double r, double t) { return 0.02 * std::exp(-0.2 * r) * (1.0 + 0.1 * std::sin(t)); },
        [](double r, double t) { return 0.05 * std::exp(-0.2 * r) * std::cos(t); }};
}

ScalarField transport_velocity(double a, double r_max) {
    const double L = r_max - a;
    return ScalarField{
        [a, L](double r, double) {
            return 0.5 * std::sin(kPi * (r - a) / L);
        },
        [a, L](double r, double) {
            return 0.5 * (kPi / L) * std::cos(kPi * (r - a) / L);
        },
        [a, L](double r, double) {
            return -0.5 * (kPi / L) * (kPi / L) * std::sin(kPi * (r - a) / L);
        },
        [](double, double) { return 0.0; }};
}

ScalarField diffusion_velocity(double a, double r_max) {
    const double L = r_max - a;
    return ScalarField{
        [a, L](double r, double t) {
            return std::sin(kPi * (r - a) / L) * (1.0 + 0.5 * std::cos(t));
        },
        [a, L](double r, double t) {
            return (kPi / L) * std::cos(kPi * (r - a) / L) * (1.0 + 0.5 * std::cos(t));
        },
        [a, L](double r, double t) {
            return -(kPi / L) * (kPi / L) * std::sin(kPi * (r - a) / L) *
                   (1.0 + 0.5 * std::cos(t));
        },
        [a, L](double r, double t) {
            return -0.5 * std::sin(kPi * (r - a) / L) * std::sin(t);
        }};
}

double l2_error(const RadialGrid& grid, std::span<const double> got,
                const ScalarField& want, double t) {
    double sum = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const double d = got[i] - want.value(grid.nodes[i], t);
        sum += d * d * grid.dr[i];
    }
    return std::sqrt(sum);
}

}  // namespace

MmsStudyResult mms_transport_study(const PhysParams& params,
                                   std::span<const int> ladder, double r_max,
                                   double t_end, double cfl) {
    const auto rho_m = transport_density(params.a);
    const auto u_m = transport_velocity(params.a, r_max);

    MmsStudyResult result;
    std::vector<double> spacings;
    for (int n : ladder) {
        const auto grid = make_grid(params.a, r_max, n, 1.0);
        std::vector<double> rho(grid.n);
        for (int i = 0; i < grid.n; ++i)
            rho[i] = rho_m.value(grid.nodes[i], 0.0);

        const double umax = 0.5;  // sup of the prescribed velocity
        const double dt0 = cfl * grid.min_dr() / umax;

        double t = 0.0;
        while (t < t_end) {
            const double dt = std::min(dt0, t_end - t);
            std::vector<double> uf(grid.n + 1);
            for (int j = 0; j <= grid.n; ++j)
                uf[j] = u_m.value(grid.faces[j], t);
            std::vector<double> src(grid.n);
            for (int i = 0; i < grid.n; ++i) {
                const double r = grid.nodes[i];
                src[i] = rho_m.d_t(r, t) + rho_m.d_r(r, t) * u_m.value(r, t) +
                         rho_m.value(r, t) * u_m.d_r(r, t) +
                         2.0 * rho_m.value(r, t) * u_m.value(r, t) / r;
            }
            rho = step_continuity(grid, rho, uf, dt, Limiter::none, src);
            t += dt;
        }

        result.ns.push_back(n);
        result.errors.push_back(l2_error(grid, rho, rho_m, t_end));
        spacings.push_back(grid.min_dr());
    }
    result.slope = convergence_order(result.errors, spacings);
    return result;
}

MmsStudyResult mms_coupled_study(const PhysParams& params,
                                 std::span<const int> ladder, double r_max,
                                 double t_end, double cfl) {
    const auto rho_m = transport_density(params.a);
    const double L = r_max - params.a;
    const double a = params.a;
    const ScalarField u_m{
        [a, L](double r, double t) {
            return 0.3 * std::sin(kPi * (r - a) / L) * (1.0 + 0.5 * std::cos(t));
        },
        [a, L](double r, double t) {
            return 0.3 * (kPi / L) * std::cos(kPi * (r - a) / L) *
                   (1.0 + 0.5 * std::cos(t));
        },
        [a, L](double r, double t) {
            return -0.3 * (kPi / L) * (kPi / L) * std::sin(kPi * (r - a) / L) *
                   (1.0 + 0.5 * std::cos(t));
        },
        [a, L](double r, double t) {
            return -0.15 * std::sin(kPi * (r - a) / L) * std::sin(t);
        }};

    MomentumSolveConfig mcfg;
    mcfg.theta = 0.5;

    MmsStudyResult result;
    std::vector<double> spacings;
    for (int n : ladder) {
        const auto grid = make_grid(params.a, r_max, n, 1.0);
        PrimitiveState s;
        s.t = 0.0;
        s.rho.resize(grid.n);
        s.u.resize(grid.n);
        for (int i = 0; i < grid.n; ++i) {
            s.rho[i] = rho_m.value(grid.nodes[i], 0.0);
            s.u[i] = u_m.value(grid.nodes[i], 0.0);
        }

        const double dt0 = cfl * grid.min_dr() / 0.6;
        double t = 0.0;
        while (t < t_end) {
            const double dt = std::min(dt0, t_end - t);
            const auto [src_rho, src_u] = mms_sources(rho_m, u_m, grid, params, t);
            const auto reform = to_reformulated(s, params, grid);
            const auto uf = face_velocities(grid, s.u, mcfg.outer);
            auto rho_next =
                step_continuity(grid, s.rho, uf, dt, Limiter::none, src_rho);
            s.u = step_momentum(grid, reform.h, reform.phi, reform.v, s.u, s.u,
                                dt, params, mcfg, src_u);
            s.rho = std::move(rho_next);
            t += dt;
        }

        double err = 0.0;
        for (int i = 0; i < grid.n; ++i) {
            const double dr_ = s.rho[i] - rho_m.value(grid.nodes[i], t_end);
            const double du = s.u[i] - u_m.value(grid.nodes[i], t_end);
            err += (dr_ * dr_ + du * du) * grid.dr[i];
        }
        result.ns.push_back(n);
        result.errors.push_back(std::sqrt(err));
        spacings.push_back(grid.min_dr());
    }
    result.slope = convergence_order(result.errors, spacings);
    return result;
}

MmsStudyResult mms_diffusion_study(const PhysParams& params, double theta,
                                   std::span<const int> ladder, double r_max,
                                   double t_end) {
    const auto u_m = diffusion_velocity(params.a, r_max);
    const double h0 = 2.0;
    const double delta = params.delta;

    MmsStudyResult result;
    std::vector<double> spacings;
    for (int n : ladder) {
        const auto grid = make_grid(params.a, r_max, n, 1.0);
        std::vector<double> u(grid.n), h(grid.n, h0), zeros(grid.n, 0.0);
        for (int i = 0; i < grid.n; ++i)
            u[i] = u_m.value(grid.nodes[i], 0.0);

        MomentumSolveConfig cfg;
        cfg.theta = theta;
        cfg.diffusion_only = true;

        const double dt0 = 0.25 * grid.min_dr();
        double t = 0.0;
        while (t < t_end) {
            const double dt = std::min(dt0, t_end - t);
            const double tm = t + 0.5 * dt;  // midpoint source keeps theta=1/2 second order
            std::vector<double> src(grid.n);
            for (int i = 0; i < grid.n; ++i) {
                const double r = grid.nodes[i];
                const double div_r = u_m.d_rr(r, tm) + 2.0 * u_m.d_r(r, tm) / r -
                                     2.0 * u_m.value(r, tm) / (r * r);
                src[i] = u_m.d_t(r, tm) - delta * h0 * div_r;
            }
            u = step_momentum(grid, h, zeros, zeros, u, u, dt, params, cfg, src);
            t += dt;
        }

        result.ns.push_back(n);
        result.errors.push_back(l2_error(grid, u, u_m, t_end));
        spacings.push_back(grid.min_dr());
    }
    result.slope = convergence_order(result.errors, spacings);
    return result;
}

}  // namespace sphns
