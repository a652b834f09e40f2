#include "kernels.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>

namespace sphns {

namespace {

constexpr double kCflLimit = 0.9;

double minmod(double p, double q) {
    if (p > 0.0 && q > 0.0) return std::min(p, q);
    if (p < 0.0 && q < 0.0) return std::max(p, q);
    return 0.0;
}

void check_size(std::span<const double> f, int n, const char* what) {
    if (f.size() != static_cast<size_t>(n))
        throw std::invalid_argument(std::string(what) + ": size mismatch");
}

// Upwind one-sided derivative of q at node i, chosen by the sign of the
// advecting velocity; zero-gradient ghosts at both ends.
double upwind_derivative(const RadialGrid& g, std::span<const double> q, int i,
                         double vel) {
    if (vel > 0.0) {
        if (i == 0) return 0.0;
        return (q[i] - q[i - 1]) / (g.nodes[i] - g.nodes[i - 1]);
    }
    if (vel < 0.0) {
        if (i == g.n - 1) return 0.0;
        return (q[i + 1] - q[i]) / (g.nodes[i + 1] - g.nodes[i]);
    }
    return 0.0;
}

}  // namespace

void enforce_cfl(const RadialGrid& grid, double max_speed, double dt) {
    if (!(dt > 0.0))
        throw std::invalid_argument("time step must be positive");
    const double cfl = max_speed * dt / grid.min_dr();
    if (cfl > kCflLimit * (1.0 + 1e-12))
        throw SolverError(SolverError::Kind::cfl,
                          "CFL number " + std::to_string(cfl) + " exceeds 0.9");
}

std::vector<double> face_velocities(const RadialGrid& grid,
                                    std::span<const double> u_node,
                                    OuterBc outer) {
    check_size(u_node, grid.n, "face_velocities");
    std::vector<double> uf(grid.n + 1);
    uf[0] = 0.0;  // u(a) = 0
    for (int j = 1; j < grid.n; ++j) {
        const double xl = grid.nodes[j - 1], xr = grid.nodes[j];
        const double w = (xr - grid.faces[j]) / (xr - xl);
        uf[j] = w * u_node[j - 1] + (1.0 - w) * u_node[j];
    }
    uf[grid.n] = (outer == OuterBc::dirichlet_zero) ? 0.0 : u_node[grid.n - 1];
    return uf;
}

std::vector<double> step_continuity(const RadialGrid& grid,
                                    std::span<const double> rho,
                                    std::span<const double> u_face, double dt,
                                    Limiter limiter,
                                    std::span<const double> source) {
    const int n = grid.n;
    check_size(rho, n, "step_continuity rho");
    if (u_face.size() != static_cast<size_t>(n + 1))
        throw std::invalid_argument("step_continuity: face velocity size mismatch");
    if (!source.empty()) check_size(source, n, "step_continuity source");
    enforce_cfl(grid, sup_norm(u_face), dt);

    // Optional piecewise-linear reconstruction for the face values.
    std::vector<double> slope;
    if (limiter == Limiter::minmod) {
        slope.assign(n, 0.0);
        for (int i = 1; i < n - 1; ++i) {
            const double dl = (rho[i] - rho[i - 1]) / (grid.nodes[i] - grid.nodes[i - 1]);
            const double dr = (rho[i + 1] - rho[i]) / (grid.nodes[i + 1] - grid.nodes[i]);
            slope[i] = minmod(dl, dr);
        }
    }

    auto upwind_value = [&](int j, double vel) {
        // j-th face, donor cell by the sign of vel; boundary faces fall back
        // to the adjacent interior cell.
        if (vel >= 0.0) {
            const int i = j - 1;
            if (i < 0) return rho[0];
            double val = rho[i];
            if (!slope.empty()) val += slope[i] * (grid.faces[j] - grid.nodes[i]);
            return val;
        }
        const int i = j;
        if (i > n - 1) return rho[n - 1];
        double val = rho[i];
        if (!slope.empty()) val -= slope[i] * (grid.nodes[i] - grid.faces[j]);
        return val;
    };

    std::vector<double> flux(n + 1);
    for (int j = 0; j <= n; ++j) {
        const double rf = grid.faces[j];
        flux[j] = rf * rf * upwind_value(j, u_face[j]) * u_face[j];
    }

    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const double vol = grid.nodes[i] * grid.nodes[i] * grid.dr[i];
        out[i] = rho[i] - dt / vol * (flux[i + 1] - flux[i]);
        if (!source.empty()) out[i] += dt * source[i];
    }
    return out;
}

std::vector<double> step_advected_scalar(const RadialGrid& grid,
                                         std::span<const double> q,
                                         std::span<const double> u_node,
                                         double coeff, double dt) {
    const int n = grid.n;
    check_size(q, n, "step_advected_scalar q");
    check_size(u_node, n, "step_advected_scalar u");
    enforce_cfl(grid, sup_norm(u_node), dt);

    const auto u_r = radial_derivative(grid, u_node);
    double div_max = 0.0;
    for (int i = 0; i < n; ++i)
        div_max = std::max(div_max, std::fabs(u_r[i] + 2.0 * u_node[i] / grid.nodes[i]));
    if (coeff != 0.0 && dt * std::fabs(coeff) * div_max >= 1.0)
        throw SolverError(SolverError::Kind::positivity,
                          "stretching factor would destroy positivity; dt too large");

    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const double adv = q[i] - dt * u_node[i] * upwind_derivative(grid, q, i, u_node[i]);
        const double div = u_r[i] + 2.0 * u_node[i] / grid.nodes[i];
        out[i] = adv * (1.0 - dt * coeff * div);
    }
    return out;
}

std::vector<double> step_effective_velocity(const RadialGrid& grid,
                                            std::span<const double> v,
                                            std::span<const double> u_node,
                                            std::span<const double> phi,
                                            double dt,
                                            const PhysParams& params) {
    const int n = grid.n;
    check_size(v, n, "step_effective_velocity v");
    check_size(u_node, n, "step_effective_velocity u");
    check_size(phi, n, "step_effective_velocity phi");
    enforce_cfl(grid, sup_norm(u_node), dt);

    const double rate = params.gamma / (2.0 * params.delta);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const double adv = v[i] - dt * u_node[i] * upwind_derivative(grid, v, i, u_node[i]);
        out[i] = u_node[i] + (adv - u_node[i]) * std::exp(-rate * phi[i] * dt);
    }
    return out;
}

namespace {

// Face values of u_r + 2u/r as linear combinations of the two adjacent node
// values: G_j = gl[j]*u[j-1] + gr[j]*u[j].  Boundary faces encode the
// boundary conditions through mirror ghosts, so only one coefficient is
// active there (gl[0] = 0, gr[n] = 0 by convention; see momentum solve).
struct FaceOperator {
    std::vector<double> gl, gr;
};

FaceOperator expansion_operator(const RadialGrid& g, OuterBc outer) {
    const int n = g.n;
    FaceOperator op;
    op.gl.assign(n + 1, 0.0);
    op.gr.assign(n + 1, 0.0);

    for (int j = 1; j < n; ++j) {
        const double xl = g.nodes[j - 1], xr = g.nodes[j], f = g.faces[j];
        const double inv_dx = 1.0 / (xr - xl);
        const double w = (xr - f) * inv_dx;  // interpolation weight of the left node
        op.gl[j] = -inv_dx + (2.0 / f) * w;
        op.gr[j] = inv_dx + (2.0 / f) * (1.0 - w);
    }
    // Inner face: Dirichlet u(a) = 0 through a mirror ghost, which makes the
    // interpolated face velocity vanish exactly; only the slope part remains.
    op.gr[0] = 1.0 / (g.nodes[0] - g.faces[0]);
    // Outer face.
    if (outer == OuterBc::dirichlet_zero)
        op.gl[n] = -1.0 / (g.faces[n] - g.nodes[n - 1]);
    else
        op.gl[n] = 2.0 / g.faces[n];  // zero-gradient ghost: slope 0, face value u[n-1]
    return op;
}

}  // namespace

std::vector<double> expansion_rate_faces(const RadialGrid& grid,
                                         std::span<const double> u_node,
                                         OuterBc outer) {
    check_size(u_node, grid.n, "expansion_rate_faces");
    const auto op = expansion_operator(grid, outer);
    std::vector<double> G(grid.n + 1);
    G[0] = op.gr[0] * u_node[0];
    for (int j = 1; j < grid.n; ++j)
        G[j] = op.gl[j] * u_node[j - 1] + op.gr[j] * u_node[j];
    G[grid.n] = op.gl[grid.n] * u_node[grid.n - 1];
    return G;
}

std::vector<double> momentum_diffusion(const RadialGrid& grid,
                                       std::span<const double> h,
                                       std::span<const double> u, double delta,
                                       OuterBc outer) {
    check_size(h, grid.n, "momentum_diffusion h");
    check_size(u, grid.n, "momentum_diffusion u");
    const auto G = expansion_rate_faces(grid, u, outer);
    std::vector<double> out(grid.n);
    for (int i = 0; i < grid.n; ++i)
        out[i] = delta * h[i] * (G[i + 1] - G[i]) / grid.dr[i];
    return out;
}

void solve_tridiagonal(std::span<double> lower, std::span<double> diag,
                       std::span<double> upper, std::span<double> rhs) {
    const size_t n = diag.size();
    if (lower.size() != n || upper.size() != n || rhs.size() != n)
        throw std::invalid_argument("solve_tridiagonal: size mismatch");

    for (size_t k = 1; k < n; ++k) {
        if (std::fabs(diag[k - 1]) < 1e-300)
            throw SolverError(SolverError::Kind::singular_matrix,
                              "tridiagonal solve: vanishing pivot");
        const double m = lower[k] / diag[k - 1];
        diag[k] -= m * upper[k - 1];
        rhs[k] -= m * rhs[k - 1];
    }
    if (std::fabs(diag[n - 1]) < 1e-300)
        throw SolverError(SolverError::Kind::singular_matrix,
                          "tridiagonal solve: vanishing pivot");
    rhs[n - 1] /= diag[n - 1];
    for (size_t k = n - 1; k-- > 0;)
        rhs[k] = (rhs[k] - upper[k] * rhs[k + 1]) / diag[k];
}

std::vector<double> step_momentum(const RadialGrid& grid,
                                  std::span<const double> h,
                                  std::span<const double> phi,
                                  std::span<const double> v,
                                  std::span<const double> u_start,
                                  std::span<const double> u_coef, double dt,
                                  const PhysParams& params,
                                  const MomentumSolveConfig& cfg,
                                  std::span<const double> source) {
    const int n = grid.n;
    check_size(h, n, "step_momentum h");
    check_size(phi, n, "step_momentum phi");
    check_size(v, n, "step_momentum v");
    check_size(u_start, n, "step_momentum u_start");
    check_size(u_coef, n, "step_momentum u_coef");
    if (!source.empty()) check_size(source, n, "step_momentum source");
    if (!(cfg.theta >= 0.5 && cfg.theta <= 1.0))
        throw std::invalid_argument("step_momentum: theta must lie in [1/2, 1]");
    for (int i = 0; i < n; ++i)
        if (!(h[i] > 0.0))
            throw SolverError(SolverError::Kind::singular_matrix,
                              "step_momentum: h dropped to or below zero");
    enforce_cfl(grid, sup_norm(u_coef), dt);

    const double delta = params.delta;
    const double relax = params.gamma / (2.0 * delta);

    // Explicit sources at the frozen iterate.
    std::vector<double> rhs(u_start.begin(), u_start.end());
    if (!cfg.diffusion_only) {
        const auto uc_r = radial_derivative(grid, u_coef);
        for (int i = 0; i < n; ++i) {
            const double w = v[i] - u_coef[i];
            double s = -u_coef[i] * upwind_derivative(grid, u_coef, i, u_coef[i]);
            s -= relax * phi[i] * w;
            s += delta * w * uc_r[i];
            s += (delta - 1.0) * w * 2.0 * u_coef[i] / grid.nodes[i];
            rhs[i] += dt * s;
        }
    }
    if (!source.empty())
        for (int i = 0; i < n; ++i) rhs[i] += dt * source[i];

    // (1-theta) explicit share of the frozen-coefficient diffusion.
    if (cfg.theta < 1.0) {
        const auto Lu = momentum_diffusion(grid, h, u_start, delta, cfg.outer);
        for (int i = 0; i < n; ++i) rhs[i] += dt * (1.0 - cfg.theta) * Lu[i];
    }

    // Assemble I - theta dt L as a tridiagonal system.
    const auto op = expansion_operator(grid, cfg.outer);
    std::vector<double> lo(n, 0.0), di(n, 0.0), up(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double c = cfg.theta * dt * delta * h[i] / grid.dr[i];
        // L_i = c/ (theta dt) * ... ; row couples u[i-1], u[i], u[i+1]
        double row_lo = 0.0, row_di = 0.0, row_up = 0.0;
        // +G at face i+1
        if (i + 1 <= n - 1) {
            row_di += op.gl[i + 1];
            row_up += op.gr[i + 1];
        } else {
            row_di += op.gl[n];  // outer face couples only to u[n-1]
        }
        // -G at face i
        if (i == 0) {
            row_di -= op.gr[0];
        } else {
            row_lo -= op.gl[i];
            row_di -= op.gr[i];
        }
        lo[i] = -c * row_lo;
        di[i] = 1.0 - c * row_di;
        up[i] = -c * row_up;
    }

    solve_tridiagonal(lo, di, up, rhs);
    return rhs;
}

}  // namespace sphns
