#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "errors.hpp"
#include "kernels.hpp"
#include "transform.hpp"
#include "verify.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace sphns;

namespace {

PhysParams standard_params() {
    PhysParams p;
    p.gamma = 1.2;
    p.delta = 0.8;
    p.a = 1.0;
    return p;
}

double discrete_mass(const RadialGrid& g, std::span<const double> rho) {
    double m = 0.0;
    for (int i = 0; i < g.n; ++i)
        m += rho[i] * g.nodes[i] * g.nodes[i] * g.dr[i];
    return m;
}

// velocity vanishing at both domain ends
double bump_velocity(double r, double a, double r_max) {
    return 0.5 * std::sin(std::numbers::pi * (r - a) / (r_max - a));
}

}  // namespace

TEST_CASE("continuity: zero velocity leaves rho bit-identical") {
    const auto g = make_grid(1.0, 3.0, 64, 1.0);
    std::vector<double> rho(g.n), uf(g.n + 1, 0.0);
    for (int i = 0; i < g.n; ++i) rho[i] = 1.0 + std::sin(g.nodes[i]);
    const auto out = step_continuity(g, rho, uf, 0.01);
    for (int i = 0; i < g.n; ++i)
        CHECK(out[i] == rho[i]);
}

TEST_CASE("continuity conserves mass with closed boundaries") {
    const auto g = make_grid(1.0, 3.0, 128, 1.0);
    std::vector<double> rho(g.n), u(g.n);
    for (int i = 0; i < g.n; ++i) {
        rho[i] = 1.0 + 0.5 * std::cos(2.0 * g.nodes[i]);
        u[i] = bump_velocity(g.nodes[i], 1.0, 3.0);
    }
    const auto uf = face_velocities(g, u, OuterBc::dirichlet_zero);
    const double m0 = discrete_mass(g, rho);
    auto r = rho;
    for (int step = 0; step < 20; ++step)
        r = step_continuity(g, r, uf, 0.01, Limiter::minmod);
    CHECK(std::fabs(discrete_mass(g, r) - m0) <= 1e-13 * m0);
}

TEST_CASE("continuity rejects CFL violations") {
    const auto g = make_grid(1.0, 2.0, 32, 1.0);
    std::vector<double> rho(g.n, 1.0), uf(g.n + 1, 1.0);
    uf[0] = uf[g.n] = 0.0;
    CHECK_THROWS_AS(step_continuity(g, rho, uf, 1.0), SolverError);
}

TEST_CASE("continuity matches the characteristics oracle at first order") {
    const double a = 1.0, r_max = 3.0;
    const ScalarField u_m{
        [=](double r, double) { return bump_velocity(r, a, r_max); },
        [=](double r, double) {
            return 0.5 * (std::numbers::pi / (r_max - a)) *
                   std::cos(std::numbers::pi * (r - a) / (r_max - a));
        },
        {}, {}};
    auto rho0 = [](double r) { return 1.0 + 0.5 * std::exp(-2.0 * (r - 1.8) * (r - 1.8)); };
    const double t_end = 0.25;

    std::vector<double> errs, hs;
    for (int n : {64, 128, 256}) {
        const auto g = make_grid(a, r_max, n, 1.0);
        std::vector<double> rho(g.n), uf(g.n + 1);
        for (int i = 0; i < g.n; ++i) rho[i] = rho0(g.nodes[i]);
        for (int j = 0; j <= g.n; ++j) uf[j] = u_m.value(g.faces[j], 0.0);

        const double dt = 0.4 * g.min_dr() / 0.5;
        double t = 0.0;
        auto r = rho;
        while (t < t_end) {
            const double step = std::min(dt, t_end - t);
            r = step_continuity(g, r, uf, step);
            t += step;
        }
        const auto oracle = characteristics_oracle(rho0, u_m, t_end, g.nodes, a, r_max);
        double err = 0.0;
        for (int i = 0; i < g.n; ++i)
            err += (r[i] - oracle[i]) * (r[i] - oracle[i]) * g.dr[i];
        errs.push_back(std::sqrt(err));
        hs.push_back(g.min_dr());
    }
    CHECK(convergence_order(errs, hs) == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("advected scalar: trivial modes") {
    const auto g = make_grid(1.0, 3.0, 64, 1.0);
    std::vector<double> q(g.n), zero(g.n, 0.0), u(g.n);
    for (int i = 0; i < g.n; ++i) {
        q[i] = 2.0 + std::sin(g.nodes[i]);
        u[i] = bump_velocity(g.nodes[i], 1.0, 3.0);
    }

    const auto frozen = step_advected_scalar(g, q, zero, 0.5, 0.01);
    for (int i = 0; i < g.n; ++i)
        CHECK(frozen[i] == q[i]);

    // coeff = 0: pure advection keeps a constant field constant
    std::vector<double> c(g.n, 3.25);
    const auto adv = step_advected_scalar(g, c, u, 0.0, 0.01);
    for (int i = 0; i < g.n; ++i)
        CHECK(adv[i] == doctest::Approx(3.25).epsilon(1e-15));
}

TEST_CASE("advected scalar enforces the positivity bound on dt") {
    const auto g = make_grid(1.0, 3.0, 64, 1.0);
    std::vector<double> q(g.n, 1.0), u(g.n);
    for (int i = 0; i < g.n; ++i) u[i] = 0.05 * (g.nodes[i] - 1.0) * (3.0 - g.nodes[i]);
    // dt below the CFL bound but far beyond the stretching bound
    CHECK_THROWS_AS(step_advected_scalar(g, q, u, 50.0, 0.2), SolverError);
}

TEST_CASE("h evolved as a scalar stays consistent with rho under refinement") {
    const auto params = standard_params();
    const double a = 1.0, r_max = 3.0, t_end = 0.2;

    auto inconsistency = [&](int n) {
        const auto g = make_grid(a, r_max, n, 1.0);
        std::vector<double> rho(g.n), u(g.n);
        for (int i = 0; i < g.n; ++i) {
            rho[i] = 1.0 + 0.5 * std::exp(-2.0 * (g.nodes[i] - 1.8) * (g.nodes[i] - 1.8));
            u[i] = bump_velocity(g.nodes[i], a, r_max);
        }
        std::vector<double> h(g.n);
        for (int i = 0; i < g.n; ++i)
            h[i] = 2.0 * positive_pow(rho[i], params.delta - 1.0);

        const auto uf = face_velocities(g, u, OuterBc::dirichlet_zero);
        const double dt = 0.4 * g.min_dr() / 0.5;
        double t = 0.0;
        while (t < t_end) {
            const double step = std::min(dt, t_end - t);
            rho = step_continuity(g, rho, uf, step);
            h = step_advected_scalar(g, h, u, params.delta - 1.0, step);
            t += step;
        }
        double gap = 0.0;
        for (int i = 0; i < g.n; ++i)
            gap = std::max(gap,
                           std::fabs(h[i] - 2.0 * positive_pow(rho[i], params.delta - 1.0)));
        return gap;
    };

    const double g1 = inconsistency(64);
    const double g2 = inconsistency(128);
    CHECK(g2 < g1);
    CHECK(g1 / g2 > 1.5);  // first-order decay
}

TEST_CASE("effective velocity: fixed point and vacuum limit") {
    const auto params = standard_params();
    const auto g = make_grid(1.0, 3.0, 32, 1.0);
    std::vector<double> u(g.n, 0.4), v(g.n, 0.4), phi(g.n, 0.9);
    const auto out = step_effective_velocity(g, v, u, phi, 0.05, params);
    for (int i = 0; i < g.n; ++i)
        CHECK(out[i] == doctest::Approx(0.4).epsilon(1e-15));

    // phi = 0: no relaxation, and zero velocity means no advection either
    std::vector<double> vv(g.n), zero(g.n, 0.0), novac(g.n, 0.0);
    for (int i = 0; i < g.n; ++i) vv[i] = std::sin(g.nodes[i]);
    const auto pure = step_effective_velocity(g, vv, zero, novac, 0.05, params);
    for (int i = 0; i < g.n; ++i)
        CHECK(pure[i] == vv[i]);
}

TEST_CASE("effective velocity damping is the exact exponential") {
    PhysParams params = standard_params();
    params.gamma = 1.0;
    params.delta = 0.8;  // rate = 1/1.6
    const auto g = make_grid(1.0, 3.0, 32, 1.0);
    std::vector<double> v(g.n), u(g.n, 0.0), phi(g.n, 1.0);
    for (int i = 0; i < g.n; ++i) v[i] = 1.0 + 0.1 * i;

    const double dt = 0.37;
    const auto out = step_effective_velocity(g, v, u, phi, dt, params);
    for (int i = 0; i < g.n; ++i)
        CHECK(out[i] == doctest::Approx(v[i] * std::exp(-dt / 1.6)).epsilon(1e-12));
}

TEST_CASE("momentum: the all-zero velocity steady state is exact") {
    const auto params = standard_params();
    const auto g = make_grid(1.0, 3.0, 48, 1.0);
    std::vector<double> h(g.n, 2.0), phi(g.n, 1.0), v(g.n, 0.0), u(g.n, 0.0);
    MomentumSolveConfig cfg;
    const auto out = step_momentum(g, h, phi, v, u, u, 0.01, params, cfg);
    for (int i = 0; i < g.n; ++i)
        CHECK(out[i] == 0.0);
}

TEST_CASE("expansion rate: linear velocity gives 3, 1/r^2 is annihilated") {
    const auto g = make_grid(1.0, 3.0, 128, 1.0);
    std::vector<double> lin(g.n), inv2(g.n);
    for (int i = 0; i < g.n; ++i) {
        lin[i] = g.nodes[i];
        inv2[i] = 1.0 / (g.nodes[i] * g.nodes[i]);
    }
    const auto G_lin = expansion_rate_faces(g, lin, OuterBc::dirichlet_zero);
    for (int j = 1; j < g.n; ++j)  // interior faces; boundary faces carry the BC
        CHECK(G_lin[j] == doctest::Approx(3.0).epsilon(1e-12));

    auto interior_sup = [&](int n) {
        const auto gg = make_grid(1.0, 3.0, n, 1.0);
        std::vector<double> f(gg.n);
        for (int i = 0; i < gg.n; ++i) f[i] = 1.0 / (gg.nodes[i] * gg.nodes[i]);
        const auto G = expansion_rate_faces(gg, f, OuterBc::dirichlet_zero);
        double m = 0.0;
        for (int j = 1; j < gg.n; ++j) m = std::max(m, std::fabs(G[j]));
        return m;
    };
    const double m1 = interior_sup(64);
    const double m2 = interior_sup(128);
    CHECK(m1 / m2 == doctest::Approx(4.0).epsilon(0.25));  // O(dr^2)
}

TEST_CASE("momentum diffusion leaves 1/r^2 nearly steady in the interior") {
    const auto params = standard_params();
    const auto g = make_grid(1.0, 3.0, 256, 1.0);
    std::vector<double> h(g.n, 2.0), u(g.n);
    for (int i = 0; i < g.n; ++i) u[i] = 1.0 / (g.nodes[i] * g.nodes[i]);
    const auto Lu = momentum_diffusion(g, h, u, params.delta, OuterBc::dirichlet_zero);
    double interior = 0.0;
    for (int i = 2; i < g.n - 2; ++i) interior = std::max(interior, std::fabs(Lu[i]));
    CHECK(interior < 5e-3);  // O(dr) of the flux differences of an O(dr^2) field
}

TEST_CASE("tridiagonal solve agrees with a dense elimination oracle") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> off(-1.0, 1.0);
    const int n = 16;

    for (int trial = 0; trial < 25; ++trial) {
        std::vector<double> lo(n), di(n), up(n), rhs(n);
        std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i) {
            lo[i] = (i > 0) ? off(rng) : 0.0;
            up[i] = (i < n - 1) ? off(rng) : 0.0;
            di[i] = 3.0 + std::fabs(off(rng));  // diagonally dominant
            rhs[i] = off(rng);
            if (i > 0) A[i][i - 1] = lo[i];
            A[i][i] = di[i];
            if (i < n - 1) A[i][i + 1] = up[i];
        }
        auto b = rhs;

        // dense Gaussian elimination with partial pivoting (oracle)
        std::vector<double> x(n);
        {
            auto M = A;
            auto r = b;
            for (int c = 0; c < n; ++c) {
                int piv = c;
                for (int k = c + 1; k < n; ++k)
                    if (std::fabs(M[k][c]) > std::fabs(M[piv][c])) piv = k;
                std::swap(M[c], M[piv]);
                std::swap(r[c], r[piv]);
                for (int k = c + 1; k < n; ++k) {
                    const double m = M[k][c] / M[c][c];
                    for (int j = c; j < n; ++j) M[k][j] -= m * M[c][j];
                    r[k] -= m * r[c];
                }
            }
            for (int c = n - 1; c >= 0; --c) {
                double s = r[c];
                for (int j = c + 1; j < n; ++j) s -= M[c][j] * x[j];
                x[c] = s / M[c][c];
            }
        }

        solve_tridiagonal(lo, di, up, rhs);
        for (int i = 0; i < n; ++i)
            CHECK(rhs[i] == doctest::Approx(x[i]).epsilon(1e-12));
    }
}

TEST_CASE("kernels are deterministic") {
    const auto params = standard_params();
    const auto g = make_grid(1.0, 3.0, 64, 1.0);
    std::vector<double> rho(g.n), u(g.n), h(g.n), phi(g.n), v(g.n);
    for (int i = 0; i < g.n; ++i) {
        rho[i] = 1.0 + 0.3 * std::sin(3.0 * g.nodes[i]);
        u[i] = bump_velocity(g.nodes[i], 1.0, 3.0);
        h[i] = 2.0 * positive_pow(rho[i], params.delta - 1.0);
        phi[i] = positive_pow(rho[i], params.gamma - params.delta);
        v[i] = 0.1 * u[i];
    }
    const auto uf = face_velocities(g, u, OuterBc::dirichlet_zero);
    const double dt = 0.005;
    MomentumSolveConfig cfg;

    const auto r1 = step_continuity(g, rho, uf, dt);
    const auto r2 = step_continuity(g, rho, uf, dt);
    CHECK(r1 == r2);
    const auto h1 = step_advected_scalar(g, h, u, params.delta - 1.0, dt);
    const auto h2 = step_advected_scalar(g, h, u, params.delta - 1.0, dt);
    CHECK(h1 == h2);
    const auto u1 = step_momentum(g, h, phi, v, u, u, dt, params, cfg);
    const auto u2 = step_momentum(g, h, phi, v, u, u, dt, params, cfg);
    CHECK(u1 == u2);
}

TEST_CASE("outer boundary variants") {
    const auto g = make_grid(1.0, 3.0, 32, 1.0);
    std::vector<double> u(g.n);
    for (int i = 0; i < g.n; ++i) u[i] = 0.1 + 0.05 * i;

    const auto dir = face_velocities(g, u, OuterBc::dirichlet_zero);
    CHECK(dir.front() == 0.0);
    CHECK(dir.back() == 0.0);

    const auto neu = face_velocities(g, u, OuterBc::zero_gradient);
    CHECK(neu.front() == 0.0);
    CHECK(neu.back() == u.back());

    // zero-gradient ghost: no slope contribution, face value u[n-1]
    const auto G = expansion_rate_faces(g, u, OuterBc::zero_gradient);
    CHECK(G.back() == doctest::Approx(2.0 * u.back() / g.r_max).epsilon(1e-14));
}

TEST_CASE("momentum solve reports singular coefficients") {
    const auto params = standard_params();
    const auto g = make_grid(1.0, 3.0, 16, 1.0);
    std::vector<double> h(g.n, 2.0), phi(g.n, 1.0), z(g.n, 0.0);
    h[7] = 0.0;
    MomentumSolveConfig cfg;
    CHECK_THROWS_AS(step_momentum(g, h, phi, z, z, z, 0.01, params, cfg), SolverError);
}
