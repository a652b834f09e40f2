#include "stepper.hpp"

#include "errors.hpp"
#include "transform.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

namespace sphns {

ReformState regularize_initial(const RadialGrid& grid, const PhysParams& params,
                               std::span<const double> rho0,
                               std::span<const double> u0, double eta) {
    if (rho0.size() != static_cast<size_t>(grid.n) ||
        u0.size() != static_cast<size_t>(grid.n))
        throw std::invalid_argument("regularize_initial: field size mismatch");
    if (eta < 0.0)
        throw std::invalid_argument("regularize_initial: eta must be nonnegative");

    PrimitiveState shifted;
    shifted.t = 0.0;
    shifted.u.assign(u0.begin(), u0.end());
    shifted.rho.resize(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        if (!(rho0[i] >= 0.0))
            throw std::invalid_argument("regularize_initial: rho0 must be nonnegative");
        shifted.rho[i] = rho0[i] + eta;
        if (!(shifted.rho[i] > 0.0))
            throw std::invalid_argument(
                "regularize_initial: shifted density not positive; eta = 0 requires "
                "strictly positive initial data");
    }
    return to_reformulated(shifted, params, grid);
}

double compatibility_g_l2(const RadialGrid& grid, const PhysParams& params,
                          std::span<const double> rho0,
                          std::span<const double> u0) {
    const auto u_r = radial_derivative(grid, u0);
    std::vector<double> G(grid.n);
    for (int i = 0; i < grid.n; ++i)
        G[i] = u_r[i] + 2.0 * u0[i] / grid.nodes[i];
    const auto G_r = radial_derivative(grid, G);
    std::vector<double> g(grid.n);
    for (int i = 0; i < grid.n; ++i)
        g[i] = 2.0 * positive_pow(std::max(rho0[i], 1e-300), params.delta - 1.0) * G_r[i];
    std::vector<double> empty;
    return weighted_lp_norm(grid, g, empty, 2.0, 0.0, 0.0);
}

namespace {

// Plain discrete L2 norm squared, sum |f|^2 dr (no radial weight, matching
// the contraction functional).
double l2sq(const RadialGrid& grid, std::span<const double> f) {
    double s = 0.0;
    for (int i = 0; i < grid.n; ++i)
        s += f[i] * f[i] * grid.dr[i];
    return s;
}

double l2sq_diff(const RadialGrid& grid, std::span<const double> a,
                 std::span<const double> b) {
    double s = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const double d = a[i] - b[i];
        s += d * d * grid.dr[i];
    }
    return s;
}

double contraction_scale(const RadialGrid& grid, const ReformState& s) {
    double scale = l2sq(grid, s.rho) + l2sq(grid, s.phi) + l2sq(grid, s.v) +
                   l2sq(grid, s.h);
    for (int i = 0; i < grid.n; ++i) {
        const double hp = s.h[i] * s.phi[i];
        scale += hp * hp * grid.dr[i];
        scale += s.h[i] * s.u[i] * s.u[i] * grid.dr[i];
    }
    return scale;
}

double contraction_gamma(const RadialGrid& grid, const ReformState& a,
                         const ReformState& b) {
    double g = l2sq_diff(grid, a.rho, b.rho) + l2sq_diff(grid, a.phi, b.phi) +
               l2sq_diff(grid, a.v, b.v) + l2sq_diff(grid, a.h, b.h);
    for (int i = 0; i < grid.n; ++i) {
        const double dhp = a.h[i] * a.phi[i] - b.h[i] * b.phi[i];
        g += dhp * dhp * grid.dr[i];
        const double du = a.u[i] - b.u[i];
        g += a.h[i] * du * du * grid.dr[i];
    }
    return g;
}

}  // namespace

double stable_dt(const ReformState& s, const RadialGrid& grid,
                 const PhysParams& params, double cfl, double prev_dt) {
    check_sizes(grid, s);
    double vmax = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const double c2 = params.gamma * positive_pow(s.rho[i], params.gamma - 1.0);
        vmax = std::max(vmax, std::fabs(s.u[i]) + std::sqrt(c2));
    }
    double dt = cfl * grid.min_dr() / std::max(vmax, 1e-30);

    const auto u_r = radial_derivative(grid, s.u);
    double div_max = 0.0;
    for (int i = 0; i < grid.n; ++i)
        div_max = std::max(div_max,
                           std::fabs(u_r[i] + 2.0 * s.u[i] / grid.nodes[i]));
    const double coeff = std::max(std::fabs(params.delta - 1.0),
                                  std::fabs(params.gamma - params.delta));
    if (coeff * div_max > 0.0)
        dt = std::min(dt, 0.45 / (coeff * div_max));

    if (prev_dt > 0.0)
        dt = std::min(dt, 1.2 * prev_dt);
    return dt;
}

bool contraction_failed(std::span<const double> gammas, int runs) {
    if (static_cast<int>(gammas.size()) < runs + 1)
        return false;
    for (size_t k = gammas.size() - runs; k < gammas.size(); ++k)
        if (!(gammas[k] > gammas[k - 1]))
            return false;
    return true;
}

std::pair<ReformState, ContractionTrace> picard_step(const ReformState& s,
                                                     double dt,
                                                     const RadialGrid& grid,
                                                     const PhysParams& params,
                                                     const RunConfig& cfg) {
    check_sizes(grid, s);
    if (cfg.picard.max_iters < 1)
        throw std::invalid_argument("picard_step: max_iters must be >= 1");
    if (!(cfg.picard.gamma_tol > 0.0))
        throw std::invalid_argument("picard_step: gamma_tol must be positive");

    const double scale = std::max(contraction_scale(grid, s),
                                  std::numeric_limits<double>::min());

    MomentumSolveConfig mcfg;
    mcfg.theta = cfg.theta;
    mcfg.outer = cfg.outer_bc;

    ContractionTrace trace;
    ReformState prev = s;  // iterate k-1; starts at the time level
    ReformState out;

    for (int k = 1; k <= cfg.picard.max_iters; ++k) {
        const auto& u_freeze = prev.u;
        const auto uf = face_velocities(grid, u_freeze, cfg.outer_bc);

        ReformState iter;
        iter.t = s.t + dt;
        iter.rho = step_continuity(grid, s.rho, uf, dt, cfg.limiter);
        iter.h = step_advected_scalar(grid, s.h, u_freeze, params.delta - 1.0, dt);
        iter.phi = step_advected_scalar(grid, s.phi, u_freeze,
                                        params.gamma - params.delta, dt);
        iter.v = step_effective_velocity(grid, s.v, u_freeze, iter.phi, dt, params);
        iter.u = step_momentum(grid, iter.h, iter.phi, iter.v, s.u, u_freeze, dt,
                               params, mcfg);

        const double gamma = contraction_gamma(grid, iter, prev);
        trace.gammas.push_back(gamma);
        trace.iterations = k;
        if (trace.gammas.size() >= 2) {
            const double g_prev = trace.gammas[trace.gammas.size() - 2];
            if (g_prev > 0.0)
                trace.ratios.push_back(gamma / g_prev);
            if (contraction_failed(trace.gammas))
                throw SolverError(SolverError::Kind::non_contraction,
                                  "Picard residual grew three iterations in a row; "
                                  "dt too large for contraction");
        }

        out = std::move(iter);
        if (gamma <= cfg.picard.gamma_tol * scale) {
            trace.converged = true;
            break;
        }
        prev = out;
    }
    return {std::move(out), std::move(trace)};
}

RunResult run(const PrimitiveState& init, const RunConfig& cfg,
              const PhysParams& params, const RadialGrid& grid) {
    params.validate();
    check_sizes(grid, init);
    if (!(cfg.t_end > 0.0))
        throw std::invalid_argument("run: t_end must be positive");
    if (!(cfg.cfl > 0.0 && cfg.cfl <= 0.9))
        throw std::invalid_argument("run: cfl must lie in (0, 0.9]");
    if (cfg.output_every < 1)
        throw std::invalid_argument("run: output_every must be >= 1");

    const auto adm = check_admissibility(params);
    if (!adm.admissible && !cfg.override_admissibility)
        throw std::invalid_argument(
            "run: parameters violate the solvability condition (" + adm.reason +
            "); set override_admissibility to run anyway");

    ReformState state = regularize_initial(grid, params, init.rho, init.u, cfg.eta);

    RunResult result;
    result.admissible = adm.admissible;
    result.snapshots.push_back(Snapshot{0.0, 0, 0, 0.0, state,
                                        full_report(state, grid, params)});

    const double floor = cfg.eta * (1.0 - 10.0 * std::numeric_limits<double>::epsilon());
    double prev_dt = 0.0;
    int step = 0;

    while (state.t < cfg.t_end) {
        double dt = stable_dt(state, grid, params, cfg.cfl, prev_dt);
        dt = std::min(dt, cfg.t_end - state.t);

        ContractionTrace trace;
        try {
            auto [next, tr] = picard_step(state, dt, grid, params, cfg);
            state = std::move(next);
            trace = std::move(tr);
        } catch (const SolverError& e) {
            throw e.has_time() ? e : e.at_time(state.t);
        }
        prev_dt = dt;
        ++step;

        double rho_min = state.rho[0];
        for (double r : state.rho) rho_min = std::min(rho_min, r);
        if (rho_min < floor)
            throw SolverError(SolverError::Kind::positivity,
                              "density fell below the eta floor", state.t);

        const bool last = state.t >= cfg.t_end;
        if (step % cfg.output_every == 0 || last)
            result.snapshots.push_back(Snapshot{state.t, step, trace.iterations,
                                                trace.gammas.empty() ? 0.0 : trace.gammas.back(),
                                                state,
                                                full_report(state, grid, params)});
    }

    result.final_state = state;
    result.total_steps = step;
    return result;
}

EtaContinuationResult eta_continuation(const PrimitiveState& init,
                                       std::span<const double> etas,
                                       const RunConfig& cfg,
                                       const PhysParams& params,
                                       const RadialGrid& grid) {
    if (etas.size() < 2)
        throw std::invalid_argument("eta_continuation: need at least two etas");
    for (size_t j = 0; j + 1 < etas.size(); ++j)
        if (!(etas[j] >= etas[j + 1]) || !(etas[j + 1] > 0.0))
            throw std::invalid_argument(
                "eta_continuation: etas must be nonincreasing and positive");

    std::vector<std::future<EtaContinuationEntry>> futures;
    for (double eta : etas) {
        futures.push_back(std::async(std::launch::async, [&, eta]() {
            EtaContinuationEntry entry;
            entry.eta = eta;
            RunConfig member = cfg;
            member.eta = eta;
            try {
                entry.final_state = run(init, member, params, grid).final_state;
            } catch (const std::exception& e) {
                entry.error = e.what();
            }
            return entry;
        }));
    }

    EtaContinuationResult result;
    for (auto& f : futures)
        result.entries.push_back(f.get());

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (size_t j = 0; j + 1 < result.entries.size(); ++j) {
        const auto& lhs = result.entries[j];
        const auto& rhs = result.entries[j + 1];
        if (!lhs.final_state || !rhs.final_state) {
            result.distances.push_back(nan);
            continue;
        }
        double sum = 0.0;
        for (int i = 0; i < grid.n; ++i) {
            const double d = (lhs.final_state->rho[i] - lhs.eta) -
                             (rhs.final_state->rho[i] - rhs.eta);
            sum += d * d * grid.dr[i];
        }
        result.distances.push_back(std::sqrt(sum));
    }
    return result;
}

}  // namespace sphns
